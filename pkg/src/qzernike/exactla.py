"""Exact sparse linear algebra over the polynomial ring in g1, g2, ...

Solves affine systems  sum_j M[i][j] x_j + r_t[i] = 0  whose entries are
polynomial ParamScalars, by fraction-free row elimination.  Rows are
homogeneous equations, so they may be rescaled freely; after every update a
row is normalized by stripping scalar content, common parameter-monomial
factors, and (trial-division) previously used pivot polynomials.  This keeps
intermediate growth in check without multivariate gcd machinery, while every
step stays exact.

Solutions come back as ParamScalar vectors: the particular solution may be
in rational-function mode (reduced num/den), kernel vectors are cleared to
polynomial entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import _kernels as _k
from .scalars import ParamScalar, _expo_key, _expo_sub, _poly_div_exact, ExactDivisionError

__all__ = ["AffineSolution", "solve_affine_system"]


@dataclass
class AffineSolution:
    particular: list[list[ParamScalar]]
    kernel: list[list[ParamScalar]]
    rank: int
    free_cols: list[int]
    inconsistent_rhs: set[int]


def _row_normalize(row: dict[int, dict], divisors: list[dict]) -> None:
    """In-place normalization of a row of polynomial dicts."""
    if not row:
        return
    # scalar content: lcm of denominators / gcd of numerators
    den_lcm = 1
    num_gcd = 0
    for poly in row.values():
        for (a, b, d) in poly.values():
            den_lcm = den_lcm // gcd(den_lcm, d) * d
            num_gcd = gcd(num_gcd, gcd(a, b))
    if den_lcm != 1 or num_gcd > 1:
        for col, poly in row.items():
            row[col] = {
                e: _k.gr_normalize(a * den_lcm // num_gcd, b * den_lcm // num_gcd, d)
                for e, (a, b, d) in poly.items()
            }
    # common parameter-monomial factor across the whole row
    common: list[int] | None = None
    for poly in row.values():
        for e in poly:
            if common is None:
                common = list(e)
            else:
                for i in range(len(common)):
                    common[i] = min(common[i], e[i] if i < len(e) else 0)
            if common is not None and not any(common):
                common = []
                break
        if common == []:
            break
    if common:
        while common and common[-1] == 0:
            common.pop()
    if common:
        factor = tuple(common)
        for col, poly in row.items():
            row[col] = {_expo_sub(e, factor): c for e, c in poly.items()}
    # trial division by recent pivots (newest first)
    for div in reversed(divisors):
        while True:
            try:
                reduced = {col: _poly_div_exact(poly, div) for col, poly in row.items()}
            except ExactDivisionError:
                break
            row.clear()
            row.update(reduced)


def _poly_size(p: dict) -> tuple[int, int]:
    return (len(p), max((sum(e) for e in p), default=0))


def solve_affine_system(
    rows: list[dict[int, ParamScalar]], ncols: int, nrhs: int
) -> AffineSolution:
    """Solve M x + r_t = 0 for each right-hand side t.

    ``rows`` maps column index -> ParamScalar; columns 0..ncols-1 are
    unknowns, columns ncols..ncols+nrhs-1 hold the constant terms r_t.
    """
    work: list[dict[int, dict]] = []
    for row in rows:
        r = {}
        for col, v in row.items():
            if v.den is not None:
                raise ValueError("system entries must be polynomial ParamScalars")
            if v.num:
                r[col] = v.num
        if r:
            work.append(r)

    divisors: list[dict] = []
    for r in work:
        _row_normalize(r, divisors)

    pivot_of_col: dict[int, dict[int, dict]] = {}
    active = list(work)
    while True:
        # choose the pivot with the smallest polynomial, then sparsest row
        best = None
        for row in active:
            for col, poly in row.items():
                if col >= ncols:
                    continue
                key = (_poly_size(poly), len(row), col)
                if best is None or key < best[0]:
                    best = (key, row, col)
        if best is None:
            break
        _, prow, pcol = best
        ppoly = prow[pcol]
        active = [r for r in active if r is not prow]
        if len(ppoly) > 1 and ppoly not in divisors:
            divisors.append(ppoly)
        targets = [r for r in active if pcol in r] + [
            r for r in pivot_of_col.values() if pcol in r
        ]
        for row in targets:
            coef = row.pop(pcol)
            updated: dict[int, dict] = {}
            cols = set(row) | set(prow)
            cols.discard(pcol)
            for col in cols:
                a = row.get(col)
                b = prow.get(col)
                if a is None:
                    new = _k.poly_neg(_k.poly_mul(coef, b))
                elif b is None:
                    new = _k.poly_mul(ppoly, a)
                else:
                    new = _k.poly_sub(_k.poly_mul(ppoly, a), _k.poly_mul(coef, b))
                if new:
                    updated[col] = new
            row.clear()
            row.update(updated)
            _row_normalize(row, divisors)
        active = [r for r in active if r]
        pivot_of_col[pcol] = prow

    rank = len(pivot_of_col)
    inconsistent: set[int] = set()
    for row in active:
        for t in range(nrhs):
            if ncols + t in row:
                inconsistent.add(t)

    free_cols = [c for c in range(ncols) if c not in pivot_of_col]
    zero = ParamScalar.zero()

    particular: list[list[ParamScalar]] = []
    for t in range(nrhs):
        if t in inconsistent:
            particular.append([zero] * ncols)
            continue
        vec = [zero] * ncols
        for col, prow in pivot_of_col.items():
            r = prow.get(ncols + t)
            if r is not None:
                vec[col] = ParamScalar(_k.poly_neg(r), dict(prow[col]))
        particular.append(vec)

    kernel: list[list[ParamScalar]] = []
    for f in free_cols:
        vec = [zero] * ncols
        vec[f] = ParamScalar.one()
        for col, prow in pivot_of_col.items():
            c = prow.get(f)
            if c is not None:
                vec[col] = ParamScalar(_k.poly_neg(c), dict(prow[col]))
        kernel.append(_clear_denominators(vec))
    return AffineSolution(
        particular=particular,
        kernel=kernel,
        rank=rank,
        free_cols=free_cols,
        inconsistent_rhs=inconsistent,
    )


def _clear_denominators(vec: list[ParamScalar]) -> list[ParamScalar]:
    for _ in range(len(vec) + 1):
        dens = [v.den for v in vec if v.den is not None]
        if not dens:
            break
        d = ParamScalar(dict(dens[0]))
        vec = [v * d for v in vec]
    # normalize scalar content so the vector is canonical
    den_lcm = 1
    num_gcd = 0
    for v in vec:
        for (a, b, d) in v.num.values():
            den_lcm = den_lcm // gcd(den_lcm, d) * d
            num_gcd = gcd(num_gcd, gcd(a, b))
    if num_gcd == 0:
        return vec
    scale = ParamScalar({(): _k.gr_normalize(den_lcm, 0, num_gcd)})
    return [v * scale for v in vec]
