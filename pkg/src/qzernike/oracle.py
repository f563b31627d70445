"""Independent spectral oracle on the graded polynomial basis.

H_N acts on two-variable polynomials through the differential realization
q_i -> multiplication, p_i -> -i d/dq_i.  The interaction term is built on
the Euler operator, which scales a degree-m monomial by m, so in the
monomial basis ordered by total degree the matrix of H_N is block lower
triangular: the diagonal block at degree m is lambda_m * Id with
lambda_m = sum_k g_k (-i m)^k, and the Laplacian contributes the only
off-diagonal blocks, two degrees down.  Eigenvalues are therefore read off
exactly, with multiplicity m + 1, independently of the normal-ordering
engine; this is the cross-check for the Type I energies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import GaussianRational, ParamScalar
from .symmetries import HamiltonianSpec
from .weyl import WeylOperator

__all__ = [
    "GradedMatrix",
    "OracleReport",
    "build_matrix",
    "oracle_spectrum",
    "compare_with_formula",
    "apply_hamiltonian",
    "apply_operator",
    "type_I_energy_exact",
]

PolyState = dict[tuple[int, int], GaussianRational]

_ZERO = GaussianRational(0)
_MINUS_I = GaussianRational(0, -1)


def _add_to(state: PolyState, key: tuple[int, int], value: GaussianRational) -> None:
    cur = state.get(key)
    s = value if cur is None else cur + value
    if s.is_zero():
        state.pop(key, None)
    else:
        state[key] = s


def _gammas_of(spec) -> list[GaussianRational]:
    """Accept a numeric HamiltonianSpec or a plain coefficient list.

    The list form permits degenerate choices (all zero: the pure Laplacian)
    that a HamiltonianSpec rejects.
    """
    if isinstance(spec, HamiltonianSpec):
        if not spec.is_numeric():
            raise ValueError("the oracle needs concrete parameter values")
        return [p.as_gaussian() for p in spec.params]
    return [g if isinstance(g, GaussianRational) else GaussianRational(g) for g in spec]


def apply_hamiltonian(spec, state: PolyState) -> PolyState:
    """Apply H_N to a polynomial by its differential definition.

    Uses -laplacian plus the Euler-operator powers directly; no Weyl
    normal ordering is involved, so this is an independent evaluation path.
    """
    gammas = _gammas_of(spec)
    out: PolyState = {}
    for (a, b), c in state.items():
        if a >= 2:
            _add_to(out, (a - 2, b), c * (-a * (a - 1)))
        if b >= 2:
            _add_to(out, (a, b - 2), c * (-b * (b - 1)))
        m = a + b
        lam = _ZERO
        em = GaussianRational(1)
        for g in gammas:
            em = em * (_MINUS_I * m)
            lam = lam + g * em
        if not lam.is_zero():
            _add_to(out, (a, b), c * lam)
    return out


def apply_operator(op: WeylOperator, state: PolyState) -> PolyState:
    """Apply a normal-ordered operator to a polynomial state.

    q1^a q2^b p1^c p2^d acts as q1^a q2^b (-i d1)^c (-i d2)^d; coefficients
    must be constant.  Used to cross-validate the normal-ordering engine
    against plain differentiation.
    """
    out: PolyState = {}
    for (a, b, c, d), coeff in op.terms.items():
        scalar = coeff.as_gaussian()
        for _ in range(c + d):
            scalar = scalar * _MINUS_I
        for (x, y), v in state.items():
            if x < c or y < d:
                continue
            fall = 1
            for i in range(c):
                fall *= x - i
            for i in range(d):
                fall *= y - i
            if fall == 0:
                continue
            _add_to(out, (x - c + a, y - d + b), v * scalar * fall)
    return out


@dataclass(frozen=True)
class GradedMatrix:
    """Exact matrix of H_N on monomials of total degree <= max_degree.

    ``diag[m]`` is the scalar acting on the whole degree-m subspace and
    ``lowering[m]`` the block mapping degree m to degree m-2, stored dense
    over the bases (q1^m, q1^(m-1) q2, ..., q2^m).
    """

    max_degree: int
    diag: tuple[GaussianRational, ...]
    lowering: tuple[tuple[tuple[GaussianRational, ...], ...], ...]

    def block_shape(self, m: int) -> tuple[int, int]:
        return (m - 1, m + 1) if m >= 2 else (0, m + 1)


def _degree_basis(m: int) -> list[tuple[int, int]]:
    return [(m - j, j) for j in range(m + 1)]


def build_matrix(spec, D: int) -> GradedMatrix:
    """Assemble the graded matrix and verify its triangular structure."""
    if D < 0:
        raise ValueError("max degree must be >= 0")
    diag: list[GaussianRational] = []
    lowering = []
    gammas = _gammas_of(spec)
    for m in range(D + 1):
        lam = _ZERO
        em = GaussianRational(1)
        for g in gammas:
            em = em * (_MINUS_I * m)
            lam = lam + g * em
        diag.append(lam)
        basis = _degree_basis(m)
        lower_basis = _degree_basis(m - 2) if m >= 2 else []
        block = [[_ZERO] * (m + 1) for _ in range(len(lower_basis))]
        for col, mono in enumerate(basis):
            image = apply_hamiltonian(spec, {mono: GaussianRational(1)})
            for key, v in image.items():
                deg = key[0] + key[1]
                if deg == m:
                    if key != mono or v != lam:
                        raise AssertionError("diagonal block is not scalar")
                elif deg == m - 2:
                    block[lower_basis.index(key)][col] = v
                else:
                    raise AssertionError("entry outside the {m, m-2} band")
        lowering.append(tuple(tuple(row) for row in block))
    return GradedMatrix(max_degree=D, diag=tuple(diag), lowering=tuple(lowering))


@dataclass
class OracleReport:
    max_degree: int
    rows: list[dict] = field(default_factory=list)
    # each row: degree, eigenvalue, multiplicity, resonant, eigenvectors


def oracle_spectrum(M: GradedMatrix, eigenvectors: bool = False) -> OracleReport:
    """Read eigenvalues off the triangular structure; multiplicity m + 1.

    Eigenvectors extend down the degree ladder by back-substitution; a
    resonance (equal diagonal scalars two or more degrees apart) stops the
    construction for that degree and is flagged, the eigenvalue stands.
    """
    report = OracleReport(max_degree=M.max_degree)
    for m in range(M.max_degree + 1):
        lam = M.diag[m]
        resonant = any(
            M.diag[mp] == lam for mp in range(m - 2, -1, -2)
        )
        row = {
            "degree": m,
            "eigenvalue": lam,
            "multiplicity": m + 1,
            "resonant": resonant,
        }
        if eigenvectors and not resonant:
            vecs = []
            basis_size = m + 1
            for start in range(basis_size):
                components: dict[int, list[GaussianRational]] = {
                    m: [
                        GaussianRational(1) if i == start else _ZERO
                        for i in range(basis_size)
                    ]
                }
                mp = m - 2
                while mp >= 0:
                    upper = components[mp + 2]
                    block = M.lowering[mp + 2]
                    size = mp + 1
                    image = [_ZERO] * size
                    for r in range(size):
                        acc = _ZERO
                        for ccol in range(len(upper)):
                            if not block[r][ccol].is_zero():
                                acc = acc + block[r][ccol] * upper[ccol]
                        image[r] = acc
                    gap = lam - M.diag[mp]
                    components[mp] = [v / gap for v in image]
                    mp -= 2
                poly: PolyState = {}
                for deg, comp in components.items():
                    for i, mono in enumerate(_degree_basis(deg)):
                        if not comp[i].is_zero():
                            poly[mono] = comp[i]
                vecs.append(sorted(poly.items()))
            row["eigenvectors"] = vecs
        report.rows.append(row)
    return report


def type_I_energy_exact(gammas: list[GaussianRational], m: int) -> GaussianRational:
    """E_I(m) = sum_k (-i)^k g_k m^k with exact arithmetic."""
    total = _ZERO
    base = GaussianRational(1)
    for g in gammas:
        base = base * (_MINUS_I * m)
        total = total + g * base
    return total


def compare_with_formula(report: OracleReport, solution) -> dict:
    """Check oracle eigenvalues against a Type I spectrum solution.

    Only Type I spectra live in the polynomial function space the oracle
    realizes; anything else is reported as not comparable, not as failure.
    """
    if getattr(solution, "type_label", None) != "I":
        return {"status": "not-oracle-comparable", "mismatches": []}
    import sympy as sp

    from .spectrum import N_SYM

    mismatches = []
    for row in report.rows:
        m = row["degree"]
        expected = solution.E_of_n.subs(N_SYM, m)
        got = row["eigenvalue"]
        got_sym = sp.Rational(got.re.numerator, got.re.denominator) + sp.I * sp.Rational(
            got.im.numerator, got.im.denominator
        )
        if sp.simplify(expected - got_sym) != 0:
            mismatches.append({"degree": m, "expected": str(expected), "got": str(got)})
    return {
        "status": "match" if not mismatches else "mismatch",
        "mismatches": mismatches,
    }
