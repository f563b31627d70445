"""Hamiltonians, angular momentum, and the higher-order symmetries.

The Hamiltonian family is H_N = p1^2 + p2^2 + sum_k g_k (q.p)^k.  For
N = 2..5 the two order-N symmetries I_N (leading p2^2) and I'_N (leading
p1^2) are built from hard-coded generator blocks, one block per parameter
g_k; the N = 5 partner I_5 is reconstructed from the algebraic dependence
relation.  ``solve_symmetry_ansatz`` re-derives the symmetries from scratch
by solving the grade-zero ansatz linear system over the parameter field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exactla import solve_affine_system
from .scalars import GaussianRational, ParamScalar, gamma
from .weyl import (
    P1,
    P2,
    Q1,
    Q2,
    WeylOperator,
    commutator,
    identity,
    normal_product,
)

__all__ = [
    "HamiltonianSpec",
    "SymmetryPair",
    "AnsatzSolutionSpace",
    "InconsistentAnsatzError",
    "build_hamiltonian",
    "build_angular_momentum",
    "paper_symmetries",
    "solve_symmetry_ansatz",
    "check_dependence_relation",
    "ansatz_monomials",
    "membership_in_space",
]

_I = GaussianRational(0, 1)


class InconsistentAnsatzError(RuntimeError):
    """The symmetry ansatz linear system has no solution.

    For H_N this would contradict the expected existence of order-N
    symmetries, so it is raised loudly rather than ignored.
    """


@dataclass(frozen=True)
class HamiltonianSpec:
    """Order N plus one coefficient per interaction power."""

    order: int
    params: tuple[ParamScalar, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("Hamiltonian order must be >= 1")
        if len(self.params) != self.order:
            raise ValueError("need exactly one parameter per power")
        if all(p.is_constant() for p in self.params) and self.params[-1].is_zero():
            raise ValueError(
                "numeric g_N must be nonzero; reduce the order instead"
            )

    @classmethod
    def symbolic(cls, order: int) -> HamiltonianSpec:
        return cls(order, tuple(gamma(k) for k in range(1, order + 1)))

    @classmethod
    def numeric(cls, values) -> HamiltonianSpec:
        params = tuple(ParamScalar.const(v) for v in values)
        return cls(len(params), params)

    def is_numeric(self) -> bool:
        return all(p.is_constant() for p in self.params)


@dataclass(frozen=True)
class SymmetryPair:
    """The two order-N symmetries with leading parts p2^2 and p1^2."""

    I: WeylOperator
    Iprime: WeylOperator
    order: int
    params: tuple[ParamScalar, ...]

    def hamiltonian(self) -> WeylOperator:
        return build_hamiltonian(HamiltonianSpec(self.order, self.params))

    def commutator_residuals(self) -> tuple[WeylOperator, WeylOperator]:
        H = self.hamiltonian()
        return commutator(self.I, H), commutator(self.Iprime, H)

    def verify(self) -> bool:
        r1, r2 = self.commutator_residuals()
        return r1.is_zero() and r2.is_zero()


@dataclass(frozen=True)
class AnsatzSolutionSpace:
    """Affine space of ansatz solutions: particular pair + homogeneous span."""

    particular: SymmetryPair
    homogeneous_basis: tuple[WeylOperator, ...]
    leading: str
    rank: int
    kernel_dim: int


def build_hamiltonian(spec: HamiltonianSpec) -> WeylOperator:
    """p1^2 + p2^2 + sum_k g_k (q1 p1 + q2 p2)^k in normal order."""
    qp = Q1 * P1 + Q2 * P2
    H = P1 * P1 + P2 * P2
    power = identity()
    for k in range(1, spec.order + 1):
        power = normal_product(power, qp)
        H = H + power.scale(spec.params[k - 1])
    return H


def build_angular_momentum() -> WeylOperator:
    """q1 p2 - q2 p1."""
    return Q1 * P2 - Q2 * P1


# ---- hard-coded symmetry blocks, one per parameter power ----
@lru_cache(maxsize=None)
def _blocks(k: int) -> tuple[WeylOperator, WeylOperator]:
    """(I-block, I'-block) multiplying g_k, for k = 1..5 (I-block None-like
    zero for k = 5, where only I' is explicit)."""
    C = build_angular_momentum()
    C2 = C * C
    r2 = Q1 * Q1 + Q2 * Q2
    i3 = GaussianRational(0, 3)
    i6 = GaussianRational(0, 6)
    i10 = GaussianRational(0, 10)
    i15 = GaussianRational(0, 15)
    if k == 1:
        return Q2 * P2, Q1 * P1
    if k == 2:
        return r2 * (P2 * P2) - C2, r2 * (P1 * P1)
    if k == 3:
        blk = (
            (Q2 ** 3) * (P2 ** 3 - (P1 * P1) * P2)
            + (Q1 ** 3 + (Q1 * (Q2 * Q2)).scale(3)) * (P1 * (P2 * P2))
            - ((Q2 * Q2) * (P2 * P2)).scale(i3)
            - ((Q1 * Q2) * (P1 * P2)).scale(i3)
            - Q2 * P2
        )
        blkp = (
            (Q1 ** 3) * (P1 ** 3 - P1 * (P2 * P2))
            + (Q2 ** 3 + ((Q1 * Q1) * Q2).scale(3)) * ((P1 * P1) * P2)
            - ((Q1 * Q1) * (P1 * P1)).scale(i3)
            - ((Q1 * Q2) * (P1 * P2)).scale(i3)
            - Q1 * P1
        )
        return blk, blkp
    if k == 4:
        blk = (
            (Q2 ** 4 - Q1 ** 4) * (P2 ** 4 - (P1 * P1) * (P2 * P2))
            + (((Q1 ** 3) * Q2 + Q1 * (Q2 ** 3)) * (P1 * (P2 ** 3))).scale(4)
            - ((Q2 ** 3 + (Q1 * Q1) * Q2) * (P2 ** 3)).scale(i6)
            - ((Q1 ** 3 + Q1 * (Q2 * Q2)) * (P1 * (P2 * P2))).scale(i6)
            - (r2 * (P2 * P2)).scale(4)
            + C2.scale(4)
        )
        blkp = (
            (Q1 ** 4 - Q2 ** 4) * (P1 ** 4 - (P1 * P1) * (P2 * P2))
            + ((Q1 * (Q2 ** 3) + (Q1 ** 3) * Q2) * ((P1 ** 3) * P2)).scale(4)
            - ((Q1 ** 3 + Q1 * (Q2 * Q2)) * (P1 ** 3)).scale(i6)
            - ((Q2 ** 3 + (Q1 * Q1) * Q2) * ((P1 * P1) * P2)).scale(i6)
            - (r2 * (P1 * P1)).scale(4)
        )
        return blk, blkp
    if k == 5:
        blkp = (
            (Q1 ** 5) * (P1 ** 5 + P1 * (P2 ** 4))
            - (Q2 ** 5 - ((Q1 ** 4) * Q2).scale(5)) * ((P1 ** 4) * P2 - (P1 * P1) * (P2 ** 3))
            - (Q1 ** 5 - ((Q1 ** 3) * (Q2 * Q2)).scale(10) - (Q1 * (Q2 ** 4)).scale(5))
            * ((P1 ** 3) * (P2 * P2))
            - ((Q1 ** 4) * (P1 ** 4 - (P1 * P1) * (P2 * P2))).scale(i10)
            - ((Q1 * (Q2 ** 3) + ((Q1 ** 3) * Q2).scale(4)) * ((P1 ** 3) * P2)).scale(i10)
            - ((Q2 ** 4 + ((Q1 * Q1) * (Q2 * Q2)).scale(3)) * ((P1 * P1) * (P2 * P2))).scale(i10)
            + (((Q1 ** 3) * Q2) * (P1 * (P2 ** 3))).scale(i10)
            - ((Q1 ** 3) * (P1 ** 3)).scale(25)
            - ((Q2 ** 3 + ((Q1 * Q1) * Q2).scale(6)) * ((P1 * P1) * P2)).scale(10)
            + (((Q1 ** 3).scale(2) - (Q1 * (Q2 * Q2)).scale(3)) * (P1 * (P2 * P2))).scale(5)
            + ((Q1 * Q1) * (P1 * P1)).scale(i15)
            + ((Q1 * Q2) * (P1 * P2)).scale(i15)
            + Q1 * P1
        )
        return WeylOperator.zero(), blkp
    raise ValueError(f"no hard-coded block for k={k}")


def paper_symmetries(N: int, params=None) -> SymmetryPair:
    """The explicit order-N symmetries for N = 2..5.

    For N = 5 only I'_5 is explicit; I_5 comes from the dependence relation
    H_5 = I_5 + I'_5 - 4 g4 C^2 + g4 C^4.
    """
    if N not in (2, 3, 4, 5):
        raise ValueError("explicit symmetries are available for N = 2..5 only")
    if params is None:
        spec = HamiltonianSpec.symbolic(N)
    else:
        spec = HamiltonianSpec(N, tuple(ParamScalar._coerce(p) for p in params))
    Iprime = P1 * P1
    for k in range(1, N + 1):
        Iprime = Iprime + _blocks(k)[1].scale(spec.params[k - 1])
    if N <= 4:
        I = P2 * P2
        for k in range(1, N + 1):
            I = I + _blocks(k)[0].scale(spec.params[k - 1])
    else:
        H = build_hamiltonian(spec)
        C = build_angular_momentum()
        g4 = spec.params[3]
        I = H - Iprime + (C ** 2).scale(g4 * 4) - (C ** 4).scale(g4)
    return SymmetryPair(I=I, Iprime=Iprime, order=N, params=spec.params)


def check_dependence_relation(N: int, pair: SymmetryPair) -> WeylOperator:
    """Residual of the dependence relation; the contract is the zero operator.

    H_N = I_N + I'_N for N = 2, 3, and
    H_N = I_N + I'_N - 4 g4 C^2 + g4 C^4 for N = 4, 5.
    """
    if N not in (2, 3, 4, 5):
        raise ValueError("dependence relation is stated for N = 2..5")
    H = build_hamiltonian(HamiltonianSpec(N, pair.params))
    residual = H - pair.I - pair.Iprime
    if N >= 4:
        C = build_angular_momentum()
        g4 = pair.params[3]
        residual = residual + (C ** 2).scale(g4 * 4) - (C ** 4).scale(g4)
    return residual


# ---- ansatz derivation ----
def ansatz_monomials(N: int) -> list[tuple[int, int, int, int]]:
    """Grade-zero normal monomials of total degree <= 2N, grlex-descending."""
    out = []
    for s in range(N, -1, -1):
        for a in range(s, -1, -1):
            b = s - a
            for c in range(s, -1, -1):
                d = s - c
                out.append((a, b, c, d))
    out.sort(key=lambda m: (sum(m), m), reverse=True)
    return out


def solve_symmetry_ansatz(spec: HamiltonianSpec, leading: str = "p2") -> AnsatzSolutionSpace:
    """Derive the symmetries of H_N from the grade-zero ansatz.

    Builds the linear system [p_lead^2 + sum_s x_s M_s, H_N] = 0 over the
    field of rational functions in the g_k and returns the affine solution
    space.  Both leading choices are solved in one elimination (two
    right-hand sides), so the particular solution is a full SymmetryPair.
    The identity component commutes trivially and is quotiented away: the
    particular solutions carry no Id term and the reported homogeneous
    basis omits the pure-Id direction.
    """
    if leading not in ("p1", "p2"):
        raise ValueError("leading must be 'p1' or 'p2'")
    N = spec.order
    H = build_hamiltonian(spec)
    monos = ansatz_monomials(N)
    ncols = len(monos)

    columns = []
    for m in monos:
        columns.append(commutator(WeylOperator.monomial(*m), H))
    rhs_ops = [commutator(P2 * P2, H), commutator(P1 * P1, H)]

    row_index: dict = {}
    rows: list[dict[int, ParamScalar]] = []

    def _row_for(mono):
        if mono not in row_index:
            row_index[mono] = len(rows)
            rows.append({})
        return rows[row_index[mono]]

    for j, op in enumerate(columns):
        for mono, coeff in op.terms.items():
            _row_for(mono)[j] = coeff
    for t, op in enumerate(rhs_ops):
        for mono, coeff in op.terms.items():
            _row_for(mono)[ncols + t] = coeff

    sol = solve_affine_system(rows, ncols, nrhs=2)
    for t, name in enumerate(("p2", "p1")):
        if t in sol.inconsistent_rhs:
            raise InconsistentAnsatzError(
                f"no grade-zero symmetry with leading {name}^2 exists for N={N}"
            )

    # canonical particular: eliminate kernel leading columns (this removes
    # pure angular-momentum-power content deterministically)
    kernel = sol.kernel
    particulars = [list(v) for v in sol.particular]
    for kvec in kernel:
        lead_col = next(j for j in range(ncols) if not kvec[j].is_zero())
        for vec in particulars:
            if not vec[lead_col].is_zero():
                t = vec[lead_col] / kvec[lead_col]
                for j in range(ncols):
                    if not kvec[j].is_zero():
                        vec[j] = vec[j] - t * kvec[j]

    def _to_operator(vec, lead_op=None) -> WeylOperator:
        out = lead_op if lead_op is not None else WeylOperator.zero()
        for j, m in enumerate(monos):
            if not vec[j].is_zero():
                out = out + WeylOperator.monomial(*m, coeff=vec[j])
        return out

    I = _to_operator(particulars[0], P2 * P2)
    Iprime = _to_operator(particulars[1], P1 * P1)
    basis = []
    id_col = monos.index((0, 0, 0, 0))
    for kvec in kernel:
        if all(kvec[j].is_zero() for j in range(ncols) if j != id_col):
            continue  # pure Id direction
        basis.append(_to_operator(kvec))

    pair = SymmetryPair(I=I, Iprime=Iprime, order=N, params=spec.params)
    if not pair.verify():
        raise InconsistentAnsatzError(
            f"ansatz back-substitution failed verification for N={N}"
        )
    return AnsatzSolutionSpace(
        particular=pair,
        homogeneous_basis=tuple(basis),
        leading=leading,
        rank=sol.rank,
        kernel_dim=len(basis),
    )


def membership_in_space(
    op: WeylOperator, space: AnsatzSolutionSpace, side: str = "I"
) -> bool:
    """Is ``op`` in particular + span(homogeneous basis ∪ {Id})?"""
    base = space.particular.I if side == "I" else space.particular.Iprime
    diff = op - base
    monos = ansatz_monomials(space.particular.order)
    index = {m: j for j, m in enumerate(monos)}
    for m in diff.terms:
        if m not in index:
            return False
    vectors = list(space.homogeneous_basis) + [identity()]
    rows: list[dict[int, ParamScalar]] = []
    row_of: dict = {}

    def _row(m):
        if m not in row_of:
            row_of[m] = len(rows)
            rows.append({})
        return rows[row_of[m]]

    for j, vec in enumerate(vectors):
        for m, c in vec.terms.items():
            _row(m)[j] = c
    for m, c in diff.terms.items():
        _row(m)[len(vectors)] = c
    sol = solve_affine_system(rows, len(vectors), nrhs=1)
    return 0 not in sol.inconsistent_rhs
