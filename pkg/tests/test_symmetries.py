import pytest

from conftest import reality_respecting_gammas
from qzernike.exactla import solve_affine_system
from qzernike.scalars import GaussianRational, ParamScalar, gamma
from qzernike.symmetries import (
    AnsatzSolutionSpace,
    HamiltonianSpec,
    ansatz_monomials,
    build_angular_momentum,
    build_hamiltonian,
    check_dependence_relation,
    membership_in_space,
    paper_symmetries,
    solve_symmetry_ansatz,
)
from qzernike.weyl import P1, P2, Q1, Q2, WeylOperator, commutator, grade_spectrum

I_ = GaussianRational(0, 1)
QP = Q1 * P1 + Q2 * P2


class TestHamiltonian:
    def test_order_one(self):
        H = build_hamiltonian(HamiltonianSpec.symbolic(1))
        want = P1 * P1 + P2 * P2 + QP.scale(gamma(1))
        assert H == want

    def test_zernike_numeric_form(self):
        # g1 = -i beta, g2 = alpha at beta=-2, alpha=-1: p^2 + 2i q.p - (q.p)^2
        H = build_hamiltonian(HamiltonianSpec.numeric([GaussianRational(0, 2), GaussianRational(-1)]))
        want = P1 * P1 + P2 * P2 + QP.scale(GaussianRational(0, 2)) - QP * QP
        assert H == want

    def test_grade_spectrum(self):
        for N in (2, 3):
            H = build_hamiltonian(HamiltonianSpec.symbolic(N))
            assert grade_spectrum(H) == {-2, 0}

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            HamiltonianSpec.symbolic(0)

    def test_numeric_trailing_zero_rejected(self):
        with pytest.raises(ValueError):
            HamiltonianSpec.numeric([GaussianRational(0, 2), GaussianRational(0)])


class TestAngularMomentum:
    def test_commutes_with_qp(self):
        C = build_angular_momentum()
        assert commutator(C, QP).is_zero()

    def test_commutes_with_hamiltonian(self):
        C = build_angular_momentum()
        for N in (2, 3, 4, 5):
            H = build_hamiltonian(HamiltonianSpec.symbolic(N))
            assert commutator(C, H).is_zero()

    def test_square_cross_term(self):
        C = build_angular_momentum()
        assert (C * C).coefficient((1, 1, 1, 1)) == ParamScalar.const(-2)


class TestPaperSymmetries:
    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_commutators_vanish_symbolic(self, N):
        pair = paper_symmetries(N)
        r1, r2 = pair.commutator_residuals()
        assert r1.is_zero() and r2.is_zero()

    def test_leading_terms(self):
        pair = paper_symmetries(3)
        assert pair.I.coefficient((0, 0, 0, 2)) == ParamScalar.one()
        assert pair.Iprime.coefficient((0, 0, 2, 0)) == ParamScalar.one()

    def test_I2_both_printed_forms_agree(self):
        # the expanded form and the C^2 form of the second-order symmetry
        pair = paper_symmetries(2)
        C = build_angular_momentum()
        g1, g2 = gamma(1), gamma(2)
        expanded = (
            P2 * P2
            + (Q2 * P2).scale(g1)
            - (
                (Q2 * Q2) * (P1 * P1 - P2 * P2)
                - ((Q1 * Q2) * (P1 * P2)).scale(2)
                + (Q1 * P1).scale(I_)
                + (Q2 * P2).scale(I_)
            ).scale(g2)
        )
        assert pair.I == expanded

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_dependence_relation(self, N):
        pair = paper_symmetries(N)
        assert check_dependence_relation(N, pair).is_zero()

    def test_dependence_relation_numeric(self, rng):
        for N in (2, 3, 4):
            gs = reality_respecting_gammas(rng, N)
            pair = paper_symmetries(N, gs)
            assert check_dependence_relation(N, pair).is_zero()
            assert pair.verify()

    def test_unsupported_order(self):
        with pytest.raises(ValueError):
            paper_symmetries(6)

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_index_swap_gives_symmetry(self, N):
        # H_N is symmetric under 1 <-> 2, so the swap of I' commutes too
        pair = paper_symmetries(N)
        swapped = WeylOperator(
            {(b, a, d, c): coeff for (a, b, c, d), coeff in pair.Iprime.terms.items()}
        )
        H = build_hamiltonian(HamiltonianSpec.symbolic(N))
        assert commutator(swapped, H).is_zero()


class TestAnsatz:
    def test_monomial_enumeration(self):
        monos = ansatz_monomials(2)
        assert (0, 0, 0, 0) in monos
        assert all(a + b == c + d for a, b, c, d in monos)
        assert all(sum(m) <= 4 for m in monos)
        assert len(monos) == 1 + 4 + 9

    def test_order_one_contains_known_symmetry(self):
        space = solve_symmetry_ansatz(HamiltonianSpec.symbolic(1))
        want = P1 * P1 + (Q1 * P1).scale(gamma(1))
        assert space.particular.Iprime == want

    @pytest.mark.parametrize("N", [2, 3])
    def test_contains_paper_representative(self, N):
        space = solve_symmetry_ansatz(HamiltonianSpec.symbolic(N))
        pair = paper_symmetries(N)
        assert membership_in_space(pair.I, space, "I")
        assert membership_in_space(pair.Iprime, space, "Iprime")

    def test_homogeneous_basis_contains_C_squared(self):
        space = solve_symmetry_ansatz(HamiltonianSpec.symbolic(2))
        C = build_angular_momentum()
        shifted = space.particular.I + C * C
        assert membership_in_space(shifted, space, "I")

    def test_homogeneous_basis_commutes(self):
        space = solve_symmetry_ansatz(HamiltonianSpec.symbolic(2))
        H = build_hamiltonian(HamiltonianSpec.symbolic(2))
        for op in space.homogeneous_basis:
            assert commutator(op, H).is_zero()

    def test_numeric_spec(self, rng):
        gs = reality_respecting_gammas(rng, 2)
        space = solve_symmetry_ansatz(HamiltonianSpec.numeric(gs))
        assert space.particular.verify()

    def test_solution_space_shape(self):
        space = solve_symmetry_ansatz(HamiltonianSpec.symbolic(2))
        assert isinstance(space, AnsatzSolutionSpace)
        # Id direction is quotiented away
        assert all(
            op.coefficient((0, 0, 0, 0)).is_zero() or any(
                not op.coefficient(m).is_zero()
                for m in op.terms
                if m != (0, 0, 0, 0)
            )
            for op in space.homogeneous_basis
        )


class TestExactLinearAlgebra:
    def test_simple_affine(self):
        one = ParamScalar.one()
        g1 = gamma(1)
        # x0 + g1 x1 = -1 ; x1 = -g1  (rows are M x + r = 0)
        rows = [
            {0: one, 1: g1, 2: one},
            {1: one, 2: g1},
        ]
        sol = solve_affine_system(rows, 2, 1)
        assert not sol.inconsistent_rhs
        x0, x1 = sol.particular[0]
        assert x1 == -g1
        assert x0 == g1 * g1 - 1

    def test_inconsistent_detected(self):
        one = ParamScalar.one()
        rows = [
            {0: one, 1: one},  # x0 + 1 = 0
            {0: one, 1: one + one},  # x0 + 2 = 0
        ]
        sol = solve_affine_system(rows, 1, 1)
        assert sol.inconsistent_rhs == {0}

    def test_kernel_dimension(self):
        one = ParamScalar.one()
        rows = [{0: one, 1: one}]  # x0 + x1 = 0, x2 free
        sol = solve_affine_system(rows, 3, 0)
        assert sol.rank == 1
        assert len(sol.kernel) == 2
