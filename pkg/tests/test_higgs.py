from fractions import Fraction

import pytest

from conftest import reality_respecting_gammas
from qzernike.higgs import (
    ConjectureViolation,
    HKPolynomial,
    build_k_triple,
    build_ladder,
    check_algebraic_independence,
    ladder_commutator_polynomial,
    structure_function,
    structure_function_polynomials,
    verify_conjecture1,
)
from qzernike.scalars import GaussianRational, ParamScalar, gamma
from qzernike.symmetries import (
    HamiltonianSpec,
    SymmetryPair,
    build_hamiltonian,
    paper_symmetries,
)
from qzernike.weyl import Q2, P2, WeylOperator, commutator, identity, normal_product

I_ = GaussianRational(0, 1)


def _hk(*terms) -> HKPolynomial:
    out = HKPolynomial()
    for h, k, c in terms:
        out = out + HKPolynomial.term(h, k, c)
    return out


@pytest.fixture(scope="module")
def chains():
    """(pair, triple, ladder) for N = 2..4 with symbolic coefficients."""
    out = {}
    for N in (2, 3, 4):
        pair = paper_symmetries(N)
        triple = build_k_triple(pair)
        ladder = build_ladder(N, triple)
        out[N] = (pair, triple, ladder)
    return out


class TestKTriple:
    def test_relations_order_two(self, chains):
        _, t, _ = chains[2]
        g1, g2 = gamma(1), gamma(2)
        H = build_hamiltonian(HamiltonianSpec.symbolic(2))
        k1sq = t.k1 * t.k1
        assert commutator(t.k1, t.k2) == t.k3
        assert commutator(t.k1, t.k3) == t.k2.scale(4) - k1sq.scale(g2 * 2)
        want23 = (
            t.k1.scale(g1 * g1 + g1 * g2 * (2 * I_))
            + normal_product(H, t.k1).scale(g2 * 2)
            + normal_product(t.k1, t.k2).scale(g2 * 4)
            - t.k3.scale(g2 * 2)
        )
        assert commutator(t.k2, t.k3) == want23

    def test_relations_order_three(self, chains):
        _, t, _ = chains[3]
        g1, g2, g3 = gamma(1), gamma(2), gamma(3)
        H = build_hamiltonian(HamiltonianSpec.symbolic(3))
        want23 = (
            t.k1.scale(g1 * g1 + g1 * g2 * (2 * I_) - g1 * g3 * 4)
            + normal_product(H, t.k1).scale((g2 + g3 * (3 * I_)) * 2)
            + normal_product(t.k1, t.k2).scale(g2 * 4)
            - t.k3.scale(g2 * 2)
            - (t.k1 ** 3).scale(g3 * (g1 - I_ * g2 - g3) * 4)
            + (t.k1 ** 5).scale(g3 * g3 * 3)
        )
        assert commutator(t.k2, t.k3) == want23

    def test_relations_order_four(self, chains):
        _, t, _ = chains[4]
        g1, g2, g3, g4 = (gamma(k) for k in (1, 2, 3, 4))
        H = build_hamiltonian(HamiltonianSpec.symbolic(4))
        assert commutator(t.k1, t.k3) == t.k2.scale(4) - (t.k1 * t.k1).scale((g2 - g4 * 4) * 2)
        want23 = (
            t.k1.scale(g1 * g1 + g1 * g2 * (2 * I_) - g1 * g3 * 4 - g1 * g4 * (8 * I_))
            + normal_product(H, t.k1).scale((g2 + g3 * (3 * I_) - g4 * 8) * 2)
            + normal_product(t.k1, t.k2).scale((g2 - g4 * 4) * 4)
            - t.k3.scale((g2 - g4 * 4) * 2)
            + (t.k1 ** 3).scale(
                (
                    g3 * g3
                    - g1 * g3
                    + g2 * g3 * I_
                    - g4 * g4 * 8
                    - g1 * g4 * (3 * I_)
                    + g3 * g4 * (2 * I_)
                )
                * 4
            )
            - normal_product(H, t.k1 ** 3).scale(g4 * 4)
            + (t.k1 ** 5).scale(g3 * g3 * 3 + g4 * g4 * 16 - g2 * g4 * 6 + g3 * g4 * (6 * I_))
            + (t.k1 ** 7).scale(g4 * g4 * 4)
        )
        assert commutator(t.k2, t.k3) == want23

    def test_requires_verified_pair(self):
        pair = paper_symmetries(3)
        corrupted = SymmetryPair(
            I=pair.I + Q2 * P2, Iprime=pair.Iprime, order=3, params=pair.params
        )
        with pytest.raises(ConjectureViolation):
            build_k_triple(corrupted)


class TestLadder:
    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_number_operator_relations(self, chains, N):
        _, _, lad = chains[N]
        assert commutator(lad.k, lad.kplus) == lad.kplus
        assert commutator(lad.k, lad.kminus) == -lad.kminus

    def test_updown_commutator_order_two(self, chains):
        _, _, lad = chains[2]
        g1, g2 = gamma(1), gamma(2)
        H = build_hamiltonian(HamiltonianSpec.symbolic(2))
        want = _hk(
            (0, 1, (g1 * g1 + g1 * g2 * (2 * I_)) * 2),
            (1, 1, g2 * 4),
            (0, 3, g2 * g2 * 16),
        ).to_operator(H, lad.k)
        assert commutator(lad.kminus, lad.kplus) == want

    def test_updown_commutator_order_three(self, chains):
        _, _, lad = chains[3]
        g1, g2, g3 = gamma(1), gamma(2), gamma(3)
        H = build_hamiltonian(HamiltonianSpec.symbolic(3))
        want = _hk(
            (0, 1, (g1 * g1 + g1 * g2 * (2 * I_) - g1 * g3 * 4) * 2),
            (1, 1, (g2 + g3 * (3 * I_)) * 4),
            (0, 3, (g2 * g2 + g3 * g3 * 2 - g1 * g3 * 2 + g2 * g3 * (2 * I_)) * 16),
            (0, 5, g3 * g3 * 96),
        ).to_operator(H, lad.k)
        assert commutator(lad.kminus, lad.kplus) == want

    def test_updown_commutator_order_four(self, chains):
        _, _, lad = chains[4]
        g1, g2, g3, g4 = (gamma(k) for k in (1, 2, 3, 4))
        H = build_hamiltonian(HamiltonianSpec.symbolic(4))
        want = _hk(
            (0, 1, (g1 * g1 + g1 * g2 * (2 * I_) - g1 * g3 * 4 - g1 * g4 * (8 * I_)) * 2),
            (1, 1, (g2 + g3 * (3 * I_) - g4 * 8) * 4),
            (
                0,
                3,
                (
                    g2 * g2
                    + g3 * g3 * 2
                    - g1 * g3 * 2
                    - g1 * g4 * (6 * I_)
                    + g2 * g3 * (2 * I_)
                    - g2 * g4 * 8
                    + g3 * g4 * (4 * I_)
                )
                * 16,
            ),
            (1, 3, g4 * -32),
            (0, 5, (g3 * g3 * 3 + g4 * g4 * 16 - g2 * g4 * 6 + g3 * g4 * (6 * I_)) * 32),
            (0, 7, g4 * g4 * 512),
        ).to_operator(H, lad.k)
        assert commutator(lad.kminus, lad.kplus) == want

    def test_unsupported_order(self, chains):
        _, triple, _ = chains[2]
        with pytest.raises(ValueError):
            build_ladder(6, triple)


class TestStructureFunction:
    def test_pair_matches_paper_order_two(self, chains):
        _, _, lad = chains[2]
        sf = structure_function(2, lad)
        g1, g2 = gamma(1), gamma(2)
        quarter = ParamScalar.const(Fraction(1, 4))
        want1 = _hk(
            (1, 0, quarter),
            (0, 1, g1 * I_ * Fraction(-1, 2)),
            (0, 2, g2),
        )
        # expanded form: H - 2(i g1 - 2 g2) Id + 2(i g1 - 4 g2) K + 4 g2 K^2
        want2 = _hk(
            (1, 0, ParamScalar.one()),
            (0, 0, (g1 * I_ - g2 * 2) * -2),
            (0, 1, (g1 * I_ - g2 * 4) * 2),
            (0, 2, g2 * 4),
        )
        assert sf.phi1 == want1
        assert sf.phi2 == want2

    def test_full_product_display_order_two(self, chains):
        # K+K- = 1/4 (4 g2 - 2i g1 + H) H - (g1^2 + 2i g1 g2 + 2 g2 H) K
        #        + (g1^2 + 4 g2^2 + 2i g1 g2 + 2 g2 H) K^2 - 8 g2^2 K^3 + 4 g2^2 K^4
        _, _, lad = chains[2]
        g1, g2 = gamma(1), gamma(2)
        H = build_hamiltonian(HamiltonianSpec.symbolic(2))
        want = _hk(
            (1, 0, (g2 * 4 - g1 * (2 * I_)) * Fraction(1, 4)),
            (2, 0, ParamScalar.const(Fraction(1, 4))),
            (0, 1, -(g1 * g1 + g1 * g2 * (2 * I_))),
            (1, 1, g2 * -2),
            (0, 2, g1 * g1 + g2 * g2 * 4 + g1 * g2 * (2 * I_)),
            (1, 2, g2 * 2),
            (0, 3, g2 * g2 * -8),
            (0, 4, g2 * g2 * 4),
        ).to_operator(H, lad.k)
        assert normal_product(lad.kplus, lad.kminus) == want

    def test_full_product_display_order_three(self, chains):
        _, _, lad = chains[3]
        g1, g2, g3 = gamma(1), gamma(2), gamma(3)
        H = build_hamiltonian(HamiltonianSpec.symbolic(3))
        want = _hk(
            (1, 0, (g2 * 4 - g1 * (2 * I_) + g3 * (8 * I_)) * Fraction(1, 4)),
            (2, 0, ParamScalar.const(Fraction(1, 4))),
            (0, 1, -(g1 * g1 + g1 * g2 * (2 * I_) - g1 * g3 * 4)),
            (1, 1, (g2 + g3 * (3 * I_)) * -2),
            (0, 2, g1 * g1 + g2 * g2 * 4 + g1 * g2 * (2 * I_) - g1 * g3 * 12 + g2 * g3 * (8 * I_)),
            (1, 2, (g2 + g3 * (3 * I_)) * 2),
            (0, 3, (g2 * g2 + g3 * g3 * 2 - g1 * g3 * 2 + g2 * g3 * (2 * I_)) * -8),
            (0, 4, (g2 * g2 + g3 * g3 * 12 - g1 * g3 * 2 + g2 * g3 * (2 * I_)) * 4),
            (0, 5, g3 * g3 * -48),
            (0, 6, g3 * g3 * 16),
        ).to_operator(H, lad.k)
        assert normal_product(lad.kplus, lad.kminus) == want

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_factorization_exact(self, chains, N):
        _, _, lad = chains[N]
        structure_function(N, lad)  # raises on residual

    @pytest.mark.parametrize("N", [2, 3])
    def test_updown_product_is_shifted_phi(self, chains, N):
        _, _, lad = chains[N]
        sf = structure_function(N, lad)
        H = build_hamiltonian(HamiltonianSpec.symbolic(N))
        shifted = sf.product().shift_k(1).to_operator(H, lad.k)
        assert normal_product(lad.kminus, lad.kplus) == shifted

    def test_factors_commute_as_operators(self, chains):
        _, _, lad = chains[3]
        sf = structure_function(3, lad)
        H = build_hamiltonian(HamiltonianSpec.symbolic(3))
        op1 = sf.phi1.to_operator(H, lad.k)
        op2 = sf.phi2.to_operator(H, lad.k)
        assert commutator(op1, op2).is_zero()

    def test_all_zero_coefficients(self):
        phi1, phi2 = structure_function_polynomials(5, [ParamScalar.zero()] * 5)
        assert phi1 == _hk((1, 0, ParamScalar.const(Fraction(1, 4))))
        assert phi2 == _hk((1, 0, ParamScalar.one()))

    def test_order_five_top_coefficient(self):
        phi1, _ = structure_function_polynomials(5, [gamma(k) for k in range(1, 6)])
        assert phi1.coeffs[(0, 5)] == gamma(5) * GaussianRational(0, -8)

    def test_degeneration_to_order_two(self):
        zero = ParamScalar.zero()
        gs5 = [gamma(1), gamma(2), zero, zero, zero]
        p1_5, p2_5 = structure_function_polynomials(5, gs5)
        p1_2, p2_2 = structure_function_polynomials(2, [gamma(1), gamma(2)])
        assert p1_5 == p1_2
        assert p2_5 == p2_2


class TestConjecture1:
    @pytest.mark.parametrize("N", [2, 3])
    def test_report_passes(self, N):
        rep = verify_conjecture1(N)
        assert rep.ok
        assert rep.measured_algebra_order == 2 * N - 1

    def test_ladder_commutator_polynomial_consistent(self, chains):
        _, _, lad = chains[2]
        sf = structure_function(2, lad)
        diff = ladder_commutator_polynomial(sf)
        H = build_hamiltonian(HamiltonianSpec.symbolic(2))
        assert diff.to_operator(H, lad.k) == commutator(lad.kminus, lad.kplus)

    def test_independence_certificate(self):
        assert check_algebraic_independence(2)
        assert check_algebraic_independence(4)

    def test_corrupted_symmetry_fails_with_residual(self):
        pair = paper_symmetries(3)
        corrupted = SymmetryPair(
            I=pair.I + (Q2 * P2).scale(gamma(3)), Iprime=pair.Iprime, order=3, params=pair.params
        )
        r1, _ = corrupted.commutator_residuals()
        assert not r1.is_zero()

    def test_numeric_parameters(self, rng):
        gs = reality_respecting_gammas(rng, 2)
        rep = verify_conjecture1(2, gs)
        assert rep.ok
