import random
from fractions import Fraction

import pytest

from qzernike.scalars import GaussianRational, ParamScalar
from qzernike.weyl import WeylOperator


def random_gaussian(rng, span=6) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-span, span), rng.randint(1, span)),
        Fraction(rng.randint(-span, span), rng.randint(1, span)),
    )


def random_param_scalar(rng, nvars=2, terms=2) -> ParamScalar:
    out = ParamScalar.zero()
    for _ in range(rng.randint(1, terms)):
        mono = ParamScalar.const(random_gaussian(rng))
        for k in range(1, nvars + 1):
            for _ in range(rng.randint(0, 1)):
                mono = mono * ParamScalar.gamma(k)
        out = out + mono
    return out


def random_operator(rng, max_degree=6, terms=3, symbolic=False) -> WeylOperator:
    """Random normal-ordered operator of total degree <= max_degree."""
    out = WeylOperator.zero()
    for _ in range(rng.randint(1, terms)):
        while True:
            mono = tuple(rng.randint(0, max_degree // 2) for _ in range(4))
            if sum(mono) <= max_degree:
                break
        coeff = random_param_scalar(rng) if symbolic else ParamScalar.const(random_gaussian(rng))
        out = out + WeylOperator.monomial(*mono, coeff=coeff)
    return out


def reality_respecting_gammas(rng, N, span=20):
    """Odd-k purely imaginary, even-k real, all nonzero rationals."""
    out = []
    for k in range(1, N + 1):
        f = Fraction(rng.randint(1, span) * rng.choice((1, -1)), rng.randint(1, span))
        out.append(GaussianRational(0, f) if k % 2 else GaussianRational(f))
    return out


@pytest.fixture
def rng():
    return random.Random(20240817)
