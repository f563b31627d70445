"""Normal-ordered operator algebra on q1, q2, p1, p2 with [qi, pj] = i delta_ij.

Operators are stored as sparse maps from normal monomials to ParamScalar
coefficients.  A normal monomial is the exponent 4-tuple ``(a, b, c, d)``
of q1^a q2^b p1^c p2^d; every product is rewritten into this order by the
kernel, so equality of operators is equality of term maps.

The grade of a monomial is a + b - c - d; commutation rewriting only
produces terms of the same grade, which makes the grade decomposition a
cheap structural invariant.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

from . import _kernels as _k
from .scalars import GaussianRational, MissingParameterError, ParamScalar, _expo_key

__all__ = [
    "WeylOperator",
    "Q1",
    "Q2",
    "P1",
    "P2",
    "identity",
    "normal_product",
    "commutator",
    "grade_spectrum",
    "substitute_params",
]

Monomial = tuple[int, int, int, int]


def monomial_grade(m: Monomial) -> int:
    return m[0] + m[1] - m[2] - m[3]


def monomial_degree(m: Monomial) -> int:
    return m[0] + m[1] + m[2] + m[3]


def _mono_key(m: Monomial) -> tuple:
    return (monomial_degree(m), m)


def _coerce_scalar(value) -> ParamScalar:
    if isinstance(value, ParamScalar):
        return value
    return ParamScalar.const(value)


class WeylOperator:
    """Element of the enveloping algebra in canonical normal order."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, ParamScalar] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def _raw(cls, terms: dict) -> WeylOperator:
        out = object.__new__(cls)
        out.terms = terms
        return out

    @classmethod
    def zero(cls) -> WeylOperator:
        return cls._raw({})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, d: int, coeff=1) -> WeylOperator:
        s = _coerce_scalar(coeff)
        if s.is_zero():
            return cls.zero()
        return cls._raw({(a, b, c, d): s})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ---- ring structure ----
    def __add__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return WeylOperator._raw(out)

    def __sub__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return WeylOperator._raw({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylOperator):
            return normal_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with everything; operator*operator handled above
        return self.scale(other)

    def scale(self, value) -> WeylOperator:
        s = _coerce_scalar(value)
        if s.is_zero():
            return WeylOperator.zero()
        return WeylOperator._raw({m: c * s for m, c in self.terms.items()})

    def __truediv__(self, value):
        return self.scale(ParamScalar.one() / _coerce_scalar(value))

    def __pow__(self, n: int) -> WeylOperator:
        if not isinstance(n, int) or n < 0:
            raise ValueError("operator powers require a non-negative integer")
        out = identity()
        for _ in range(n):
            out = normal_product(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, c) for m, c in self.terms.items()))

    # ---- structure ----
    def grades(self) -> set[int]:
        return {monomial_grade(m) for m in self.terms}

    def degree(self) -> int:
        """Total degree of the highest monomial (0 for the zero operator)."""
        if not self.terms:
            return 0
        return max(monomial_degree(m) for m in self.terms)

    def grade_part(self, g: int) -> WeylOperator:
        return WeylOperator._raw(
            {m: c for m, c in self.terms.items() if monomial_grade(m) == g}
        )

    def coefficient(self, m: Monomial) -> ParamScalar:
        return self.terms.get(tuple(m), ParamScalar.zero())

    def sorted_terms(self) -> list[tuple[Monomial, ParamScalar]]:
        return [(m, self.terms[m]) for m in sorted(self.terms, key=_mono_key, reverse=True)]

    def variables(self) -> set[int]:
        out: set[int] = set()
        for c in self.terms.values():
            out |= c.variables()
        return out

    def map_coefficients(self, fn) -> WeylOperator:
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[m] = v
        return WeylOperator._raw(out)

    # ---- printing / parsing ----
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(f"[{c}] * {_mono_str(m)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        n = len(self.terms)
        return f"WeylOperator<{n} term{'s' if n != 1 else ''}>"

    @classmethod
    def parse(cls, text: str) -> WeylOperator:
        text = text.strip()
        if text == "0":
            return cls.zero()
        out: dict[Monomial, ParamScalar] = {}
        for part in _split_terms(text):
            m = _TERM_RE.fullmatch(part)
            if not m:
                raise ValueError(f"malformed operator term: {part!r}")
            coeff = ParamScalar.parse(m.group(1))
            mono = _mono_parse(m.group(2))
            if mono in out:
                coeff = out[mono] + coeff
            if coeff.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = coeff
        return cls._raw(out)


def _mono_str(m: Monomial) -> str:
    a, b, c, d = m
    parts = []
    for name, e in (("q1", a), ("q2", b), ("p1", c), ("p2", d)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "Id"


_TERM_RE = _re.compile(r"\[(.+)\] \* (.+)")
_FACTOR_RE = _re.compile(r"(q1|q2|p1|p2)(?:\^(\d+))?")


def _split_terms(text: str) -> list[str]:
    """Split on ' + ' at bracket depth zero."""
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            parts.append(text[start:i])
            i += 3
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


def _mono_parse(text: str) -> Monomial:
    text = text.strip()
    if text == "Id":
        return (0, 0, 0, 0)
    expo = {"q1": 0, "q2": 0, "p1": 0, "p2": 0}
    for factor in text.split():
        m = _FACTOR_RE.fullmatch(factor)
        if not m:
            raise ValueError(f"malformed monomial factor: {factor!r}")
        expo[m.group(1)] += int(m.group(2) or 1)
    return (expo["q1"], expo["q2"], expo["p1"], expo["p2"])


# ---- generators ----
def identity() -> WeylOperator:
    return WeylOperator.monomial(0, 0, 0, 0)


Q1 = WeylOperator.monomial(1, 0, 0, 0)
Q2 = WeylOperator.monomial(0, 1, 0, 0)
P1 = WeylOperator.monomial(0, 0, 1, 0)
P2 = WeylOperator.monomial(0, 0, 0, 1)


# ---- operations ----
def normal_product(A: WeylOperator, B: WeylOperator) -> WeylOperator:
    """Exact normal-ordered product A*B."""
    if not A.terms or not B.terms:
        return WeylOperator.zero()
    if _all_polynomial(A) and _all_polynomial(B):
        raw = _k.weyl_mul(
            {m: c.num for m, c in A.terms.items()},
            {m: c.num for m, c in B.terms.items()},
        )
        return WeylOperator._raw({m: ParamScalar(p) for m, p in raw.items()})
    # rational-coefficient fallback: same rewriting, ParamScalar arithmetic
    out: dict[Monomial, ParamScalar] = {}
    from math import comb, factorial

    for m1, c1 in A.terms.items():
        a1, b1, cc1, d1 = m1
        for m2, c2 in B.terms.items():
            a2, b2, cc2, d2 = m2
            base = c1 * c2
            for j in range(min(cc1, a2) + 1):
                fj = comb(cc1, j) * comb(a2, j) * factorial(j)
                for k in range(min(d1, b2) + 1):
                    f = fj * comb(d1, k) * comb(b2, k) * factorial(k)
                    ph = (3 * (j + k)) % 4  # (-i)^(j+k) as a power of i
                    coeff = base * f
                    if ph == 1:
                        coeff = coeff * GaussianRational(0, 1)
                    elif ph == 2:
                        coeff = coeff * GaussianRational(-1, 0)
                    elif ph == 3:
                        coeff = coeff * GaussianRational(0, -1)
                    key = (a1 + a2 - j, b1 + b2 - k, cc1 + cc2 - j, d1 + d2 - k)
                    cur = out.get(key)
                    s = coeff if cur is None else cur + coeff
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
    return WeylOperator._raw(out)


def _all_polynomial(A: WeylOperator) -> bool:
    return all(c.den is None for c in A.terms.values())


def commutator(A: WeylOperator, B: WeylOperator) -> WeylOperator:
    """[A, B] = AB - BA, exact."""
    return normal_product(A, B) - normal_product(B, A)


def grade_spectrum(A: WeylOperator) -> set[int]:
    """Set of grades a+b-c-d present in A (empty for the zero operator)."""
    return A.grades()


def substitute_params(A: WeylOperator, assignment: dict[int, GaussianRational]) -> WeylOperator:
    """Evaluate every coefficient at the given g_k values (all must be covered)."""
    missing = A.variables() - set(assignment)
    if missing:
        raise MissingParameterError(f"parameter g{min(missing)} not assigned")
    out = {}
    for m, c in A.terms.items():
        v = c.substitute(assignment)
        if not v.is_zero():
            out[m] = ParamScalar.const(v)
    return WeylOperator._raw(out)


def from_fraction(value) -> ParamScalar:
    """Convenience wrapper for Fraction/int scalar coefficients."""
    return ParamScalar.const(Fraction(value))
