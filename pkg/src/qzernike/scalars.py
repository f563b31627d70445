"""Exact scalars: Gaussian rationals and sparse parameter polynomials.

``GaussianRational`` is a complex number with arbitrary-precision rational
real and imaginary parts, always stored in lowest terms.

``ParamScalar`` is a sparse multivariate polynomial in the Hamiltonian
coefficients g1, g2, ... over Gaussian rationals, with an optional
denominator polynomial (rational-function mode).  The denominator is only
ever produced by linear solving and constraint solving; operator-algebra
code stays on the polynomial fast path.  Monomials are ordered graded-lex
with g1 > g2 > ... for all canonical choices (leading terms, printing).
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd

from . import _kernels as _k

__all__ = ["GaussianRational", "ParamScalar", "gamma", "MissingParameterError"]


class MissingParameterError(KeyError):
    """A substitution did not cover every parameter present."""


def _triple_from(value) -> tuple[int, int, int]:
    """Coerce int / Fraction / GaussianRational / complex-int to a triple."""
    if isinstance(value, GaussianRational):
        return value._t
    if isinstance(value, int):
        return (value, 0, 1)
    if isinstance(value, Fraction):
        return (value.numerator, 0, value.denominator)
    if isinstance(value, complex):
        re, im = value.real, value.imag
        if re != int(re) or im != int(im):
            raise TypeError("only integer-valued complex literals are exact; use Fractions")
        return _k.gr_normalize(int(re), int(im), 1)
    raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")


class GaussianRational:
    """Exact complex scalar with rational real and imaginary parts."""

    __slots__ = ("_t",)

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational) and im == 0:
            self._t = re._t
            return
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator
        self._t = _k.gr_normalize(
            re.numerator * im.denominator, im.numerator * re.denominator, d
        )

    @classmethod
    def _raw(cls, triple) -> GaussianRational:
        out = object.__new__(cls)
        out._t = triple
        return out

    @property
    def re(self) -> Fraction:
        return Fraction(self._t[0], self._t[2])

    @property
    def im(self) -> Fraction:
        return Fraction(self._t[1], self._t[2])

    def is_zero(self) -> bool:
        return self._t[0] == 0 and self._t[1] == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        try:
            return GaussianRational._raw(_k.gr_add(self._t, _triple_from(other)))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return GaussianRational._raw(_k.gr_sub(self._t, _triple_from(other)))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return GaussianRational._raw(_k.gr_sub(_triple_from(other), self._t))
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return GaussianRational._raw(_k.gr_neg(self._t))

    def __mul__(self, other):
        try:
            return GaussianRational._raw(_k.gr_mul(self._t, _triple_from(other)))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            return GaussianRational._raw(_k.gr_div(self._t, _triple_from(other)))
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        try:
            return GaussianRational._raw(_k.gr_div(_triple_from(other), self._t))
        except TypeError:
            return NotImplemented

    def __eq__(self, other):
        try:
            return self._t == _triple_from(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self._t)

    def conjugate(self) -> GaussianRational:
        a, b, d = self._t
        return GaussianRational._raw((a, -b, d))

    def __complex__(self) -> complex:
        a, b, d = self._t
        return complex(a / d, b / d)

    def __str__(self) -> str:
        a, b, d = self._t
        return f"({_frac_str(a, d)})+({_frac_str(b, d)})i"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse the canonical ``(<re>)+(<im>)i`` form."""
        m = _SCALAR_RE.fullmatch(text.strip())
        if not m:
            raise ValueError(f"not a Gaussian rational literal: {text!r}")
        return cls(Fraction(m.group(1)), Fraction(m.group(2)))


def _frac_str(num: int, den: int) -> str:
    g = gcd(num, den)
    num //= g
    den //= g
    return str(num) if den == 1 else f"{num}/{den}"


_RAT = r"-?\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(rf"\(({_RAT})\)\+\(({_RAT})\)i")

GR_ZERO = GaussianRational._raw(_k.GR_ZERO)
GR_ONE = GaussianRational._raw(_k.GR_ONE)
GR_I = GaussianRational._raw(_k.GR_I)


def _expo_key(e: tuple) -> tuple:
    # graded-lex: compare total degree first, then the exponent tuple itself
    # (trailing-zero-stripped tuples compare consistently with zero padding)
    return (sum(e), e)


def _expo_sub(e: tuple, f: tuple):
    """e - f componentwise, or None if some exponent would go negative."""
    if len(f) > len(e):
        return None
    out = list(e)
    for i in range(len(f)):
        out[i] -= f[i]
        if out[i] < 0:
            return None
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class ExactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


def _poly_div_exact(num: dict, den: dict) -> dict:
    """Exact multivariate division num/den; raises ExactDivisionError."""
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead_den = max(den, key=_expo_key)
    c_den = den[lead_den]
    rem = dict(num)
    quo: dict = {}
    while rem:
        lead = max(rem, key=_expo_key)
        e = _expo_sub(lead, lead_den)
        if e is None:
            raise ExactDivisionError("not exactly divisible")
        c = _k.gr_div(rem[lead], c_den)
        quo[e] = c
        rem = _k.poly_sub(rem, _k.poly_mul({e: c}, den))
    return quo


def _poly_content_strip(p: dict) -> tuple[dict, tuple]:
    """Divide out the common monomial factor; returns (poly, factor)."""
    if not p:
        return p, ()
    common = None
    for e in p:
        if common is None:
            common = list(e)
        else:
            for i in range(len(common)):
                common[i] = min(common[i], e[i] if i < len(e) else 0)
        if not any(common):
            return p, ()
    while common and common[-1] == 0:
        common.pop()
    factor = tuple(common)
    if not factor:
        return p, ()
    stripped = {}
    for e, c in p.items():
        stripped[_expo_sub(e, factor)] = c
    return stripped, factor


class ParamScalar:
    """Sparse polynomial (or reduced ratio) in the parameters g1, g2, ..."""

    __slots__ = ("num", "den")

    def __init__(self, num: dict | None = None, den: dict | None = None):
        self.num = num or {}
        self.den = None
        if den is not None and den != {(): _k.GR_ONE}:
            if not den:
                raise ZeroDivisionError("zero denominator polynomial")
            self.num, self.den = self._reduced(self.num, den)

    @staticmethod
    def _reduced(num: dict, den: dict) -> tuple[dict, dict | None]:
        if not num:
            return {}, None
        # strip common monomial factors
        num_s, fn = _poly_content_strip(num)
        den_s, fd = _poly_content_strip(den)
        common = tuple(min(a, b) for a, b in zip(fn, fd))
        while common and common[-1] == 0:
            common = common[:-1]
        num = _k.poly_mul(num_s, {_expo_sub(fn, common): _k.GR_ONE})
        den = _k.poly_mul(den_s, {_expo_sub(fd, common): _k.GR_ONE})
        # make the denominator monic in graded-lex
        lead = max(den, key=_expo_key)
        c = den[lead]
        if c != _k.GR_ONE:
            den = {e: _k.gr_div(v, c) for e, v in den.items()}
            num = {e: _k.gr_div(v, c) for e, v in num.items()}
        if den == {(): _k.GR_ONE}:
            return num, None
        # full reduction when the denominator divides the numerator exactly
        try:
            return _poly_div_exact(num, den), None
        except ExactDivisionError:
            return num, den

    # ---- constructors ----
    @classmethod
    def zero(cls) -> ParamScalar:
        return cls({})

    @classmethod
    def one(cls) -> ParamScalar:
        return cls({(): _k.GR_ONE})

    @classmethod
    def const(cls, value) -> ParamScalar:
        t = _triple_from(value)
        if t[0] == 0 and t[1] == 0:
            return cls({})
        return cls({(): t})

    @classmethod
    def gamma(cls, k: int) -> ParamScalar:
        if k < 1:
            raise ValueError("parameter index must be >= 1")
        return cls({(0,) * (k - 1) + (1,): _k.GR_ONE})

    # ---- predicates ----
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den is None

    def is_constant(self) -> bool:
        return self.den is None and (not self.num or set(self.num) == {()})

    def as_gaussian(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("ParamScalar is not constant")
        return GaussianRational._raw(self.num.get((), _k.GR_ZERO))

    def variables(self) -> set[int]:
        """1-based indices of parameters that occur."""
        out: set[int] = set()
        for part in (self.num, self.den or {}):
            for e in part:
                out.update(i + 1 for i, v in enumerate(e) if v)
        return out

    def total_degree(self) -> int:
        if not self.num:
            return 0
        return max(sum(e) for e in self.num)

    # ---- arithmetic ----
    @staticmethod
    def _coerce(other) -> ParamScalar:
        if isinstance(other, ParamScalar):
            return other
        return ParamScalar.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den is None and o.den is None:
            return ParamScalar(_k.poly_add(self.num, o.num))
        a, b = self.num, self.den or {(): _k.GR_ONE}
        c, d = o.num, o.den or {(): _k.GR_ONE}
        return ParamScalar(
            _k.poly_add(_k.poly_mul(a, d), _k.poly_mul(c, b)), _k.poly_mul(b, d)
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __neg__(self):
        out = ParamScalar.__new__(ParamScalar)
        out.num = _k.poly_neg(self.num)
        out.den = self.den
        return out

    def __mul__(self, other):
        o = self._coerce(other)
        if self.den is None and o.den is None:
            return ParamScalar(_k.poly_mul(self.num, o.num))
        a, b = self.num, self.den or {(): _k.GR_ONE}
        c, d = o.num, o.den or {(): _k.GR_ONE}
        return ParamScalar(_k.poly_mul(a, c), _k.poly_mul(b, d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero ParamScalar")
        a, b = self.num, self.den or {(): _k.GR_ONE}
        c, d = o.num, o.den or {(): _k.GR_ONE}
        return ParamScalar(_k.poly_mul(a, d), _k.poly_mul(b, c))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def div_exact(self, other: ParamScalar) -> ParamScalar:
        """Polynomial exact division; both operands must be polynomial."""
        if self.den is not None or other.den is not None:
            raise ValueError("div_exact requires polynomial mode")
        return ParamScalar(_poly_div_exact(self.num, other.num))

    def divides(self, other: ParamScalar) -> bool:
        try:
            other.div_exact(self)
            return True
        except (ExactDivisionError, ZeroDivisionError):
            return False

    # ---- canonical data ----
    def leading(self) -> tuple[tuple, GaussianRational]:
        if not self.num:
            return (), GR_ZERO
        e = max(self.num, key=_expo_key)
        return e, GaussianRational._raw(self.num[e])

    def coefficient(self, expo: tuple) -> GaussianRational:
        return GaussianRational._raw(self.num.get(tuple(expo), _k.GR_ZERO))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ParamScalar.const(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        if self.den is None and other.den is None:
            return self.num == other.num
        # cross-multiplied comparison covers unreduced corner cases
        a, b = self.num, self.den or {(): _k.GR_ONE}
        c, d = other.num, other.den or {(): _k.GR_ONE}
        return _k.poly_mul(a, d) == _k.poly_mul(c, b)

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset((self.den or {}).items())))

    # ---- evaluation ----
    def substitute(self, assignment: dict[int, GaussianRational]) -> GaussianRational:
        """Exact evaluation; assignment maps 1-based index -> value."""
        missing = self.variables() - set(assignment)
        if missing:
            k = min(missing)
            raise MissingParameterError(f"parameter g{k} not assigned")
        num = self._eval_poly(self.num, assignment)
        if self.den is None:
            return num
        return num / self._eval_poly(self.den, assignment)

    @staticmethod
    def _eval_poly(p: dict, assignment) -> GaussianRational:
        total = GR_ZERO
        for e, c in p.items():
            term = GaussianRational._raw(c)
            for i, exp in enumerate(e):
                if exp:
                    v = assignment[i + 1]
                    if not isinstance(v, GaussianRational):
                        v = GaussianRational(v)
                    for _ in range(exp):
                        term = term * v
            total = total + term
        return total

    def evalf(self, values: dict[int, complex]) -> complex:
        """Floating evaluation for numeric-mode callers."""
        def ev(p):
            total = 0j
            for e, (a, b, d) in p.items():
                term = complex(a / d, b / d)
                for i, exp in enumerate(e):
                    if exp:
                        term *= values[i + 1] ** exp
                total += term
            return total

        num = ev(self.num)
        return num if self.den is None else num / ev(self.den)

    # ---- printing / parsing ----
    def __str__(self) -> str:
        if self.den is None:
            return _poly_str(self.num)
        return f"{_poly_str(self.num)} / {_poly_str(self.den)}"

    def __repr__(self) -> str:
        return f"ParamScalar<{self}>"

    @classmethod
    def parse(cls, text: str) -> ParamScalar:
        parts = text.split(" / ")
        if len(parts) == 1:
            return cls(_poly_parse(parts[0]))
        if len(parts) == 2:
            return cls(_poly_parse(parts[0]), _poly_parse(parts[1]))
        raise ValueError(f"malformed ParamScalar literal: {text!r}")


def gamma(k: int) -> ParamScalar:
    """The parameter g_k as a ParamScalar."""
    return ParamScalar.gamma(k)


def _gmono_str(e: tuple) -> str:
    parts = []
    for i, exp in enumerate(e):
        if exp == 1:
            parts.append(f"g{i + 1}")
        elif exp > 1:
            parts.append(f"g{i + 1}^{exp}")
    return " ".join(parts)


def _poly_str(p: dict) -> str:
    if not p:
        return "(0)+(0)i"
    parts = []
    for e in sorted(p, key=_expo_key, reverse=True):
        a, b, d = p[e]
        s = f"({_frac_str(a, d)})+({_frac_str(b, d)})i"
        mono = _gmono_str(e)
        parts.append(f"{s} {mono}" if mono else s)
    return " + ".join(parts)


_GMONO_RE = _re.compile(r"g(\d+)(?:\^(\d+))?")


def _poly_parse(text: str) -> dict:
    out: dict = {}
    for part in text.split(" + "):
        part = part.strip()
        m = _SCALAR_RE.match(part)
        if not m:
            raise ValueError(f"malformed polynomial term: {part!r}")
        re_f = Fraction(m.group(1))
        im_f = Fraction(m.group(2))
        t = GaussianRational(re_f, im_f)._t
        rest = part[m.end():].strip()
        expo: list[int] = []
        if rest:
            for gm in rest.split():
                mm = _GMONO_RE.fullmatch(gm)
                if not mm:
                    raise ValueError(f"malformed parameter monomial: {gm!r}")
                idx = int(mm.group(1))
                exp = int(mm.group(2) or 1)
                if idx < 1:
                    raise ValueError("parameter index must be >= 1")
                while len(expo) < idx:
                    expo.append(0)
                expo[idx - 1] += exp
        while expo and expo[-1] == 0:
            expo.pop()
        key = tuple(expo)
        if key in out:
            out[key] = _k.gr_add(out[key], t)
        else:
            out[key] = t
    return {e: c for e, c in out.items() if c[0] or c[1]}
