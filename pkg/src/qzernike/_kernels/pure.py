"""Pure-Python arithmetic kernel.

Data conventions shared with the compiled twin (``_fast.pyx``):

* Gaussian rational: 3-tuple ``(re_num, im_num, den)`` of ints, ``den > 0``,
  ``gcd(re_num, im_num, den) == 1``.
* Polynomial in the parameters g1, g2, ...: dict mapping exponent tuples to
  Gaussian-rational triples.  Exponent tuples are trailing-zero stripped, so
  g2^3 is keyed ``(0, 3)`` and the constant term ``()``.  Zero coefficients
  are never stored.
* Weyl term map: dict mapping normal monomials ``(a, b, c, d)`` (exponents of
  q1^a q2^b p1^c p2^d) to polynomial dicts.

``weyl_mul`` rewrites products into normal order with the commutation rule
p^c q^a = sum_j C(c,j) C(a,j) j! (-i)^j q^(a-j) p^(c-j) applied per axis.
"""

from math import comb, factorial, gcd

KERNEL_NAME = "pure"

GR_ZERO = (0, 0, 1)
GR_ONE = (1, 0, 1)
GR_I = (0, 1, 1)


def gr_normalize(a, b, d):
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return (a, b, d)


def gr_add(x, y):
    return gr_normalize(x[0] * y[2] + y[0] * x[2], x[1] * y[2] + y[1] * x[2], x[2] * y[2])


def gr_sub(x, y):
    return gr_normalize(x[0] * y[2] - y[0] * x[2], x[1] * y[2] - y[1] * x[2], x[2] * y[2])


def gr_neg(x):
    return (-x[0], -x[1], x[2])


def gr_mul(x, y):
    return gr_normalize(x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0], x[2] * y[2])


def gr_div(x, y):
    a2, b2, d2 = y
    if a2 == 0 and b2 == 0:
        raise ZeroDivisionError("division by zero Gaussian rational")
    # x / y = x * conj(y) * d2 / (d1 * |y_num|^2)
    return gr_normalize(
        (x[0] * a2 + x[1] * b2) * d2,
        (x[1] * a2 - x[0] * b2) * d2,
        x[2] * (a2 * a2 + b2 * b2),
    )


def gr_times_ipow(x, m):
    """x * i^m for m in 0..3."""
    a, b, d = x
    if m == 0:
        return x
    if m == 1:
        return (-b, a, d)
    if m == 2:
        return (-a, -b, d)
    return (b, -a, d)


def expo_add(e1, e2):
    if not e1:
        return e2
    if not e2:
        return e1
    if len(e1) < len(e2):
        e1, e2 = e2, e1
    out = list(e1)
    for i in range(len(e2)):
        out[i] += e2[i]
    return tuple(out)


def poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        cur = out.get(e)
        if cur is None:
            out[e] = c
        else:
            s = gr_add(cur, c)
            if s[0] == 0 and s[1] == 0:
                del out[e]
            else:
                out[e] = s
    return out


def poly_sub(p, q):
    out = dict(p)
    for e, c in q.items():
        cur = out.get(e)
        if cur is None:
            out[e] = (-c[0], -c[1], c[2])
        else:
            s = gr_sub(cur, c)
            if s[0] == 0 and s[1] == 0:
                del out[e]
            else:
                out[e] = s
    return out


def poly_neg(p):
    return {e: (-c[0], -c[1], c[2]) for e, c in p.items()}


def poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = expo_add(e1, e2)
            c = gr_mul(c1, c2)
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                s = gr_add(cur, c)
                if s[0] == 0 and s[1] == 0:
                    del out[e]
                else:
                    out[e] = s
    return out


def poly_scale(p, c):
    if c[0] == 0 and c[1] == 0:
        return {}
    return {e: gr_mul(v, c) for e, v in p.items()}


def poly_scale_int_ipow(p, n, m):
    """p * n * i^m, n a nonzero int, m in 0..3."""
    out = {}
    for e, (a, b, d) in p.items():
        if m == 0:
            t = gr_normalize(a * n, b * n, d)
        elif m == 1:
            t = gr_normalize(-b * n, a * n, d)
        elif m == 2:
            t = gr_normalize(-a * n, -b * n, d)
        else:
            t = gr_normalize(b * n, -a * n, d)
        out[e] = t
    return out


def weyl_mul(A, B):
    """Normal-ordered product of two Weyl term maps."""
    out = {}
    for m1, p1 in A.items():
        a1, b1, c1, d1 = m1
        for m2, p2 in B.items():
            a2, b2, c2, d2 = m2
            base = poly_mul(p1, p2)
            if not base:
                continue
            jmax = c1 if c1 < a2 else a2
            kmax = d1 if d1 < b2 else b2
            for j in range(jmax + 1):
                fj = comb(c1, j) * comb(a2, j) * factorial(j)
                for k in range(kmax + 1):
                    f = fj * comb(d1, k) * comb(b2, k) * factorial(k)
                    key = (a1 + a2 - j, b1 + b2 - k, c1 + c2 - j, d1 + d2 - k)
                    contrib = poly_scale_int_ipow(base, f, (3 * (j + k)) % 4)
                    cur = out.get(key)
                    out[key] = poly_add(cur, contrib) if cur is not None else contrib
    return {key: p for key, p in out.items() if p}
