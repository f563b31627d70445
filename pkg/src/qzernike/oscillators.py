"""Curved and perturbed isotropic oscillators built on the Type I spectrum.

Physical parameterization: curvature kappa, frequency-like beta (fixed to
-2 throughout the applications, i.e. unit frequency), cubic strength mu and
quartic strength nu, mapped to Hamiltonian coefficients by

    g1 = -i beta,  g2 = -kappa,  g3 = i mu,  g4 = -nu

so that the Type I energy is real:

    E(n) = -beta n + kappa n^2 - mu n^3 - nu n^4.

Bound-state counting asks for positive energies with positive consecutive
spacings; hyperbolic-type spectra terminate at a finite n_max while
spherical-type ones are unbounded.  Rational inputs are honored exactly
(Fraction arithmetic); decimal inputs run in floating point with a 1e-12
comparison slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import GaussianRational

__all__ = [
    "OscillatorSpec",
    "LevelTable",
    "NoBoundStatesError",
    "map_params",
    "inverse_map",
    "energy",
    "energy_levels",
    "spacing",
    "n_max",
    "admissible_interval",
    "phi_positivity",
    "figure_data",
    "FIGURES",
    "perturbation_class",
]

_TOL = 1e-12


class NoBoundStatesError(ValueError):
    """The spectrum admits no positive ground level."""


def _exactable(x) -> bool:
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class OscillatorSpec:
    """kappa > 0 spherical, < 0 hyperbolic, 0 flat; beta = -2 is the paper
    normalization (unit frequency)."""

    kappa: Fraction | float = 0
    beta: Fraction | float = -2
    mu: Fraction | float = 0
    nu: Fraction | float = 0

    def exact(self) -> bool:
        return all(_exactable(v) for v in (self.kappa, self.beta, self.mu, self.nu))

    def energy_coeffs(self):
        """Ascending coefficients of E(n) (constant term zero, omitted)."""
        return [-self.beta, self.kappa, -self.mu, -self.nu]


def map_params(spec: OscillatorSpec):
    """Hamiltonian coefficients for the spec; exact inputs give exact output.

    Returns GaussianRational entries for rational specs, complex otherwise,
    trimmed to the highest nonzero power (length >= 1).
    """
    if spec.exact():
        gs = [
            GaussianRational(0, -Fraction(spec.beta)),
            GaussianRational(-Fraction(spec.kappa)),
            GaussianRational(0, Fraction(spec.mu)),
            GaussianRational(-Fraction(spec.nu)),
        ]
        zero = GaussianRational(0)
    else:
        gs = [
            complex(0, -spec.beta),
            complex(-spec.kappa, 0),
            complex(0, spec.mu),
            complex(-spec.nu, 0),
        ]
        zero = 0j
    while len(gs) > 1 and gs[-1] == zero:
        gs.pop()
    return gs


def inverse_map(gammas) -> OscillatorSpec:
    """Recover (kappa, beta, mu, nu) from g1..g4; reality convention enforced."""
    padded = list(gammas) + [GaussianRational(0)] * (4 - len(gammas))
    vals = []
    for k, g in enumerate(padded[:4], start=1):
        if isinstance(g, GaussianRational):
            re, im = g.re, g.im
        else:
            re, im = complex(g).real, complex(g).imag
        if k % 2 == 1:
            if re != 0:
                raise ValueError(f"g{k} must be purely imaginary")
            vals.append(im)
        else:
            if im != 0:
                raise ValueError(f"g{k} must be real")
            vals.append(re)
    g1i, g2r, g3i, g4r = vals
    return OscillatorSpec(kappa=-g2r, beta=-g1i, mu=g3i, nu=-g4r)


def energy(spec: OscillatorSpec, n):
    c1, c2, c3, c4 = spec.energy_coeffs()
    return ((c4 * n + c3) * n + c2) * n * n + c1 * n


def spacing(spec: OscillatorSpec, n):
    """Closed-form E(n+1) - E(n)."""
    c1, c2, c3, c4 = spec.energy_coeffs()
    return (
        c1
        + c2 * (2 * n + 1)
        + c3 * (3 * n * n + 3 * n + 1)
        + c4 * (4 * n ** 3 + 6 * n * n + 4 * n + 1)
    )


def _positive(x, exact: bool) -> bool:
    if exact:
        return x > 0
    return x > _TOL * max(1.0, abs(x))


@dataclass
class LevelTable:
    rows: list[dict]  # n, E, dE, bound


def energy_levels(spec: OscillatorSpec, n_range) -> LevelTable:
    nm = _n_max_or_none(spec)
    rows = []
    for n in n_range:
        rows.append(
            {
                "n": n,
                "E": energy(spec, n),
                "dE": energy(spec, n + 1) - energy(spec, n),
                "bound": True if nm is None else n <= nm,
            }
        )
    return LevelTable(rows=rows)


def _scan_bound(spec: OscillatorSpec) -> int:
    """Past this n both E(n) and the spacing keep the sign of their leading
    coefficients (Cauchy root bound)."""
    bound = 1.0
    e_coeffs = [float(c) for c in spec.energy_coeffs()]
    d_coeffs = [
        float(spacing(spec, 1) - spacing(spec, 0)),
    ]
    polys = []
    c1, c2, c3, c4 = spec.energy_coeffs()
    polys.append([0, c1, c2, c3, c4])
    polys.append(
        [c1 + c2 + c3 + c4, 2 * c2 + 3 * c3 + 4 * c4, 3 * c3 + 6 * c4, 4 * c4]
    )
    for coeffs in polys:
        cs = [float(c) for c in coeffs]
        while cs and cs[-1] == 0.0:
            cs.pop()
        if len(cs) <= 1:
            continue
        lead = cs[-1]
        bound = max(bound, 1.0 + max(abs(c / lead) for c in cs[:-1]))
    return int(math.ceil(bound)) + 1


def _n_max_or_none(spec: OscillatorSpec) -> int | None:
    exact = spec.exact()
    if not _positive(energy(spec, 1), exact):
        raise NoBoundStatesError(
            "E(1) <= 0: no bound states "
            f"(kappa={spec.kappa}, beta={spec.beta}, mu={spec.mu}, nu={spec.nu})"
        )
    limit = _scan_bound(spec)
    n = 1
    while n <= limit:
        if not _positive(spacing(spec, n), exact) or not _positive(
            energy(spec, n + 1), exact
        ):
            return n
        n += 1
    # no violation up to the root bound: positivity holds for every n
    return None


def n_max(spec: OscillatorSpec) -> int | None:
    """Largest n with E(1..n) > 0 and positive spacings below it; None means
    unbounded (spherical-type spectra).

    Raises NoBoundStatesError when even n = 1 fails; for the named classes
    that reproduces the admissibility thresholds |kappa| < 2, mu < 2 and
    mu < 2 + kappa (at beta = -2).
    """
    return _n_max_or_none(spec)


def perturbation_class(spec: OscillatorSpec) -> dict:
    """Spherical/hyperbolic label per perturbation order (paper naming)."""
    out = {}
    out["cubic"] = "none" if spec.mu == 0 else ("hyperbolic" if spec.mu > 0 else "spherical")
    out["quartic"] = "none" if spec.nu == 0 else ("hyperbolic" if spec.nu > 0 else "spherical")
    return out


def admissible_interval(spec_class: str, nmax: int, kappa=None):
    """Half-open parameter interval [lo, hi) mapping to the given n_max.

    Classes: 'hyperbolic' (interval for |kappa|), 'flat-cubic' (for mu with
    kappa = 0) and 'spherical-cubic' (for mu at fixed kappa > 0).
    """
    if nmax < 1:
        raise ValueError("n_max must be >= 1")
    m = nmax
    if spec_class == "hyperbolic":
        return (Fraction(2, 2 * m + 1), Fraction(2, 2 * m - 1))
    if spec_class == "flat-cubic":
        return (Fraction(2, 1 + 3 * m * (m + 1)), Fraction(2, 1 + 3 * m * (m - 1)))
    if spec_class == "spherical-cubic":
        if kappa is None:
            raise ValueError("spherical-cubic needs the curvature")
        k = Fraction(kappa) if _exactable(kappa) else kappa
        lo = (2 + k * (2 * m + 1)) / (1 + 3 * m * (m + 1))
        hi = (2 + k * (2 * m - 1)) / (1 + 3 * m * (m - 1))
        return (lo, hi)
    raise ValueError(f"unknown oscillator class {spec_class!r}")


def phi_positivity(spec: OscillatorSpec, nmax: int) -> dict:
    """Verify the Type I structure function is positive for B = 1..n <= n_max."""
    exact = spec.exact()
    c1, c2, c3, c4 = spec.energy_coeffs()

    def e(x):
        return ((c4 * x + c3) * x + c2) * x * x + c1 * x

    checked = 0
    for n in range(1, nmax + 1):
        for Bv in range(1, n + 1):
            phi = Fraction(1, 4) * (e(n) - e(n - 2 * Bv)) * (e(n) - e(2 * Bv - n - 2))
            checked += 1
            if not _positive(phi, exact):
                return {"ok": False, "violation": {"B": Bv, "n": n, "phi": phi}, "checked": checked}
    return {"ok": True, "violation": None, "checked": checked}


# ---- figure reproduction ----
def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(x)


FIGURES = {
    1: {
        "description": "spherical oscillator spectra, kappa in {0.5, 0.25, 0.15} plus flat",
        "series": [
            OscillatorSpec(kappa=Fraction(1, 2)),
            OscillatorSpec(kappa=Fraction(1, 4)),
            OscillatorSpec(kappa=Fraction(3, 20)),
            OscillatorSpec(kappa=0),
        ],
        "labels": ["kappa=0.5", "kappa=0.25", "kappa=0.15", "kappa=0"],
        "n_top": 10,
    },
    2: {
        "description": "hyperbolic oscillator spectra, kappa in {-0.25, -0.16, -0.12} plus flat",
        "series": [
            OscillatorSpec(kappa=Fraction(-1, 4)),
            OscillatorSpec(kappa=Fraction(-4, 25)),
            OscillatorSpec(kappa=Fraction(-3, 25)),
            OscillatorSpec(kappa=0),
        ],
        "labels": ["kappa=-0.25", "kappa=-0.16", "kappa=-0.12", "kappa=0"],
        "n_top": 10,
    },
    3: {
        "description": "flat cubic spherical perturbations, mu in {-0.05, -0.025, -0.01} plus flat",
        "series": [
            OscillatorSpec(mu=Fraction(-1, 20)),
            OscillatorSpec(mu=Fraction(-1, 40)),
            OscillatorSpec(mu=Fraction(-1, 100)),
            OscillatorSpec(mu=0),
        ],
        "labels": ["mu=-0.05", "mu=-0.025", "mu=-0.01", "mu=0"],
        "n_top": 10,
    },
    4: {
        "description": "flat cubic hyperbolic perturbations, mu in {0.06, 0.03, 0.015} plus flat",
        "series": [
            OscillatorSpec(mu=Fraction(3, 50)),
            OscillatorSpec(mu=Fraction(3, 100)),
            OscillatorSpec(mu=Fraction(3, 200)),
            OscillatorSpec(mu=0),
        ],
        "labels": ["mu=0.06", "mu=0.03", "mu=0.015", "mu=0"],
        "n_top": 10,
    },
    5: {
        "description": "spherical (kappa=1) cubic hyperbolic perturbations, mu in {0.2, 0.12, 0.1, 0.07}",
        "series": [
            OscillatorSpec(kappa=1, mu=Fraction(1, 5)),
            OscillatorSpec(kappa=1, mu=Fraction(3, 25)),
            OscillatorSpec(kappa=1, mu=Fraction(1, 10)),
            OscillatorSpec(kappa=1, mu=Fraction(7, 100)),
        ],
        "labels": ["mu=0.2", "mu=0.12", "mu=0.1", "mu=0.07"],
        "n_top": 10,
    },
}


def figure_data(figure_id: int) -> list[tuple[str, int, Fraction | float]]:
    """(series, n, E) rows for one figure, truncated at each series' n_max."""
    if figure_id not in FIGURES:
        raise ValueError("figure id must be 1..5")
    fig = FIGURES[figure_id]
    rows = []
    for label, spec in zip(fig["labels"], fig["series"]):
        nm = _n_max_or_none(spec)
        top = fig["n_top"] if nm is None else min(fig["n_top"], nm)
        for n in range(1, top + 1):
            rows.append((label, n, energy(spec, n)))
    return rows
