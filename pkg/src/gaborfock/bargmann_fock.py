"""Bargmann transform, truncated Fock norms and membership probes.

Bf(z) = 2^{1/4} int f(t) exp(-pi t^2 + 2 pi t z - pi z^2 / 2) dt maps L2(R)
isometrically onto the Fock space of entire F with
int |F(z)|^2 exp(-pi |z|^2) dm(z) < inf.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .catalog import EntireFunction, TimeFunction
from .special_functions import RangeError

BARGMANN_MAX_MODULUS = 10.0
FOCK_MAX_RADIUS = 30.0


class QuadratureError(ArithmeticError):
    pass


# ---------------------------------------------------------------- transform

def bargmann_transform(f: TimeFunction, z, tol: float = 1e-10, half_width: float = 5.0,
                       max_levels: int = 10):
    """Bf(z) by trapezoidal quadrature, vectorised over z.

    The integrand is entire in t, so the contour is moved to the horizontal
    line through the saddle t* = (center + z)/2; along it the integrand is a
    Gaussian of width ~0.4 times a polynomial, with no oscillatory
    cancellation.  The step is halved until successive estimates differ by
    less than ``tol`` times max(1, |Bf(z)|).
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(np.abs(z) > BARGMANN_MAX_MODULUS):
        raise RangeError(f"Bargmann quadrature is validated for |z| <= {BARGMANN_MAX_MODULUS}")
    t0 = 0.5 * (f.center + z)[:, None]

    def integrand(s):
        t = t0 + s[None, :]
        return f(t) * np.exp(-np.pi * t * t + 2 * np.pi * t * z[:, None] - 0.5 * np.pi * z[:, None] ** 2)

    h = 0.25
    s = np.arange(-half_width, half_width + 0.5 * h, h)
    total = integrand(s).sum(axis=1)
    est = 2.0 ** 0.25 * h * total
    for _ in range(max_levels):
        h *= 0.5
        mids = np.arange(-half_width + h, half_width, 2 * h)
        total = total + integrand(mids).sum(axis=1)
        new = 2.0 ** 0.25 * h * total
        if np.all(np.abs(new - est) < tol * np.maximum(1.0, np.abs(new))):
            return complex(new[0]) if scalar else new
        est = new
    raise QuadratureError("Bargmann quadrature did not reach the tolerance")


# ---------------------------------------------------------------- Fock quadrature

def _panel_edges(radii: Sequence[float], width: float) -> np.ndarray:
    edges = [0.0]
    for R in radii:
        n = max(1, math.ceil((R - edges[-1]) / width))
        edges.extend(np.linspace(edges[-1], R, n + 1)[1:])
    return np.array(edges)


def _polar_cumulative(log_integrand: Callable, radii: Sequence[float], nr: int, nt: int) -> np.ndarray:
    """int_{|z| < R} exp(log_integrand(z)) dm(z) for each R in radii."""
    edges = _panel_edges(radii, 0.5)
    x, w = np.polynomial.legendre.leggauss(nr)
    theta = 2 * np.pi * np.arange(nt) / nt
    ring = np.exp(1j * theta)
    acc = 0.0
    out = []
    targets = iter(radii)
    nxt = next(targets)
    for a, b in zip(edges[:-1], edges[1:]):
        r = 0.5 * (a + b) + 0.5 * (b - a) * x
        vals = np.exp(log_integrand(r[:, None] * ring[None, :]))
        acc += 2 * np.pi * float(np.sum(0.5 * (b - a) * w * r * vals.mean(axis=1)))
        if math.isclose(b, nxt, rel_tol=0, abs_tol=1e-12):
            out.append(acc)
            nxt = next(targets, math.inf)
    return np.array(out)


def _refined(log_integrand: Callable, radii: Sequence[float], rtol: float = 1e-6,
             nr: int = 8, nt: int = 512, max_doublings: int = 4) -> np.ndarray:
    """Polar quadrature refined in both directions until estimates agree to rtol."""
    prev = _polar_cumulative(log_integrand, radii, nr, nt)
    for _ in range(max_doublings):
        nr, nt = 2 * nr, 2 * nt
        cur = _polar_cumulative(log_integrand, radii, nr, nt)
        scale = np.maximum(np.abs(cur), 1e-300)
        if np.all(np.abs(cur - prev) <= rtol * scale):
            return cur
        prev = cur
    raise QuadratureError("polar Fock quadrature did not converge under refinement")


def _check_radii(radii: Sequence[float]) -> list[float]:
    radii = [float(R) for R in radii]
    if any(R <= 0 for R in radii):
        raise ValueError("radii must be positive")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be increasing")
    if radii[-1] > FOCK_MAX_RADIUS:
        raise RangeError(f"Fock quadrature is validated for R <= {FOCK_MAX_RADIUS}")
    return radii


def fock_norm_ladder_values(F: EntireFunction, radii: Sequence[float]) -> np.ndarray:
    """Truncated squared Fock norms for every R in an increasing list."""
    radii = _check_radii(radii)

    def log_integrand(z):
        return 2.0 * F.log_abs(z) - np.pi * np.abs(z) ** 2

    with np.errstate(divide="ignore", invalid="ignore"):
        return _refined(log_integrand, radii)


def fock_norm_truncated(F: EntireFunction, R: float) -> float:
    """int_{|z| < R} |F(z)|^2 exp(-pi |z|^2) dm(z)."""
    return float(fock_norm_ladder_values(F, [R])[0])


def fock_inner_product(F: Callable, G: Callable, R: float, nr: int = 16, nt: int = 256) -> complex:
    """int_{|z| < R} F conj(G) exp(-pi |z|^2) dm(z) for callables of moderate size."""
    edges = _panel_edges([R], 0.5)
    x, w = np.polynomial.legendre.leggauss(nr)
    ring = np.exp(2j * np.pi * np.arange(nt) / nt)
    acc = 0j
    for a, b in zip(edges[:-1], edges[1:]):
        r = 0.5 * (a + b) + 0.5 * (b - a) * x
        zz = (r[:, None] * ring[None, :]).ravel()
        vals = (F(zz) * np.conj(G(zz)) * np.exp(-np.pi * np.abs(zz) ** 2)).reshape(nr, nt)
        acc += 2 * np.pi * np.sum(0.5 * (b - a) * w * r * vals.mean(axis=1))
    return complex(acc)


# ---------------------------------------------------------------- membership

CONVERGING, DIVERGING, INCONCLUSIVE = "Converging", "Diverging", "Inconclusive"


@dataclass
class FockNormLadder:
    R_ladder: list[float]
    values: list[float]
    verdict: str
    tail_exponent: float = math.nan
    heuristic: bool = field(default=True, repr=False)

    @property
    def increments(self) -> list[float]:
        return [b - a for a, b in zip(self.values, self.values[1:])]

    @property
    def relative_increments(self) -> list[float]:
        return [d / v if v > 0 else 0.0 for d, v in zip(self.increments, self.values[1:])]

    @property
    def last_relative_increment(self) -> float:
        return self.relative_increments[-1]

    def to_json(self) -> dict:
        incs = [None] + self.increments
        return {"rungs": [{"R": R, "value": v, "increment": d}
                          for R, v, d in zip(self.R_ladder, self.values, incs)],
                "last_relative_increment": self.last_relative_increment,
                "tail_exponent": self.tail_exponent,
                "verdict": self.verdict,
                "heuristic": self.heuristic}


def _tail_exponent(radii: list[float], values: list[float]) -> float:
    """Local power-law decay rate q of the increment density dv/dR ~ R^-q."""
    d = np.diff(values) / np.diff(radii)
    mid = 0.5 * (np.array(radii[1:]) + np.array(radii[:-1]))
    if len(d) < 2 or d[-1] <= 0 or d[-2] <= 0:
        return math.nan
    return float(-math.log(d[-1] / d[-2]) / math.log(mid[-1] / mid[-2]))


def classify_ladder(radii: list[float], values: list[float]) -> tuple[str, float]:
    """Verdict for a truncated-norm ladder.

    Converging if the last relative increment is below 1e-3; Diverging if
    the increments are nondecreasing and the last exceeds the first.
    Otherwise the decay rate q of dv/dR decides: q >= 1.5 means a summable
    tail (Converging), q <= 0.5 a tail growing at least like sqrt(R)
    (Diverging).
    """
    incs = np.diff(values)
    rel = incs[-1] / values[-1] if values[-1] > 0 else 0.0
    q = _tail_exponent(radii, values)
    if rel < 1e-3:
        return CONVERGING, q
    if np.all(np.diff(incs) >= 0) and incs[-1] > incs[0]:
        return DIVERGING, q
    if q >= 1.5:
        return CONVERGING, q
    if q <= 0.5:
        return DIVERGING, q
    return INCONCLUSIVE, q


def fock_membership_probe(F: EntireFunction, R_ladder: Sequence[float]) -> FockNormLadder:
    """Heuristic numerical corroboration of F in the Fock space."""
    radii = _check_radii(R_ladder)
    if len(radii) < 4:
        raise ValueError("the ladder needs at least 4 rungs")
    values = [float(v) for v in fock_norm_ladder_values(F, radii)]
    verdict, q = classify_ladder(radii, values)
    return FockNormLadder(radii, values, verdict, q)


@dataclass
class GrowthCheck:
    r_list: list[float]
    thetas: np.ndarray
    weighted_log: np.ndarray  # log(|F| e^{-(pi/2) r^2}), shape (len(r_list), len(thetas))

    @property
    def maxima(self) -> list[float]:
        return [float(v) for v in np.exp(self.weighted_log.max(axis=1))]

    def rows(self) -> list[dict]:
        return [{"r": r, "theta": t, "weighted_modulus": float(np.exp(v))}
                for r, row in zip(self.r_list, self.weighted_log)
                for t, v in zip(self.thetas, row)]


def fock_growth_check(F: EntireFunction, r_list: Sequence[float], theta_count: int = 256) -> GrowthCheck:
    """Grid maxima of |F(z)| exp(-(pi/2)|z|^2) per radius."""
    r = np.asarray(r_list, dtype=float)
    if np.any(r <= 0) or np.any(r > FOCK_MAX_RADIUS):
        raise RangeError(f"radii must lie in (0, {FOCK_MAX_RADIUS}]")
    th = 2 * np.pi * np.arange(theta_count) / theta_count
    z = r[:, None] * np.exp(1j * th)[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        wl = F.log_abs(z) - 0.5 * np.pi * r[:, None] ** 2
    return GrowthCheck([float(v) for v in r], th, wl)
