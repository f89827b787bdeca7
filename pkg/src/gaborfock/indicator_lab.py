"""Order-2 indicator functions and the density machinery built on them.

h_F(theta) = limsup_{r -> inf} r^-2 log|F(r e^{i theta})| is estimated from a
finite radius ladder.  For a zero set with angular density the integral of h
over the circle, divided by pi^2, gives the density; the envelope
H(theta; dirs) and the convexity floor bound that integral from below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .catalog import EntireFunction
from .special_functions import DEFAULT_EPSILON

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


@dataclass
class IndicatorProfile:
    thetas: np.ndarray
    h_values: np.ndarray
    r_ladder: list[float]
    fit_residuals: np.ndarray  # spread of r^-2 log|F| over the rungs used
    eval_thetas: np.ndarray    # angles actually evaluated after zero-avoidance nudges

    def __post_init__(self):
        if len(self.thetas) < 64:
            raise ValueError("an indicator profile needs at least 64 angles")

    @classmethod
    def from_values(cls, h_values: Sequence[float]) -> "IndicatorProfile":
        h = np.asarray(h_values, dtype=float)
        th = TWO_PI * np.arange(h.size) / h.size
        return cls(th, h, [], np.zeros_like(h), th.copy())

    def rows(self) -> list[dict]:
        return [{"theta": t, "h": h, "residual": e}
                for t, h, e in zip(self.thetas, self.h_values, self.fit_residuals)]


def estimate_indicator(F: EntireFunction, theta_count: int, r_ladder: Sequence[float],
                       epsilon: float = DEFAULT_EPSILON) -> IndicatorProfile:
    """h(theta) as the max of r^-2 log|F(r e^{i theta})| over the top half of the ladder.

    An angle whose ray passes within epsilon * r^{-1/2} of a zero at some
    rung is moved by half a grid step (at most twice); rungs still inside an
    exclusion disk after that are skipped.
    """
    if theta_count < 64:
        raise ValueError("theta_count must be at least 64")
    ladder = np.sort(np.asarray(r_ladder, dtype=float))
    if ladder.size < 2 or ladder[0] <= 0:
        raise ValueError("need at least two positive radii")
    top = ladder[ladder.size // 2:]
    thetas = TWO_PI * np.arange(theta_count) / theta_count
    step = TWO_PI / theta_count
    radius_excl = epsilon / np.sqrt(top)

    eval_th = thetas.copy()
    for attempt in range(3):
        z = top[None, :] * np.exp(1j * eval_th)[:, None]
        excluded = F.zero_distance(z) <= radius_excl[None, :]
        bad = excluded.any(axis=1)
        if not bad.any() or attempt == 2:
            break
        eval_th[bad] += 0.5 * step
    if excluded.all(axis=1).any():
        raise ValueError("every rung is excluded at some angle even after nudging")

    with np.errstate(divide="ignore", invalid="ignore"):
        est = F.log_abs(z) / (top * top)[None, :]
    est = np.where(excluded, -np.inf, est)
    h = est.max(axis=1)
    used = np.where(excluded, np.inf, est)
    spread = h - used.min(axis=1)
    return IndicatorProfile(thetas, h, [float(r) for r in ladder], spread, eval_th)


def levin_density(profile: IndicatorProfile) -> float:
    """(1/pi^2) int_0^{2pi} h(theta) d theta by the periodic trapezoid rule."""
    h = np.asarray(profile.h_values, dtype=float)
    return float(h.sum() * (TWO_PI / h.size) / math.pi ** 2)


@dataclass(frozen=True)
class JensenResult:
    r: float
    lhs: float
    rhs: float

    @property
    def difference(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_json(self) -> dict:
        return {"r": self.r, "lhs": self.lhs, "rhs": self.rhs, "difference": self.difference}


def jensen_check(F: EntireFunction, r: float, n_angles: int = 8192) -> JensenResult:
    """Both sides of Jensen's formula on |z| = r.

    lhs = int_0^r n(t)/t dt = sum over zeros |w| < r of log(r/|w|), from the
    catalog zero list; rhs = mean of log|F(r e^{i theta})| minus log|F(0)|.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    log_f0 = float(np.real(F.log(0j)))
    if not log_f0 > math.log(1e-8):
        raise ValueError(f"F(0) vanishes (|F(0)| <= 1e-8) for {F.describe()}")
    zeros = F.zeros(r + 1.0)
    moduli = np.abs(np.array(zeros, dtype=complex))
    if np.any(np.abs(moduli - r) < 1e-6):
        raise ValueError(f"a zero lies within 1e-6 of |z| = {r}; choose another radius")
    inside = moduli[moduli < r]
    lhs = float(np.sum(np.log(r / inside)))
    theta = TWO_PI * (np.arange(n_angles) + 0.5) / n_angles
    rhs = float(np.mean(F.log_abs(r * np.exp(1j * theta)))) - log_f0
    return JensenResult(float(r), lhs, rhs)


# ---------------------------------------------------------------- envelope

@dataclass(frozen=True)
class DirectionSet:
    angles: tuple[float, ...]

    def __post_init__(self):
        a = self.angles
        if not a:
            raise ValueError("empty direction set")
        if any(not (0.0 <= t < TWO_PI) for t in a):
            raise ValueError("directions must lie in [0, 2pi)")
        if any(b <= c for c, b in zip(a, a[1:])):
            raise ValueError("directions must be strictly increasing")

    @classmethod
    def of(cls, angles: Sequence[float]) -> "DirectionSet":
        return cls(tuple(float(t) for t in angles))

    @property
    def gaps(self) -> np.ndarray:
        a = np.array(self.angles)
        return np.diff(np.append(a, a[0] + TWO_PI))

    def admissible(self, tol: float = 1e-6) -> bool:
        # tolerance absorbs angles typed with ~7 significant digits
        return bool(np.all(self.gaps <= HALF_PI + tol))


def h_envelope(dirs: DirectionSet, theta) -> np.ndarray | float:
    """H(theta; dirs) = (pi/2) cos 2(theta - nearest direction).

    Sector boundaries are the angular midpoints between consecutive
    directions, which makes H continuous with H = pi/2 at every direction.
    """
    th = np.asarray(theta, dtype=float)
    a = np.array(dirs.angles)
    d = np.abs((th[..., None] - a + math.pi) % TWO_PI - math.pi).min(axis=-1)
    out = HALF_PI * np.cos(2.0 * d)
    return float(out) if out.ndim == 0 else out


def envelope_integral(dirs: DirectionSet, nodes: int = 20) -> float:
    """int_0^{2pi} H d theta, Gauss-Legendre on each smooth piece."""
    a = np.array(dirs.angles)
    mids = (a + np.append(a[1:], a[0] + TWO_PI)) / 2.0
    breaks = np.sort(np.concatenate([a, mids, a + TWO_PI, mids + TWO_PI]))
    breaks = breaks[(breaks > a[0]) & (breaks < a[0] + TWO_PI)]
    breaks = np.concatenate([[a[0]], breaks, [a[0] + TWO_PI]])
    x, w = np.polynomial.legendre.leggauss(nodes)
    total = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x
        total += 0.5 * (hi - lo) * float(np.dot(w, h_envelope(dirs, t)))
    return total


@dataclass(frozen=True)
class LevelCheck:
    integral: float
    passes: bool

    def to_json(self) -> dict:
        return {"integral": self.integral, "two_pi": TWO_PI, "passes": self.passes}


def level_inequality_check(dirs: DirectionSet) -> LevelCheck:
    """Integral of H compared against the four-direction value 2pi."""
    if not dirs.admissible():
        raise ValueError("a gap between consecutive directions exceeds pi/2")
    val = envelope_integral(dirs)
    return LevelCheck(float(val), bool(val >= TWO_PI - 1e-6))


def random_direction_set(rng: np.random.Generator, max_tries: int = 10_000) -> DirectionSet:
    """Uniform random directions conditioned on all gaps <= pi/2."""
    for _ in range(max_tries):
        n = int(rng.integers(4, 13))
        a = np.sort(rng.uniform(0.0, TWO_PI, n))
        if np.unique(a).size != n:
            continue
        d = DirectionSet.of(a)
        if d.admissible():
            return d
    raise RuntimeError("could not draw an admissible direction set")


# ---------------------------------------------------------------- convexity

def local_maxima(h: np.ndarray) -> list[int]:
    """Strict local maxima of the 3-tap circular moving average of h.

    A plateau counts once, at its leftmost index, if both neighbours of the
    plateau are strictly lower.
    """
    s = (np.roll(h, 1) + h + np.roll(h, -1)) / 3.0
    n = s.size
    out = []
    for i in range(n):
        if not s[i] > s[i - 1]:
            continue
        j = i
        while s[(j + 1) % n] == s[i] and (j + 1) % n != i:
            j += 1
        if s[(j + 1) % n] < s[i]:
            out.append(i)
    return out


def convexity_floor_check(profile: IndicatorProfile) -> float:
    """Worst margin h(theta) - h(theta0) cos 2(theta - theta0) over |theta - theta0| <= pi/4.

    theta0 runs over the local maxima of the profile; 0 if there are none.
    """
    h = np.asarray(profile.h_values, dtype=float)
    th = np.asarray(profile.thetas, dtype=float)
    worst = math.inf
    for i in local_maxima(h):
        d = (th - th[i] + math.pi) % TWO_PI - math.pi
        near = np.abs(d) <= 0.25 * math.pi + 1e-12
        margin = h[near] - h[i] * np.cos(2.0 * d[near])
        worst = min(worst, float(margin.min()))
    return 0.0 if worst == math.inf else worst
