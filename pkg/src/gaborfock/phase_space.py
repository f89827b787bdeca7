"""Phase-space point sets, sector counting and density estimates.

Points (xi, eta) are identified with xi + i*eta.  Angles live in (0, 2pi]
so that the half-open sectors (theta, vartheta] tile the circle; the
positive real axis therefore sits at angle 2pi.  Membership in the disk
|lambda| < r is decided exactly on the binary values of the inputs
(``fractions.Fraction``), so a point on the boundary is always outside.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# canonical angles for points on the coordinate axes
_AXIS_ANGLES = {
    (1, 0): TWO_PI,
    (0, 1): 0.5 * math.pi,
    (-1, 0): math.pi,
    (0, -1): 1.5 * math.pi,
}


@dataclass(frozen=True, order=True)
class PhasePoint:
    xi: float
    eta: float

    def __post_init__(self):
        if not (math.isfinite(self.xi) and math.isfinite(self.eta)):
            raise ValueError(f"non-finite phase point ({self.xi}, {self.eta})")

    def modulus(self) -> float:
        return math.hypot(self.xi, self.eta)

    def angle(self) -> float:
        return point_angle(self.xi, self.eta)

    def as_complex(self) -> complex:
        return complex(self.xi, self.eta)

    @classmethod
    def parse(cls, text: str) -> "PhasePoint":
        """Parse ``"x:y"``."""
        x, y = text.split(":")
        return cls(float(x), float(y))


def point_angle(xi: float, eta: float) -> float:
    """Argument of xi + i*eta mapped to (0, 2pi]."""
    if xi == 0.0 and eta == 0.0:
        raise ValueError("the origin has no argument")
    if xi == 0.0 or eta == 0.0:
        return _AXIS_ANGLES[(int(np.sign(xi)), int(np.sign(eta)))]
    a = math.atan2(eta, xi)
    return a + TWO_PI if a <= 0.0 else a


@dataclass(frozen=True)
class PointSetSpec:
    """A named generator of phase-space sequences.

    Use the constructors :meth:`axes`, :meth:`lattice`,
    :meth:`lattice_minus` and :meth:`explicit` rather than building the
    dataclass by hand.
    """

    kind: str
    a: float = 1.0
    b: float = 1.0
    omitted: PhasePoint | None = None
    points: tuple[PhasePoint, ...] = field(default=())

    KINDS = ("axes", "lattice", "lattice-minus", "explicit")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown point-set kind {self.kind!r}")
        if self.kind in ("lattice", "lattice-minus"):
            if not (self.a > 0 and self.b > 0 and math.isfinite(self.a) and math.isfinite(self.b)):
                raise ValueError("lattice constants must be positive and finite")
        if self.kind == "lattice-minus":
            if self.omitted is None:
                raise ValueError("lattice-minus needs the omitted point")
            i, j = self.omitted.xi / self.a, self.omitted.eta / self.b
            if round(i) * self.a != self.omitted.xi or round(j) * self.b != self.omitted.eta:
                raise ValueError(f"{self.omitted} is not a point of the lattice")
        if self.kind == "explicit":
            if len(set(self.points)) != len(self.points):
                raise ValueError("explicit point list contains duplicates")
            if any(p.xi == 0.0 and p.eta == 0.0 for p in self.points):
                raise ValueError("explicit point list contains the origin")

    @classmethod
    def axes(cls) -> "PointSetSpec":
        """{(+-1, 0)} plus (+-sqrt(2n), 0) and (0, +-sqrt(2n)), n >= 1."""
        return cls("axes")

    @classmethod
    def lattice(cls, a: float, b: float) -> "PointSetSpec":
        return cls("lattice", a=float(a), b=float(b))

    @classmethod
    def lattice_minus(cls, a: float, b: float, omitted: PhasePoint) -> "PointSetSpec":
        return cls("lattice-minus", a=float(a), b=float(b), omitted=omitted)

    @classmethod
    def explicit(cls, points: Sequence[PhasePoint]) -> "PointSetSpec":
        return cls("explicit", points=tuple(points))

    def describe(self) -> str:
        if self.kind == "axes":
            return "axes"
        if self.kind == "lattice":
            return f"lattice(a={self.a!r}, b={self.b!r})"
        if self.kind == "lattice-minus":
            return f"lattice(a={self.a!r}, b={self.b!r}) minus {self.omitted.xi!r}:{self.omitted.eta!r}"
        return "explicit[" + ",".join(f"{p.xi!r}:{p.eta!r}" for p in self.points) + "]"


def _inside(sq_moduli: np.ndarray, radius: float, exact_sq) -> np.ndarray:
    """Strict |lambda| < radius from squared moduli.

    Float comparison away from the boundary; candidates within a relative
    1e-12 band are re-decided with ``exact_sq(index) < Fraction(radius)**2``.
    """
    r2 = radius * radius
    inside = sq_moduli < r2 * (1.0 - 1e-12)
    band = np.nonzero(np.abs(sq_moduli - r2) <= 1e-12 * r2)[0]
    if band.size:
        fr2 = Fraction(radius) ** 2
        for k in band:
            inside[k] = exact_sq(int(k)) < fr2
    return inside


def _enumerate(spec: PointSetSpec, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of all points with modulus < radius, unsorted."""
    if spec.kind == "axes":
        # largest n with 2n < r^2, decided exactly
        n_max = max(math.ceil(Fraction(radius) ** 2 / 2) - 1, 0)
        s = np.sqrt(2.0 * np.arange(1, n_max + 1))
        z = np.zeros_like(s)
        xs = [s, -s, z, z]
        ys = [z, z, s, -s]
        if radius > 1.0:
            xs.append(np.array([1.0, -1.0]))
            ys.append(np.zeros(2))
        return np.concatenate(xs), np.concatenate(ys)

    if spec.kind in ("lattice", "lattice-minus"):
        a, b = spec.a, spec.b
        imax, jmax = int(radius / a) + 1, int(radius / b) + 1
        i, j = np.meshgrid(np.arange(-imax, imax + 1), np.arange(-jmax, jmax + 1), indexing="ij")
        i, j = i.ravel(), j.ravel()
        x, y = i * a, j * b
        fa, fb = Fraction(a), Fraction(b)
        keep = _inside(x * x + y * y, radius, lambda k: (i[k] * fa) ** 2 + (j[k] * fb) ** 2)
        origin = (i == 0) & (j == 0)
        if keep[origin].any():
            log.info("lattice origin dropped from %s (lambda^-2 undefined there)", spec.describe())
        keep &= ~origin
        if spec.kind == "lattice-minus":
            keep &= ~((x == spec.omitted.xi) & (y == spec.omitted.eta))
        return x[keep], y[keep]

    x = np.array([p.xi for p in spec.points], dtype=float)
    y = np.array([p.eta for p in spec.points], dtype=float)
    pts = spec.points
    keep = _inside(x * x + y * y, radius, lambda k: Fraction(pts[k].xi) ** 2 + Fraction(pts[k].eta) ** 2)
    return x[keep], y[keep]


def _angles(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    a = np.arctan2(y, x)
    a = np.where(a <= 0.0, a + TWO_PI, a)
    # canonical values on the axes so that user-supplied pi/2, pi, ... compare exactly
    a = np.where((y == 0) & (x > 0), TWO_PI, a)
    a = np.where((y == 0) & (x < 0), math.pi, a)
    a = np.where((x == 0) & (y > 0), 0.5 * math.pi, a)
    a = np.where((x == 0) & (y < 0), 1.5 * math.pi, a)
    return a


def _sorted_arrays(spec: PointSetSpec, radius: float):
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    x, y = _enumerate(spec, float(radius))
    mod = np.hypot(x, y)
    ang = _angles(x, y)
    order = np.lexsort((ang, mod))
    return x[order], y[order], mod[order], ang[order]


def generate_points(spec: PointSetSpec, radius: float) -> list[PhasePoint]:
    """Points of ``spec`` with modulus strictly below ``radius``, sorted by (modulus, angle)."""
    x, y, _, _ = _sorted_arrays(spec, radius)
    return [PhasePoint(float(a), float(b)) for a, b in zip(x, y)]


@dataclass(frozen=True)
class SectorCount:
    r: float
    theta: float
    vartheta: float
    count: int

    @property
    def density(self) -> float:
        return self.count / (math.pi * self.r * self.r)

    def row(self) -> dict:
        return {"r": self.r, "theta": self.theta, "vartheta": self.vartheta,
                "count": self.count, "density": self.density}


def _check_sector(r: float, theta: float, vartheta: float) -> None:
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if not (0.0 <= theta < vartheta <= TWO_PI):
        raise ValueError(f"need 0 <= theta < vartheta <= 2pi, got ({theta}, {vartheta})")


def count_sector(spec: PointSetSpec, r: float, theta: float = 0.0, vartheta: float = TWO_PI) -> SectorCount:
    """n(r, theta, vartheta): points with |lambda| < r and theta < arg lambda <= vartheta."""
    _check_sector(r, theta, vartheta)
    _, _, _, ang = _sorted_arrays(spec, r)
    n = int(np.count_nonzero((ang > theta) & (ang <= vartheta)))
    return SectorCount(float(r), float(theta), float(vartheta), n)


@dataclass(frozen=True)
class DensityEstimate:
    theta: float
    vartheta: float
    r_ladder: tuple[float, ...]
    counts: tuple[int, ...]
    values: tuple[float, ...]

    @property
    def extrapolated(self) -> float:
        return self.values[-1]

    def rows(self) -> list[dict]:
        return [{"r": r, "theta": self.theta, "vartheta": self.vartheta, "count": c, "density": v}
                for r, c, v in zip(self.r_ladder, self.counts, self.values)]


def angular_density(spec: PointSetSpec, theta: float, vartheta: float,
                    r_ladder: Sequence[float]) -> DensityEstimate:
    """count/(pi r^2) along an increasing ladder; the estimate is the last rung."""
    ladder = [float(r) for r in r_ladder]
    if len(ladder) < 3:
        raise ValueError("the radius ladder needs at least 3 rungs")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("the radius ladder must be strictly increasing")
    counts = [count_sector(spec, r, theta, vartheta) for r in ladder]
    return DensityEstimate(float(theta), float(vartheta), tuple(ladder),
                           tuple(c.count for c in counts), tuple(c.density for c in counts))


def inverse_square_partial_sum(spec: PointSetSpec, r: float) -> complex:
    """Sum of lambda^-2 over |lambda| < r, summed exactly (``math.fsum``) per component."""
    x, y, _, _ = _sorted_arrays(spec, r)
    if np.any((x == 0) & (y == 0)):
        raise ValueError("point set contains the origin")
    # lambda^-2 = conj(lambda)^2 / |lambda|^4
    m2 = x * x + y * y
    re = (x * x - y * y) / (m2 * m2)
    im = -2.0 * x * y / (m2 * m2)
    return complex(math.fsum(re), math.fsum(im))
