"""Closed-form catalogs of time-domain functions and entire functions.

Entire functions are evaluated through a complex logarithm (``log``)
because the interesting members grow like exp(c |z|^2); ``__call__``
exponentiates and raises :class:`RangeError` on overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gabor_core import G_AMP, gauss_inner_product, tf_shift_eval
from .phase_space import PhasePoint
from .special_functions import (LOG_MAX, RangeError, eval_s, log_mittag_leffler_half,
                                log_s, mittag_leffler_half, s_zero_distance, s_zeros)

# variance of the weight exp(-2 pi t^2) after normalisation
_SIGMA2 = 1.0 / (4.0 * math.pi)


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


# ---------------------------------------------------------------- time domain

class TimeFunction:
    """f in L2(R), evaluable at complex t.

    ``center`` is the point x + iy around which f is concentrated in phase
    space; the Bargmann quadrature contour passes through (center + z)/2.
    """

    center: complex = 0j

    def __call__(self, t):
        raise NotImplementedError

    def norm(self) -> float:
        raise NotImplementedError

    def shift_inner(self, x: float, y: float) -> complex:
        """<f, rho_{x,y} g>."""
        raise NotImplementedError

    def __add__(self, other: "TimeFunction") -> "Combination":
        return Combination(((1.0, self), (1.0, other)))

    def __rmul__(self, c: complex) -> "Combination":
        return Combination(((complex(c), self),))


@dataclass(frozen=True)
class ShiftedGaussian(TimeFunction):
    x: float = 0.0
    y: float = 0.0

    @property
    def center(self) -> complex:
        return complex(self.x, self.y)

    def __call__(self, t):
        return tf_shift_eval(self.x, self.y, t)

    def norm(self) -> float:
        return 1.0

    def shift_inner(self, x: float, y: float) -> complex:
        return gauss_inner_product(PhasePoint(self.x, self.y), PhasePoint(x, y))

    def describe(self) -> str:
        return f"shifted:{self.x!r}:{self.y!r}"


class Gaussian(ShiftedGaussian):
    """The window g itself."""

    def __init__(self):
        super().__init__(0.0, 0.0)

    def __repr__(self):
        return "Gaussian()"

    def describe(self) -> str:
        return "gaussian"


@dataclass(frozen=True)
class MonomialGaussian(TimeFunction):
    """scale * t^k g(t), 0 <= k <= 8."""

    k: int
    scale: float = 1.0

    def __post_init__(self):
        if not (0 <= self.k <= 8):
            raise ValueError("MonomialGaussian degree must be in 0..8")

    def __call__(self, t):
        t = np.asarray(t)
        return self.scale * t ** self.k * G_AMP * np.exp(-np.pi * t * t)

    def norm(self) -> float:
        # ||t^k g||^2 = E[S^{2k}] for S ~ N(0, 1/(4 pi))
        return abs(self.scale) * math.sqrt(_SIGMA2 ** self.k * _double_factorial(2 * self.k - 1))

    def normalized(self) -> "MonomialGaussian":
        return MonomialGaussian(self.k, self.scale / self.norm())

    def bargmann_polynomial(self, z):
        """Closed form of the transform: E[(z/2 + S)^k], S ~ N(0, 1/(4 pi))."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for j in range(0, self.k + 1, 2):
            out = out + math.comb(self.k, j) * (z / 2) ** (self.k - j) * _SIGMA2 ** (j // 2) * _double_factorial(j - 1)
        return self.scale * out

    def shift_inner(self, x: float, y: float) -> complex:
        # <f, rho_{x,y} g> = e^{-i pi x y} e^{-pi (x^2+y^2)/2} Bf(x - iy)
        z = complex(x, -y)
        pref = np.exp(-1j * np.pi * x * y - 0.5 * np.pi * (x * x + y * y))
        return complex(pref * self.bargmann_polynomial(z))

    def describe(self) -> str:
        return f"monomial:{self.k}" + ("" if self.scale == 1.0 else f"*{self.scale!r}")


@dataclass(frozen=True)
class Combination(TimeFunction):
    terms: tuple[tuple[complex, TimeFunction], ...]

    @property
    def center(self) -> complex:
        return complex(np.mean([f.center for _, f in self.terms]))

    def __call__(self, t):
        return sum(c * f(t) for c, f in self.terms)

    def shift_inner(self, x: float, y: float) -> complex:
        return sum(c * f.shift_inner(x, y) for c, f in self.terms)

    def norm(self) -> float:
        raise NotImplementedError("norm of a combination needs the cross inner products")

    def describe(self) -> str:
        return " + ".join(f"({c})*{f.describe()}" for c, f in self.terms)


# ---------------------------------------------------------------- entire functions

class EntireFunction:
    def log(self, z) -> np.ndarray:
        """Complex log of F(z); the real part is log|F(z)|."""
        raise NotImplementedError

    def log_abs(self, z) -> np.ndarray:
        return np.real(self.log(z))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        lg = np.asarray(self.log(z))
        if np.any(lg.real > LOG_MAX):
            raise RangeError(f"|{self.describe()}| overflows a double; use log()")
        with np.errstate(invalid="ignore"):
            out = np.where(np.isneginf(lg.real), 0j, np.exp(lg))
        return complex(out) if out.ndim == 0 else out

    def zeros(self, radius: float) -> list[complex]:
        """Zeros in |z| < radius, repeated by multiplicity."""
        raise NotImplementedError(f"zero list of {self.describe()} is not known in closed form")

    def zero_distance(self, z) -> np.ndarray:
        """Distance from z to the nearest zero (inf if there are none)."""
        z = np.asarray(z, dtype=complex)
        try:
            zs = np.array(self.zeros(float(np.max(np.abs(z)) + 2.0)) if z.size else [], dtype=complex)
        except NotImplementedError:
            return np.full(z.shape, np.inf)
        if zs.size == 0:
            return np.full(z.shape, np.inf)
        flat = z.ravel()
        best = np.full(flat.shape, np.inf)
        for chunk in np.array_split(zs, max(1, zs.size // 256)):
            best = np.minimum(best, np.min(np.abs(flat[:, None] - chunk[None, :]), axis=1))
        return best.reshape(z.shape)

    def describe(self) -> str:
        raise NotImplementedError

    def __mul__(self, other: "EntireFunction") -> "Product":
        return Product((self, other))


@dataclass(frozen=True)
class One(EntireFunction):
    def log(self, z):
        return np.zeros_like(np.asarray(z, dtype=complex))

    def zeros(self, radius):
        return []

    def describe(self):
        return "one"


@dataclass(frozen=True)
class Monomial(EntireFunction):
    n: int

    def __post_init__(self):
        if not (0 <= self.n <= 16):
            raise ValueError("Monomial degree must be in 0..16")

    def log(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.n * np.log(z) if self.n else np.zeros_like(z)

    def __call__(self, z):
        out = np.asarray(z, dtype=complex) ** self.n
        return complex(out) if out.ndim == 0 else out

    def zeros(self, radius):
        return [0j] * self.n if radius > 0 else []

    def describe(self):
        return f"z^{self.n}"


@dataclass(frozen=True)
class ExpQuadratic(EntireFunction):
    c: complex

    def __post_init__(self):
        if abs(self.c) > math.pi:
            raise ValueError("ExpQuadratic needs |c| <= pi")

    def log(self, z):
        z = np.asarray(z, dtype=complex)
        return self.c * z * z

    def zeros(self, radius):
        return []

    def describe(self):
        return f"expq:{complex(self.c)!r}"


@dataclass(frozen=True)
class SFunction(EntireFunction):
    """s(z) = (z^2 - 1) z^-2 sin(pi z^2 / 2)."""

    def log(self, z):
        return log_s(z)

    def __call__(self, z):
        return eval_s(z)

    def zeros(self, radius):
        return s_zeros(radius)

    def zero_distance(self, z):
        return s_zero_distance(z)

    def describe(self):
        return "s"


@dataclass(frozen=True)
class MittagLefflerHalf(EntireFunction):
    """E_{1/2}(scale * z)."""

    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def log(self, z):
        return log_mittag_leffler_half(self.scale * np.asarray(z, dtype=complex))

    def __call__(self, z):
        return mittag_leffler_half(self.scale * np.asarray(z, dtype=complex))

    def describe(self):
        return f"mlf:{self.scale!r}"


_STENCIL_RADIUS = 2e-3
_NEAR_ROOT = 1e-3


@dataclass(frozen=True)
class QuotientByLinear(EntireFunction):
    """base(z) / (z - root); base must vanish at root."""

    base: EntireFunction
    root: complex

    def __post_init__(self):
        lg = float(np.real(self.base.log(complex(self.root))))
        if lg > math.log(1e-8):
            raise ValueError(f"{self.base.describe()} does not vanish at {self.root} "
                             f"(|value| = {math.exp(lg):.3g})")

    def _log_direct(self, z):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.base.log(z) - np.log(z - self.root)

    def log(self, z):
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        out = self._log_direct(z)
        near = np.abs(z - self.root) < _NEAR_ROOT
        if near.any():
            # removable singularity: mean over a 4-point circle (error O(rho^4))
            zn = z[near]
            ring = zn[:, None] + _STENCIL_RADIUS * np.array([1, 1j, -1, -1j])[None, :]
            vals = np.exp(self._log_direct(ring))
            out[near] = np.log(vals.mean(axis=1))
        return out[0] if scalar else out

    def zeros(self, radius):
        zs = list(self.base.zeros(radius))
        k = int(np.argmin([abs(w - self.root) for w in zs]))
        del zs[k]
        return zs

    def describe(self):
        return f"({self.base.describe()})/{complex(self.root)!r}"


@dataclass(frozen=True)
class Product(EntireFunction):
    factors: tuple[EntireFunction, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("empty product")

    def log(self, z):
        return sum(f.log(z) for f in self.factors)

    def zeros(self, radius):
        return [w for f in self.factors for w in f.zeros(radius)]

    def zero_distance(self, z):
        return np.minimum.reduce([np.asarray(f.zero_distance(z), dtype=float) for f in self.factors])

    def describe(self):
        return "*".join(f.describe() for f in self.factors)


def linear_combination(coeffs: Sequence[complex], funcs: Sequence[TimeFunction]) -> Combination:
    return Combination(tuple((complex(c), f) for c, f in zip(coeffs, funcs)))
