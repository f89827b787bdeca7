"""The entire functions s(z) = (z^2 - 1) z^-2 sin(pi z^2 / 2) and E_{1/2}.

Both grow like exp(c |z|^2), so every evaluator has a complex-log form
(``log_s``, ``log_mittag_leffler_half``) whose real part is log|F|.  The
plain values are only materialised while they fit in a double.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import rgamma, wofz


class RangeError(ArithmeticError):
    """Argument outside the range where a value can be represented or is validated."""


LOG_MAX = 700.0
S_ZERO = -0.5 * math.pi  # s(0), removable singularity
MLF_SWITCH_RADIUS = 3.0
MLF_MAX_RADIUS = 30.0
DEFAULT_EPSILON = 0.3


def _log_sin(w: np.ndarray) -> np.ndarray:
    """Complex log of sin(w), safe for large |Im w|."""
    out = np.empty_like(w)
    small = np.abs(w.imag) <= 30.0
    up = ~small & (w.imag > 0)
    down = ~small & (w.imag < 0)
    out[small] = np.log(np.sin(w[small]))
    # sin w = (i/2) e^{-iw} (1 - e^{2iw}),   Im w > 0
    wu = w[up]
    out[up] = -1j * wu + np.log(0.5j) + np.log1p(-np.exp(2j * wu))
    # sin w = (-i/2) e^{iw} (1 - e^{-2iw}),  Im w < 0
    wd = w[down]
    out[down] = 1j * wd + np.log(-0.5j) + np.log1p(-np.exp(-2j * wd))
    return out


def _s_small(z: np.ndarray) -> np.ndarray:
    # (z^2 - 1) (pi/2) sin(w)/w with w = pi z^2/2, series in w
    w = 0.5 * np.pi * z * z
    w2 = w * w
    sinc = 1.0 - w2 / 6.0 + w2 * w2 / 120.0 - w2 * w2 * w2 / 5040.0
    return (z * z - 1.0) * (0.5 * np.pi) * sinc


def log_s(z):
    """Complex log of s(z); the real part is log|s(z)| (-inf at the zeros)."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        z2 = z * z
        out = np.log(z2 - 1.0) + _log_sin(0.5 * np.pi * z2) - np.log(z2)
        tiny = np.abs(z) < 1e-2
        out[tiny] = np.log(_s_small(z[tiny]))
    return out[0] if scalar else out


def log_abs_s(z):
    return np.real(log_s(z))


def eval_s(z):
    """s(z), with s(0) = -pi/2.  Raises RangeError if |s(z)| would overflow."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    z2 = z * z
    w = 0.5 * np.pi * z2
    direct = np.abs(w.imag) <= 300.0
    out = np.empty_like(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[direct] = (z2[direct] - 1.0) * np.sin(w[direct]) / z2[direct]
        tiny = np.abs(z) < 1e-2
        out[tiny] = _s_small(z[tiny])
        if not direct.all():
            lg = log_s(z[~direct])
            if np.any(lg.real > LOG_MAX):
                raise RangeError("|s(z)| overflows a double; use log_s")
            out[~direct] = np.exp(lg)
    return complex(out[0]) if scalar else out


def s_zeros(radius: float) -> list[complex]:
    """Zeros of s in |z| < radius (all simple): +-1, +-sqrt(2n), +-i sqrt(2n)."""
    n_max = max(math.ceil(radius * radius / 2.0) - 1, 0)
    while n_max >= 1 and 2 * n_max >= radius * radius:
        n_max -= 1
    zs = [1.0 + 0j, -1.0 + 0j] if radius > 1.0 else []
    for n in range(1, n_max + 1):
        q = math.sqrt(2.0 * n)
        zs += [complex(q, 0), complex(-q, 0), complex(0, q), complex(0, -q)]
    return zs


def _nearest_axis_zero(u: np.ndarray, with_one: bool) -> np.ndarray:
    """Distance from u >= 0 to the nearest of {sqrt(2n)} (and 1 if with_one)."""
    n0 = np.rint(u * u / 2.0)
    best = np.full(u.shape, np.inf)
    for dn in (-1, 0, 1):
        n = np.maximum(n0 + dn, 1.0)
        best = np.minimum(best, np.abs(u - np.sqrt(2.0 * n)))
    if with_one:
        best = np.minimum(best, np.abs(u - 1.0))
    return best


def s_zero_distance(z) -> np.ndarray:
    """Distance from z to the zero set of s."""
    z = np.asarray(z, dtype=complex)
    x, y = np.abs(z.real), np.abs(z.imag)
    on_real = np.hypot(_nearest_axis_zero(x, True), y)
    on_imag = np.hypot(_nearest_axis_zero(y, False), x)
    return np.minimum(on_real, on_imag)


# ---------------------------------------------------------------- E_{1/2}

def _neumaier(terms: np.ndarray) -> np.ndarray:
    """Compensated sum along axis 0 (TwoSum error-free transformation)."""
    s = np.zeros(terms.shape[1:], dtype=terms.dtype)
    c = np.zeros_like(s)
    for t in terms:
        for part in ("real", "imag"):
            a, b = getattr(s, part), getattr(t, part)
            tot = a + b
            err = np.where(np.abs(a) >= np.abs(b), (a - tot) + b, (b - tot) + a)
            if part == "real":
                c.real += err
                s.real = tot
            else:
                c.imag += err
                s.imag = tot
    return s + c


def mittag_leffler_half_series(z):
    """Power series sum_k z^k / Gamma(1 + k/2) with compensated summation.

    Accurate to ~1e-11 relative for |z| <= 3; beyond that cancellation on
    the left half-plane eats the precision.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    kmax = int(6.0 * zmax * zmax + 80)
    terms = np.empty((kmax + 1,) + z.shape, dtype=complex)
    terms[0] = 1.0
    terms[1] = z / math.gamma(1.5)
    z2 = z * z
    for k in range(kmax - 1):
        terms[k + 2] = terms[k] * z2 / (1.0 + 0.5 * k)
    return _neumaier(terms)


def log_mittag_leffler_half(z):
    """Complex log of E_{1/2}(z) for |z| <= 30.

    Uses E(z) = e^{z^2} erfc(-z) = w(-iz) with the Faddeeva function w; on
    Re z > 0 this is written as 2 e^{z^2} - w(iz) so the exponential part is
    explicit and the remainder is bounded.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(np.abs(z) > MLF_MAX_RADIUS):
        raise RangeError(f"E_1/2 is validated for |z| <= {MLF_MAX_RADIUS}")
    out = np.empty_like(z)
    near = np.abs(z) <= MLF_SWITCH_RADIUS
    right = ~near & (z.real > 0)
    dominant = right & ((z * z).real > 0)
    mid = right & ~dominant
    left = ~near & ~right
    with np.errstate(divide="ignore", invalid="ignore"):
        if near.any():
            out[near] = np.log(mittag_leffler_half_series(z[near]))
        zd = z[dominant]
        out[dominant] = zd * zd + math.log(2.0) + np.log1p(-0.5 * wofz(1j * zd) * np.exp(-zd * zd))
        zm = z[mid]
        out[mid] = np.log(2.0 * np.exp(zm * zm) - wofz(1j * zm))
        out[left] = np.log(wofz(-1j * z[left]))
    return out[0] if scalar else out


def mittag_leffler_half(z):
    """E_{1/2}(z) = sum_k z^k / Gamma(1 + k/2).

    Series for |z| <= 3, exponential-plus-remainder form beyond.  Raises
    RangeError outside |z| <= 30 or if the value overflows.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(np.abs(z) > MLF_MAX_RADIUS):
        raise RangeError(f"E_1/2 is validated for |z| <= {MLF_MAX_RADIUS}")
    out = np.empty_like(z)
    near = np.abs(z) <= MLF_SWITCH_RADIUS
    if near.any():
        out[near] = mittag_leffler_half_series(z[near])
    far = ~near
    if far.any():
        zf = z[far]
        if np.any((zf * zf).real > LOG_MAX):
            raise RangeError("E_1/2(z) overflows a double; use log_mittag_leffler_half")
        with np.errstate(over="ignore", invalid="ignore"):
            out[far] = np.where(zf.real > 0, 2.0 * np.exp(zf * zf) - wofz(1j * zf), wofz(-1j * zf))
    return complex(out[0]) if scalar else out


def mittag_leffler_half_remainder(z):
    """E_{1/2}(z) minus its exponential part 2 e^{z^2} (taken only on Re z > 0).

    The remainder is O(1/|z|) everywhere and is computed directly, so it
    stays accurate where E_{1/2} itself is astronomically large.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(np.abs(z) > MLF_MAX_RADIUS):
        raise RangeError(f"E_1/2 is validated for |z| <= {MLF_MAX_RADIUS}")
    out = np.where(z.real > 0, -wofz(1j * z), wofz(-1j * z))
    return complex(out[0]) if scalar else out


def mittag_leffler_half_asymptotic(z, terms: int = 8):
    """Large-|z| expansion: 2 e^{z^2} on |arg z| <= pi/4, minus sum z^-k / Gamma(1 - k/2)."""
    z = np.asarray(z, dtype=complex)
    tail = sum(z ** (-k) * rgamma(1.0 - 0.5 * k) for k in range(1, 2 * terms, 2))
    sector = np.abs(np.angle(z)) <= 0.25 * np.pi
    with np.errstate(over="ignore"):
        return np.where(sector, 2.0 * np.exp(z * z), 0.0) - tail


# ---------------------------------------------------------------- growth scan

@dataclass
class GrowthRatioReport:
    r: np.ndarray
    theta: np.ndarray
    log_abs_s: np.ndarray
    model_exponent: np.ndarray
    excluded_mask: np.ndarray
    epsilon: float

    @property
    def ratios(self) -> np.ndarray:
        keep = ~self.excluded_mask
        return np.exp(self.log_abs_s[keep] - self.model_exponent[keep])

    @property
    def min_ratio(self) -> float:
        return float(self.ratios.min())

    @property
    def max_ratio(self) -> float:
        return float(self.ratios.max())

    @property
    def excluded(self) -> int:
        return int(self.excluded_mask.sum())

    def rows(self) -> list[dict]:
        ratio = np.exp(self.log_abs_s - self.model_exponent)
        return [{"r": r, "theta": t, "log_abs_s": l, "model_exponent": m,
                 "ratio": q, "excluded_flag": int(e)}
                for r, t, l, m, q, e in zip(self.r, self.theta, self.log_abs_s,
                                            self.model_exponent, ratio, self.excluded_mask)]


def growth_ratio_scan(r_list: Sequence[float], theta_count: int = 256,
                      epsilon: float = DEFAULT_EPSILON, thetas: Sequence[float] | None = None
                      ) -> GrowthRatioReport:
    """|s(re^{it})| / exp((pi/2) r^2 |sin 2t|) on a polar grid.

    Grid points within epsilon * r^{-1/2} of a zero of s are excluded.
    ``thetas`` overrides the uniform angular grid (e.g. a single ray).
    """
    r_arr = np.asarray(r_list, dtype=float)
    if r_arr.size == 0 or np.any(r_arr < 2.0) or np.any(r_arr > 30.0):
        raise ValueError("radii must lie in [2, 30]")
    if thetas is None:
        if theta_count < 64:
            raise ValueError("theta_count must be at least 64")
        th = 2.0 * np.pi * np.arange(theta_count) / theta_count
    else:
        th = np.asarray(thetas, dtype=float)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    R, T = np.meshgrid(r_arr, th, indexing="ij")
    R, T = R.ravel(), T.ravel()
    z = R * np.exp(1j * T)
    excl = s_zero_distance(z) <= epsilon / np.sqrt(R)
    if excl.all():
        raise ValueError("every grid point falls inside a zero-exclusion disk")
    return GrowthRatioReport(R, T, log_abs_s(z), 0.5 * np.pi * R * R * np.abs(np.sin(2 * T)),
                             excl, float(epsilon))
