"""Independent reference computations used by the tests.

Nothing here imports the code under test beyond plain data types.
"""
from fractions import Fraction
import math

import mpmath as mp
import numpy as np
from scipy import integrate


def axes_points_brute(radius):
    """Enumerate the axes set by looping shells with exact arithmetic."""
    r2 = Fraction(radius) ** 2
    pts = []
    if 1 < r2:
        pts += [(1.0, 0.0), (-1.0, 0.0)]
    n = 1
    while 2 * n < r2:
        q = math.sqrt(2 * n)
        pts += [(q, 0.0), (-q, 0.0), (0.0, q), (0.0, -q)]
        n += 1
    return pts


def lattice_points_brute(a, b, radius, drop_origin=True):
    r2 = Fraction(radius) ** 2
    m = int(radius / min(a, b)) + 2
    pts = []
    for i in range(-m, m + 1):
        for j in range(-m, m + 1):
            if drop_origin and i == 0 and j == 0:
                continue
            if (i * Fraction(a)) ** 2 + (j * Fraction(b)) ** 2 < r2:
                pts.append((i * a, j * b))
    return pts


def tf_shift(x, y, t):
    return np.exp(2j * np.pi * y * t) * 2 ** 0.25 * np.exp(-np.pi * (t - x) ** 2)


def quad_inner(f, h, lo, hi):
    """int_lo^hi f conj(h) dt with adaptive quadrature on real and imaginary parts."""
    re = integrate.quad(lambda t: (f(t) * np.conj(h(t))).real, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-12)[0]
    im = integrate.quad(lambda t: (f(t) * np.conj(h(t))).imag, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-12)[0]
    return complex(re, im)


def shift_inner_quad(lam, mu):
    """<rho_lam g, rho_mu g> by quadrature; window chosen so exp(-pi T^2) is negligible."""
    T = 4.0 + max(abs(lam[0]), abs(mu[0]))
    return quad_inner(lambda t: tf_shift(lam[0], lam[1], t), lambda t: tf_shift(mu[0], mu[1], t), -T, T)


def mlf_mp(z, dps=250):
    with mp.workdps(dps):
        z = mp.mpc(z)
        s = mp.mpf(0)
        k = 0
        while True:
            t = z ** k / mp.gamma(1 + mp.mpf(k) / 2)
            s += t
            k += 1
            if k > 20 and abs(t) < mp.mpf(10) ** (-60) * max(1, abs(s)):
                return complex(s)


def s_mp(z, dps=50):
    with mp.workdps(dps):
        z = mp.mpc(z)
        if z == 0:
            return complex(-mp.pi / 2)
        return complex((z ** 2 - 1) / z ** 2 * mp.sin(mp.pi * z ** 2 / 2))


def sampled_residual(target, points, T=10.0, n=8001):
    """Distance from target to span{rho_p g} by least squares on a fine time grid."""
    t = np.linspace(-T, T, n)
    w = math.sqrt(t[1] - t[0])
    A = np.stack([tf_shift(x, y, t) for x, y in points], axis=1) * w
    b = target(t) * w
    c, *_ = np.linalg.lstsq(A, b, rcond=1e-13)
    return float(np.linalg.norm(b - A @ c))


def mlf_remainder_mp(z, dps=250):
    """E_1/2(z) minus 2 e^{z^2} on Re z > 0, at high precision before rounding."""
    with mp.workdps(dps):
        zz = mp.mpc(z)
        s = mp.mpf(0)
        k = 0
        while True:
            t = zz ** k / mp.gamma(1 + mp.mpf(k) / 2)
            s += t
            k += 1
            if k > 20 and abs(t) < mp.mpf(10) ** (-80) * max(1, abs(s)):
                break
        if zz.real > 0:
            s -= 2 * mp.exp(zz * zz)
        return complex(s)
