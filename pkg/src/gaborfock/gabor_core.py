"""Time-frequency shifts of the normalized Gaussian and finite-section diagnostics.

The window is g(t) = 2^{1/4} exp(-pi t^2), of unit L2 norm, and
rho_{x,y} g(t) = exp(2 pi i y t) g(t - x).  Inner products are linear in
the first slot: <f, h> = int f(t) conj(h(t)) dt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import solve_triangular

from .phase_space import PhasePoint, PointSetSpec, generate_points

G_AMP = 2.0 ** 0.25
MAX_SECTION = 400
DEFAULT_REGULARIZATION = 1e-12  # relative to sigma_max
SINGULAR_RCOND = 1e-13


class SingularSectionError(ArithmeticError):
    pass


def gaussian_window(t):
    t = np.asarray(t)
    return G_AMP * np.exp(-np.pi * t * t)


def tf_shift_eval(x: float, y: float, t):
    """rho_{x,y} g evaluated at t (real or complex, scalar or array)."""
    t = np.asarray(t)
    out = np.exp(2j * np.pi * y * t) * G_AMP * np.exp(-np.pi * (t - x) ** 2)
    return complex(out) if out.ndim == 0 else out


def gauss_inner_product(lam: PhasePoint, mu: PhasePoint) -> complex:
    """<rho_lam g, rho_mu g> in closed form.

    Completing the square gives
    exp(i pi (eta_l - eta_m)(xi_l + xi_m)) * exp(-pi (dx^2 + dy^2) / 2).
    """
    dx = lam.xi - mu.xi
    dy = lam.eta - mu.eta
    phase = math.pi * dy * (lam.xi + mu.xi)
    return complex(math.cos(phase), math.sin(phase)) * math.exp(-0.5 * math.pi * (dx * dx + dy * dy))


def _gram_matrix(points: Sequence[PhasePoint]) -> np.ndarray:
    x = np.array([p.xi for p in points])
    y = np.array([p.eta for p in points])
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    phase = np.pi * dy * (x[:, None] + x[None, :])
    return np.exp(1j * phase - 0.5 * np.pi * (dx * dx + dy * dy))


@dataclass
class GramSection:
    points: list[PhasePoint]
    entries: np.ndarray
    eigenvalues: np.ndarray

    @property
    def sigma_min(self) -> float:
        return max(float(self.eigenvalues[0]), 0.0)

    @property
    def sigma_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def condition(self) -> float:
        return self.sigma_max / self.sigma_min if self.sigma_min > 0 else math.inf

    def summary(self) -> dict:
        return {"n_points": len(self.points),
                "points": [[p.xi, p.eta] for p in self.points],
                "sigma_min": self.sigma_min, "sigma_max": self.sigma_max,
                "min_eigenvalue_raw": float(self.eigenvalues[0]),
                "condition": self.condition}


def gram_from_points(points: Sequence[PhasePoint]) -> GramSection:
    points = list(points)
    if not points:
        raise ValueError("empty point set")
    if len(points) > MAX_SECTION:
        raise ValueError(f"{len(points)} points exceeds the dense-section cap of {MAX_SECTION}")
    G = _gram_matrix(points)
    return GramSection(points, G, np.linalg.eigvalsh(G))


def gram_section(spec: PointSetSpec, radius: float) -> GramSection:
    """Gram matrix of the system truncated to |lambda| < radius."""
    return gram_from_points(generate_points(spec, radius))


@dataclass
class BiorthogonalReport:
    points: list[PhasePoint]
    residual_matrix_deviation: float
    regularization: float

    def summary(self) -> dict:
        return {"n_points": len(self.points),
                "points": [[p.xi, p.eta] for p in self.points],
                "residual_matrix_deviation": self.residual_matrix_deviation,
                "regularization": self.regularization}


def biorthogonal_residual(spec: PointSetSpec, radius: float,
                          regularization: float = 0.0) -> BiorthogonalReport:
    """Coefficients C of the dual family in the span of the section, and max|C G - I|.

    ``regularization`` is the Tikhonov parameter relative to sigma_max; 0
    means an exact solve, which is refused on numerically singular sections.
    """
    if regularization < 0:
        raise ValueError("regularization must be nonnegative")
    sec = gram_section(spec, radius)
    G = sec.entries
    n = G.shape[0]
    if regularization == 0.0:
        if sec.sigma_min <= SINGULAR_RCOND * sec.sigma_max:
            raise SingularSectionError(
                f"Gram section with {n} points is numerically singular "
                f"(condition {sec.condition:.3g}); pass a positive regularization")
        C = np.linalg.solve(G, np.eye(n))
    else:
        # argmin ||C G - I||^2 + delta^2 ||C||^2 for Hermitian G
        delta = regularization * sec.sigma_max
        lam, U = np.linalg.eigh(G)
        C = (U * (lam / (lam * lam + delta * delta))) @ U.conj().T
    dev = float(np.max(np.abs(C @ G - np.eye(n))))
    return BiorthogonalReport(sec.points, dev, float(regularization))


@dataclass
class CompletenessResidual:
    radii: list[float]
    counts: list[int]
    residuals: list[float]
    regularization: float

    def rows(self) -> list[dict]:
        return [{"radius": r, "n_points": n, "residual": e, "regularization": self.regularization}
                for r, n, e in zip(self.radii, self.counts, self.residuals)]


def completeness_residual(target, spec: PointSetSpec, radius_ladder: Sequence[float],
                          regularization: float | None = None) -> CompletenessResidual:
    """L2 distance from ``target`` to the span of each truncated system.

    ``target`` needs ``norm()`` and ``shift_inner(x, y)`` = <target, rho_{x,y} g>
    (see :mod:`gaborfock.catalog`).  Sections are nested because points are
    ordered by modulus, so one Cholesky factor serves the whole ladder and
    the residuals are nonincreasing by construction.  With ``regularization``
    None an exact projection is used unless the largest section is
    numerically singular, in which case the ridge parameter falls back to
    1e-12 * sigma_max.
    """
    ladder = [float(r) for r in radius_ladder]
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("radius ladder must be increasing")
    f_norm = float(target.norm())
    if abs(f_norm - 1.0) > 1e-9:
        raise ValueError(f"target must have unit norm, got {f_norm}")
    sec = gram_section(spec, ladder[-1])
    counts = [len(generate_points(spec, r)) for r in ladder]
    beta = np.array([target.shift_inner(p.xi, p.eta) for p in sec.points])
    # objective ||f - sum c_j phi_j||^2 + delta ||c||^2 has Hessian conj(G)
    A = sec.entries.conj()
    n = A.shape[0]
    if regularization is None:
        singular = sec.sigma_min <= 1e3 * SINGULAR_RCOND * sec.sigma_max
        delta = DEFAULT_REGULARIZATION if singular else 0.0
    else:
        delta = float(regularization)
    try:
        L = np.linalg.cholesky(A + delta * sec.sigma_max * np.eye(n))
    except np.linalg.LinAlgError:
        if regularization is not None:
            raise SingularSectionError("Gram section not positive definite at the given regularization")
        delta = DEFAULT_REGULARIZATION
        L = np.linalg.cholesky(A + delta * sec.sigma_max * np.eye(n))
    # forward substitution: y[:k] only depends on the first k points
    y = solve_triangular(L, beta, lower=True)
    explained = np.concatenate([[0.0], np.cumsum(np.abs(y) ** 2)])
    res2 = np.maximum(1.0 - explained[counts], 0.0)
    return CompletenessResidual(ladder, counts, [float(v) for v in np.sqrt(res2)], delta)
