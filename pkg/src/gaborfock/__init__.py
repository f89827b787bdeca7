"""Numerics for Gaussian Gabor systems localized on the phase-space axes."""
from .catalog import (EntireFunction, ExpQuadratic, Gaussian, MittagLefflerHalf, Monomial,
                      MonomialGaussian, One, Product, QuotientByLinear, SFunction,
                      ShiftedGaussian)
from .phase_space import PhasePoint, PointSetSpec

__version__ = "0.1.0"

__all__ = ["EntireFunction", "ExpQuadratic", "Gaussian", "MittagLefflerHalf", "Monomial",
           "MonomialGaussian", "One", "Product", "QuotientByLinear", "SFunction",
           "ShiftedGaussian", "PhasePoint", "PointSetSpec"]
