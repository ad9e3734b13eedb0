"""Numerical harmonic analysis on the hyperbolic plane.

Transform machinery (Harish-Chandra c-function, Helgason Fourier transform,
horocycle Radon transform and its inversion, the isometry to the horocycle
space) plus spectral propagation of dispersive equations and experiment
harnesses for time-global smoothing and gain-of-regularity estimates.
"""
from ._backend import backend_name
from .evolution import EvolutionState, Multiplier, TimeGrid
from .geometry import (RHO, BoundaryPoint, DiscPoint, FunctionOnX,
                       HorocycleCoord, MobiusMap, PolarGrid)
from .specialfn import CFunctionEvaluator, GammaRatio, RootData
from .transforms import (HorocycleFunction, SpectralTable, WeightedNormSpec,
                         dual_radon, helgason_forward, helgason_inverse,
                         isometry_T, lambda_op, radon_forward, radon_inverse,
                         spherical_function, weighted_norm)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "RHO",
    "RootData",
    "GammaRatio",
    "CFunctionEvaluator",
    "DiscPoint",
    "BoundaryPoint",
    "HorocycleCoord",
    "MobiusMap",
    "PolarGrid",
    "FunctionOnX",
    "SpectralTable",
    "HorocycleFunction",
    "WeightedNormSpec",
    "helgason_forward",
    "helgason_inverse",
    "spherical_function",
    "radon_forward",
    "dual_radon",
    "lambda_op",
    "radon_inverse",
    "isometry_T",
    "weighted_norm",
    "Multiplier",
    "TimeGrid",
    "EvolutionState",
]
