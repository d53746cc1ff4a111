"""Surface-induced shifts of the electron spin magnetic moment near planar
perfect mirrors, dielectrics and plasmas."""

__version__ = "0.1.0"

from .models import (Custom, DispersiveDielectric, ImaginaryFrequencyPoint, Nondispersive,
                     PerfectReflector, Plasma, Polarization, SurfacePlasmonPoint,
                     UnsupportedModelError)
from .quadrature import QuadratureConfig, QuadResult
from .shifts import Geometry, Method, Orientation, ScaledShift

__all__ = [
    "Custom", "DispersiveDielectric", "Geometry", "ImaginaryFrequencyPoint", "Method",
    "Nondispersive", "Orientation", "PerfectReflector", "Plasma", "Polarization",
    "QuadratureConfig", "QuadResult", "ScaledShift", "SurfacePlasmonPoint",
    "UnsupportedModelError", "__version__",
]
