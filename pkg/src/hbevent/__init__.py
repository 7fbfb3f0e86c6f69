"""Event-driven high-order harmonic balance for piecewise-polynomial systems."""

from .fourier import FourierSeries, RootSet
from .jets import Jet

__version__ = "0.1.0"

__all__ = ["FourierSeries", "RootSet", "Jet", "__version__"]
