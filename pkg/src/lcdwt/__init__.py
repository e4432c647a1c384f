"""Linear canonical Dunkl transform, its translation and convolution, and the
associated continuous wavelet transform, on symmetric quadrature grids."""
from .errors import (AdmissibilityError, DomainError, LCDWTError, NumericalError,
                     ParameterError, RangeError)
from .quadrature import (LogScaleGrid, SampledSignal, SymmetricGrid, WeightedMeasure,
                         build_grid, build_log_grid, inner_product, norm_p, weighted_measure)
from .special import DUNKL, IDENTITY, SL2Matrix

__all__ = [
    "AdmissibilityError", "DomainError", "LCDWTError", "NumericalError", "ParameterError",
    "RangeError", "LogScaleGrid", "SampledSignal", "SymmetricGrid", "WeightedMeasure",
    "build_grid", "build_log_grid", "inner_product", "norm_p", "weighted_measure",
    "DUNKL", "IDENTITY", "SL2Matrix",
]
