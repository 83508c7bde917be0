"""Spectra, norms and numerical ranges of the real and imaginary parts of
powers of the Volterra operator on L^2[0, 1]."""

from .errors import (
    CapacityExceeded,
    InternalError,
    NumericalBreakdown,
    StructureMismatch,
    VolterraError,
)
from .kernels import KernelSpec, Part, apply_power_to_poly, eval_kernel
from .discretizer import (
    GridSpec,
    OperatorMatrix,
    Source,
    Spectrum,
    Structure,
    assemble,
    eigenvalues_antisymmetric,
    eigenvalues_symmetric,
    hs_norm,
    op_norm,
)

__all__ = [
    "CapacityExceeded",
    "InternalError",
    "NumericalBreakdown",
    "StructureMismatch",
    "VolterraError",
    "KernelSpec",
    "Part",
    "apply_power_to_poly",
    "eval_kernel",
    "GridSpec",
    "OperatorMatrix",
    "Source",
    "Spectrum",
    "Structure",
    "assemble",
    "eigenvalues_antisymmetric",
    "eigenvalues_symmetric",
    "hs_norm",
    "op_norm",
]

__version__ = "0.1.0"
