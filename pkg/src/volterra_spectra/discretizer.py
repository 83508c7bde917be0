"""Midpoint-rule Nystrom matrices of the Volterra kernels and their spectra.

A grid of ``m`` equal cells on [0, 1] with midpoint nodes gives the matrix
``M[i, j] = h * k(x_i, x_j)``.  Acting on node values, ``M`` approximates the
integral operator, its spectral norm approximates the operator norm and its
Frobenius norm is the midpoint approximation of the kernel's L^2 norm (the
Hilbert-Schmidt norm).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constants import MAX_GRID
from .errors import CapacityExceeded, StructureMismatch
from .kernels import KernelSpec, Part, eval_kernel


class Structure(enum.Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    GENERAL = "general"


class Source(enum.Enum):
    PENCIL = "pencil"
    ANALYTIC = "analytic"
    DISCRETIZED = "discretized"


@dataclass(frozen=True)
class GridSpec:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"grid needs at least 2 cells, got {self.m}")
        if self.m > MAX_GRID:
            raise CapacityExceeded(f"grid size {self.m} exceeds cap {MAX_GRID}")

    @property
    def h(self) -> float:
        return 1.0 / self.m

    @property
    def nodes(self) -> np.ndarray:
        return (np.arange(self.m) + 0.5) / self.m


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    grid: GridSpec
    entries: np.ndarray
    structure: Structure
    spec: Optional[KernelSpec] = None

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def m(self) -> int:
        return self.grid.m


def sort_spectrum(values) -> np.ndarray:
    """Order by descending modulus; on equal modulus the positive value first."""
    v = np.asarray(values, dtype=float)
    order = np.lexsort((-v, -np.abs(v)))
    return v[order]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted by descending modulus, with their provenance.

    ``infinite_kernel`` marks operators for which 0 is an eigenvalue of
    infinite multiplicity; the zero is not listed among ``values``.
    """

    values: np.ndarray
    source: Source
    error_hint: Optional[np.ndarray] = None
    infinite_kernel: bool = False
    multiplicity: Optional[tuple] = None
    notes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "values", sort_spectrum(self.values))

    def __len__(self):
        return len(self.values)

    def top(self, k: int) -> np.ndarray:
        return self.values[:k]

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.values))) if len(self.values) else 0.0


_STRUCTURE_OF = {
    Part.REAL: Structure.SYMMETRIC,
    Part.IMAG: Structure.ANTISYMMETRIC,
    Part.FULL_V: Structure.GENERAL,
    Part.FULL_V_ADJOINT: Structure.GENERAL,
}


def assemble(spec: KernelSpec, grid: GridSpec) -> OperatorMatrix:
    x = grid.nodes
    entries = grid.h * eval_kernel(spec, x[:, None], x[None, :])
    return OperatorMatrix(grid, np.ascontiguousarray(entries), _STRUCTURE_OF[spec.part], spec)


def _require(M: OperatorMatrix, structure: Structure):
    if M.structure is not structure:
        raise StructureMismatch(f"expected a {structure.value} matrix, got {M.structure.value}")


def eigenvalues_symmetric(M: OperatorMatrix) -> Spectrum:
    _require(M, Structure.SYMMETRIC)
    return Spectrum(np.linalg.eigvalsh(M.entries), Source.DISCRETIZED)


def eigenvalues_antisymmetric(M: OperatorMatrix) -> Spectrum:
    """Eigenvalues of the Hermitian matrix ``-i M`` for antisymmetric ``M``.

    They are ``+-sigma`` for the singular values ``sigma`` of ``M``, which come
    in equal pairs; each pair is averaged and emitted once with both signs, so
    the returned multiset is exactly symmetric.
    """
    _require(M, Structure.ANTISYMMETRIC)
    sigma = np.linalg.svd(M.entries, compute_uv=False)
    half = M.m // 2
    pairs = 0.5 * (sigma[0:2 * half:2] + sigma[1:2 * half:2])
    values = np.concatenate([pairs, -pairs, np.zeros(M.m - 2 * half)])
    return Spectrum(values, Source.DISCRETIZED)


def spectrum(M: OperatorMatrix) -> Spectrum:
    if M.structure is Structure.SYMMETRIC:
        return eigenvalues_symmetric(M)
    if M.structure is Structure.ANTISYMMETRIC:
        return eigenvalues_antisymmetric(M)
    raise StructureMismatch("spectra are only defined here for self-adjoint parts")


def op_norm(M) -> float:
    """Operator norm: max |eigenvalue| for self-adjoint structures, else the
    largest singular value."""
    if isinstance(M, OperatorMatrix):
        if M.structure is Structure.SYMMETRIC:
            return float(np.max(np.abs(np.linalg.eigvalsh(M.entries))))
        if M.structure is Structure.ANTISYMMETRIC:
            return float(np.linalg.svd(M.entries, compute_uv=False)[0])
        M = M.entries
    return float(np.linalg.norm(M, 2))


def hs_norm(M) -> float:
    """Hilbert-Schmidt norm of the discretized integral operator.

    Equals ``h * sqrt(sum k(x_i, x_j)^2)``, the midpoint rule for the L^2 norm
    of the kernel, which is the Frobenius norm of the (already h-weighted)
    Nystrom matrix.  Accepts an OperatorMatrix or a bare array such as a
    matrix product.  The sum of squares is exactly rounded (``math.fsum``), so
    the result does not drift with m and is independent of BLAS.
    """
    entries = M.entries if isinstance(M, OperatorMatrix) else np.asarray(M)
    return math.sqrt(math.fsum(np.square(entries, dtype=float).ravel()))


def volterra_matrix(grid: GridSpec) -> np.ndarray:
    """Nystrom matrix of V itself assembled from its real and imaginary parts.

    Equals ``assemble(Re V) + assemble(Im V factor)``: strictly lower triangle
    ``h``, diagonal ``h/2`` (the jump of ``1_{t<x}`` averaged).  Its symmetric
    part is exactly the rank-one PSD matrix of Re V and its antisymmetric part
    that of Im V, so accretivity survives discretization exactly.
    """
    re = assemble(KernelSpec(Part.REAL, 1), grid).entries
    im = assemble(KernelSpec(Part.IMAG, 1), grid).entries
    return re + im
