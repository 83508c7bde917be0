"""Accretivity of aV + bV^2 and its numerical certification.

For real a, b and every f,

    Re <(aV + bV^2) f, f> = (2a + b) ||Re V f||^2 - b ||Im V f||^2,

so aV + bV^2 is accretive exactly when b <= 0 and 2a + b >= 0.  The same
identity holds verbatim for the grid matrix ``V_h`` of
:func:`~volterra_spectra.discretizer.volterra_matrix`, whose symmetric part
``R`` satisfies ``R = 2 R^2``; discrete quantities below use the grid inner
product ``<u, v>_h = h * sum(u * v)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .constants import ACCRETIVE_SLACK
from .discretizer import GridSpec, assemble, volterra_matrix
from .errors import NumericalBreakdown
from .kernels import KernelSpec, Part


@dataclass(frozen=True)
class QuadCoeffs:
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError("coefficients must be finite")


class WitnessKind(enum.Enum):
    X_MINUS_HALF = "XMinusHalf"
    SPIKE = "Spike"


@dataclass(frozen=True)
class Witness:
    kind: WitnessKind
    k: Optional[int] = None
    value: Optional[float] = None

    @property
    def tag(self) -> str:
        return self.kind.value if self.k is None else f"{self.kind.value}({self.k})"


@dataclass(frozen=True)
class AccretivityVerdict:
    coeffs: QuadCoeffs
    predicate: bool
    min_eig_certificate: Optional[float] = None
    witness: Optional[Witness] = None

    @property
    def certificate_agrees(self) -> bool:
        if self.min_eig_certificate is None:
            return True
        if self.predicate:
            return self.min_eig_certificate >= -ACCRETIVE_SLACK
        return self.min_eig_certificate < -ACCRETIVE_SLACK


def is_accretive_quadratic(q: QuadCoeffs) -> bool:
    return q.b <= 0 and 2 * q.a + q.b >= 0


def is_dissipative_quadratic(q: QuadCoeffs) -> bool:
    return is_accretive_quadratic(QuadCoeffs(-q.a, -q.b))


def boundary_distance(q: QuadCoeffs) -> float:
    """Euclidean distance in the (a, b) plane to the boundary of the accretive
    cone, whose edges are the rays through (1, 0) and (1, -2)."""
    p = np.array([q.a, q.b])
    best = math.inf
    for ray in (np.array([1.0, 0.0]), np.array([1.0, -2.0]) / math.sqrt(5.0)):
        s = max(float(p @ ray), 0.0)
        best = min(best, float(np.linalg.norm(p - s * ray)))
    return best


@lru_cache(maxsize=4)
def _parts(m: int):
    grid = GridSpec(m)
    re = assemble(KernelSpec(Part.REAL, 1), grid).entries
    s = assemble(KernelSpec(Part.IMAG, 1), grid).entries
    vh = volterra_matrix(grid)
    for arr in (re, s, vh):
        arr.setflags(write=False)
    return grid, re, s, vh


def real_part_matrix(q: QuadCoeffs, m: int) -> np.ndarray:
    _, _, _, vh = _parts(m)
    t = q.a * vh + q.b * (vh @ vh)
    return 0.5 * (t + t.T)


def rayleigh_value(q: QuadCoeffs, f) -> float:
    """``<Re(a V_h + b V_h^2) f, f>_h``."""
    f = np.asarray(f, dtype=float)
    return float(f @ real_part_matrix(q, len(f)) @ f) / len(f)


def rayleigh_decomposition(q: QuadCoeffs, f) -> tuple:
    """``((2a + b) ||Re V_h f||^2, -b ||Im V_h f||^2)`` in the grid norm.

    The two terms add up to :func:`rayleigh_value`.
    """
    f = np.asarray(f, dtype=float)
    if not np.any(f):
        raise ValueError("f must be non-zero")
    _, re, s, _ = _parts(len(f))
    h = 1.0 / len(f)
    re_sq = h * float(np.sum((re @ f) ** 2))
    im_sq = h * float(np.sum((s @ f) ** 2))
    return (2 * q.a + q.b) * re_sq, -q.b * im_sq


def x_minus_half(m: int) -> np.ndarray:
    return GridSpec(m).nodes - 0.5


def spike(m: int, k: int) -> np.ndarray:
    """``k`` on ``[0, 1/k]`` and on ``[1 - 1/k, 1]``, zero elsewhere."""
    x = GridSpec(m).nodes
    return np.where((x < 1.0 / k) | (x > 1.0 - 1.0 / k), float(k), 0.0)


def _witness(q: QuadCoeffs, m: int) -> Witness:
    if q.b > 0:
        return Witness(WitnessKind.X_MINUS_HALF, None, rayleigh_value(q, x_minus_half(m)))
    k, value = 2, math.inf
    while k <= m // 2:
        value = rayleigh_value(q, spike(m, k))
        if value < 0:
            break
        k *= 2
    return Witness(WitnessKind.SPIKE, min(k, m // 2), value)


def certify_numeric(q: QuadCoeffs, m: int = 500) -> AccretivityVerdict:
    """Criterion verdict plus the smallest eigenvalue of ``Re(a V_h + b V_h^2)``."""
    if m < 100:
        raise ValueError("certification needs m >= 100")
    predicate = is_accretive_quadratic(q)
    min_eig = float(np.linalg.eigvalsh(real_part_matrix(q, m))[0])
    witness = None if predicate else _witness(q, m)
    return AccretivityVerdict(q, predicate, min_eig, witness)


def resolvent_norm_check(q: QuadCoeffs, m: int = 500) -> float:
    """``||(I + a V_h + b V_h^2)^-1||``; at most 1 whenever the sum is accretive."""
    _, _, _, vh = _parts(m)
    mat = np.eye(m) + q.a * vh + q.b * (vh @ vh)
    sigma = np.linalg.svd(mat, compute_uv=False)
    if sigma[-1] <= m * np.finfo(float).eps * sigma[0]:
        raise NumericalBreakdown(f"I + aV + bV^2 is numerically singular for {q}")
    return float(1.0 / sigma[-1])
