"""Numerical ranges: intervals for Re V^n and Im V^n, the boundary curve of
W(V), and Rayleigh-quotient probes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from shapely.geometry import Point, Polygon

from .analytic import imv_eigenvalues, rev2_eigenvalues
from .constants import CURVE_SAMPLES, DEFAULT_GRID, HULL_MIN_SAMPLES
from .discretizer import (GridSpec, Spectrum, assemble, eigenvalues_antisymmetric,
                          eigenvalues_symmetric, volterra_matrix)
from .errors import NumericalBreakdown
from .kernels import KernelSpec, Part, apply_part_to_poly, poly_inner
from .pencil import pencil_spectrum_for


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    source: str = ""

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class CurveSample:
    t: float
    upper: tuple
    lower: tuple


def best_spectrum(part: Part, n: int, m: int = DEFAULT_GRID, count: int = 8) -> Spectrum:
    """Spectrum from the most exact route available: pencil, then the
    analytic families, then a discretization on ``m`` cells."""
    try:
        spec = pencil_spectrum_for(part, n)
    except NumericalBreakdown:
        spec = None
    if spec is not None:
        return spec
    if (part, n) == (Part.IMAG, 1):
        return imv_eigenvalues(max(1, (count + 1) // 2)).as_spectrum()
    if (part, n) == (Part.REAL, 2):
        return rev2_eigenvalues(max(count, 2)).as_spectrum()
    mat = assemble(KernelSpec(part, n), GridSpec(m))
    if part is Part.REAL:
        return eigenvalues_symmetric(mat)
    return eigenvalues_antisymmetric(mat)


def range_interval(part: Part, n: int, m: int = DEFAULT_GRID) -> Interval:
    """W(Re V^n) or W(Im V^n): the closed convex hull of the spectrum.

    0 always belongs to the spectrum of these compact operators on an
    infinite-dimensional space, so it is included in the hull.
    """
    if part not in (Part.REAL, Part.IMAG):
        raise ValueError("range_interval applies to REAL or IMAG parts")
    spec = best_spectrum(part, n, m)
    src = spec.source.value
    if part is Part.IMAG:
        r = spec.norm
        return Interval(-r, r, src)
    return Interval(min(0.0, float(spec.values.min())), max(0.0, float(spec.values.max())), src)


def brown_curve_arrays(samples: int = CURVE_SAMPLES):
    """``(t, x, y)`` of the upper boundary of W(V), from t = 0 (limit point
    (1/2, 0)) to t = 2 pi; the lower boundary is the mirror image."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    t = 2.0 * math.pi * np.arange(1, samples + 1) / samples
    x = 2.0 * np.sin(t / 2) ** 2 / t ** 2
    y = (t - np.sin(t)) / t ** 2
    return (np.concatenate([[0.0], t]), np.concatenate([[0.5], x]),
            np.concatenate([[0.0], y]))


def brown_curve(samples: int = CURVE_SAMPLES) -> list:
    t, x, y = brown_curve_arrays(samples)
    return [CurveSample(float(a), (float(b), float(c)), (float(b), -float(c)))
            for a, b, c in zip(t, x, y)]


@lru_cache(maxsize=8)
def _brown_polygon(samples: int) -> Polygon:
    _, x, y = brown_curve_arrays(samples)
    upper = list(zip(x, y))
    lower = list(zip(x[::-1], -y[::-1]))
    return Polygon(upper + lower)


def hull_contains(point, tol: float = 0.0, samples: int = CURVE_SAMPLES) -> bool:
    """Whether ``point`` (complex or ``(x, y)``) lies in W(V) inflated by ``tol``."""
    if samples < HULL_MIN_SAMPLES:
        raise ValueError(f"curve resolution must be at least {HULL_MIN_SAMPLES}")
    if isinstance(point, complex):
        point = (point.real, point.imag)
    return _brown_polygon(samples).distance(Point(*point)) <= tol


def distance_to_boundary(point, samples: int = CURVE_SAMPLES) -> float:
    if isinstance(point, complex):
        point = (point.real, point.imag)
    return _brown_polygon(samples).exterior.distance(Point(*point))


def rayleigh_probe_re(n: int, exact: bool = False):
    """Normalized Rayleigh quotient of Re V^n at f(x) = 1 - 2x, computed by exact
    rational polynomial arithmetic.  Equals ``-3 (n-1) / ((n+3) (n+1)!)``."""
    if n < 1:
        raise ValueError("power must be >= 1")
    f = np.array([Fraction(1), Fraction(-2)], dtype=object)
    value = poly_inner(apply_part_to_poly(Part.REAL, n, f), f) / poly_inner(f, f)
    return value if exact else float(value)


def weak_left_endpoint(n: int) -> float:
    """``-(n-1) / (3 (n+3) (n+1)!)``: a point of W(Re V^n), one ninth of the
    Rayleigh value above."""
    return -(n - 1) / (3.0 * (n + 3) * math.factorial(n + 1))


def rayleigh_points_v(m: int, count: int, seed: int = 0) -> np.ndarray:
    """Complex Rayleigh quotients ``<V_h v, v> / <v, v>`` for ``count`` random
    complex grid vectors, built from the Re V and Im V matrices.

    Half the vectors are white noise, half are random low-frequency
    trigonometric sums, so the points spread beyond the centre of the range.
    """
    grid = GridSpec(m)
    re = assemble(KernelSpec(Part.REAL, 1), grid).entries
    s = assemble(KernelSpec(Part.IMAG, 1), grid).entries
    rng = np.random.default_rng(seed)
    x = grid.nodes
    out = np.empty(count, dtype=complex)
    for k in range(count):
        if k % 2 == 0:
            v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        else:
            freqs = np.arange(6)
            amp = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            v = (amp[None, :] * np.exp(1j * math.pi * np.outer(x, freqs) * rng.uniform(0, 4))).sum(1)
        vv = np.vdot(v, v).real
        # <Re V v, v> + i <Im V v, v>, with Im V = -i S
        out[k] = (np.vdot(v, re @ v).real + 1j * np.vdot(v, -1j * (s @ v)).real) / vv
    return out


def support_points_v(m: int, directions: int = 64) -> np.ndarray:
    """Boundary points of the numerical range of the discretized V: for each
    angle, the Rayleigh point of the top eigenvector of Re(e^{-i a} V_h)."""
    vh = volterra_matrix(GridSpec(m))
    pts = []
    for a in np.linspace(0, 2 * math.pi, directions, endpoint=False):
        rot = np.exp(-1j * a) * vh
        herm = 0.5 * (rot + rot.conj().T)
        _, vecs = np.linalg.eigh(herm)
        v = vecs[:, -1]
        pts.append(np.vdot(v, vh @ v) / np.vdot(v, v))
    return np.array(pts)
