"""Integral kernels of V^n, V*^n, Re V^n and Im V^n, and exact action of
V^n, V*^n on polynomials.

Polynomials are coefficient arrays in the monomial basis on [0, 1], lowest
degree first.  Float arrays are handled in double precision; object arrays of
:class:`fractions.Fraction` are handled exactly.

``Im V^n`` is never formed as a complex object.  Its kernel is ``-i * s(x, t)``
with the real antisymmetric factor

    s(x, t) = |x - t|^(n-1) sign(x - t) / (2 (n-1)!),

and :func:`eval_kernel` returns ``s``.  The sign enters with exponent one for
every n: expanding ``(V^n - V*^n) / 2i`` kernel by kernel gives
``sign(x - t)`` and not ``sign(x - t)^(n-1)`` (the two agree only for even n).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .constants import MAX_KERNEL_POWER, MAX_POLY_DEGREE
from .errors import CapacityExceeded

_FACTORIAL = np.array([float(math.factorial(k)) for k in range(2 * MAX_KERNEL_POWER + 2)])


class Part(enum.Enum):
    FULL_V = "v"
    FULL_V_ADJOINT = "vstar"
    REAL = "re"
    IMAG = "im"

    @classmethod
    def parse(cls, text: str) -> "Part":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown operator part {text!r}; expected one of "
                             f"{[p.value for p in cls]}") from None


@dataclass(frozen=True)
class KernelSpec:
    """Which operator a kernel represents: ``part`` of ``V**n``."""

    part: Part
    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"power must be a positive integer, got {self.n!r}")
        if self.n > MAX_KERNEL_POWER:
            raise CapacityExceeded(f"kernel power {self.n} exceeds cap {MAX_KERNEL_POWER}")

    def __call__(self, x, t):
        return eval_kernel(self, x, t)

    @property
    def label(self) -> str:
        names = {Part.FULL_V: "V^{n}", Part.FULL_V_ADJOINT: "V*^{n}",
                 Part.REAL: "Re V^{n}", Part.IMAG: "Im V^{n}"}
        return names[self.part].format(n=self.n)


def eval_kernel(spec: KernelSpec, x, t):
    """Kernel value k(x, t) of ``spec``; vectorised over array arguments.

    For ``Part.IMAG`` the real antisymmetric factor is returned (see module
    docstring).  ``sign(0) = 0`` and the indicator ``1_{t<x}`` is 0 on the
    diagonal.
    """
    n = spec.n
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    d = x - t
    scale = _FACTORIAL[n - 1]
    if spec.part is Part.REAL:
        out = np.abs(d) ** (n - 1) / (2.0 * scale)
    elif spec.part is Part.IMAG:
        out = np.abs(d) ** (n - 1) * np.sign(d) / (2.0 * scale)
    elif spec.part is Part.FULL_V:
        out = np.where(d > 0, np.abs(d) ** (n - 1) / scale, 0.0)
    else:
        out = np.where(d < 0, np.abs(d) ** (n - 1) / scale, 0.0)
    return out[()] if out.ndim == 0 else out


# --- polynomial helpers -------------------------------------------------------

def as_poly(coeffs) -> np.ndarray:
    """Coerce to a 1-D coefficient array, keeping Fraction entries exact."""
    arr = np.asarray(coeffs)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("polynomial must be a non-empty 1-D coefficient sequence")
    if arr.dtype == object or any(isinstance(c, Fraction) for c in arr.ravel()[:1]):
        return np.array([Fraction(c) for c in arr], dtype=object)
    return arr.astype(float)


def _is_exact(p: np.ndarray) -> bool:
    return p.dtype == object


def poly_trim(p) -> np.ndarray:
    """Drop trailing zero coefficients, keeping at least the constant term."""
    p = as_poly(p)
    k = len(p)
    while k > 1 and p[k - 1] == 0:
        k -= 1
    return p[:k]


def poly_add(p, q) -> np.ndarray:
    p, q = as_poly(p), as_poly(q)
    exact = _is_exact(p) or _is_exact(q)
    dtype = object if exact else float
    out = np.array([Fraction(0)] * max(len(p), len(q)), dtype=object) if exact \
        else np.zeros(max(len(p), len(q)))
    out[:len(p)] = out[:len(p)] + p.astype(dtype)
    out[:len(q)] = out[:len(q)] + q.astype(dtype)
    return out


def poly_eval(p, x):
    p = as_poly(p)
    if _is_exact(p):
        p = p.astype(float)
    return np.polynomial.polynomial.polyval(x, p)


def poly_inner(p, q):
    """L^2[0, 1] inner product of two real polynomials.

    Exact (Hilbert-matrix sum) for Fraction input.  For float input the product
    is integrated by Gauss-Legendre quadrature with enough nodes to be exact for
    its degree, which avoids the cancellation of the Hilbert-matrix sum.
    """
    p, q = as_poly(p), as_poly(q)
    if _is_exact(p) and _is_exact(q):
        return sum((p[i] * q[j] / (i + j + 1)
                    for i in range(len(p)) for j in range(len(q))), Fraction(0))
    p, q = p.astype(float), q.astype(float)
    npts = (len(p) + len(q)) // 2 + 1
    nodes, weights = np.polynomial.legendre.leggauss(npts)
    x = 0.5 * (nodes + 1.0)
    return 0.5 * float(np.dot(weights, poly_eval(p, x) * poly_eval(q, x)))


def poly_norm(p) -> float:
    val = poly_inner(p, p)
    return math.sqrt(max(float(val), 0.0))


@lru_cache(maxsize=256)
def _transfer(part: Part, n: int, degree: int) -> tuple:
    """Exact matrix (as nested tuples of Fractions) mapping coefficients of a
    degree-``degree`` polynomial to those of its image, degree ``degree + n``."""
    rows = degree + n + 1
    mat = [[Fraction(0)] * (degree + 1) for _ in range(rows)]
    if part is Part.FULL_V:
        for j in range(degree + 1):
            mat[j + n][j] = Fraction(math.factorial(j), math.factorial(j + n))
    else:
        # V*^n x^j = sum_i C(j,i) x^(j-i) (1-x)^(n+i) / ((n-1)! (n+i))
        base = math.factorial(n - 1)
        for j in range(degree + 1):
            for i in range(j + 1):
                c = Fraction(math.comb(j, i), base * (n + i))
                for l in range(n + i + 1):
                    mat[j - i + l][j] += c * (-1) ** l * math.comb(n + i, l)
    return tuple(tuple(r) for r in mat)


def apply_power_to_poly(part: Part, n: int, p, max_degree: int = MAX_POLY_DEGREE) -> np.ndarray:
    """Exact image of the polynomial ``p`` under ``V^n`` or ``V*^n``.

    The result has degree ``deg(p) + n``.  Raises CapacityExceeded if that
    exceeds ``max_degree``.
    """
    if part not in (Part.FULL_V, Part.FULL_V_ADJOINT):
        raise ValueError(f"apply_power_to_poly needs FULL_V or FULL_V_ADJOINT, got {part}")
    KernelSpec(part, n)
    p = as_poly(p)
    degree = len(p) - 1
    if degree + n > max_degree:
        raise CapacityExceeded(f"image degree {degree + n} exceeds cap {max_degree}")
    mat = _transfer(part, n, degree)
    if _is_exact(p):
        return np.array([sum((row[j] * p[j] for j in range(degree + 1)), Fraction(0))
                         for row in mat], dtype=object)
    fmat = np.array([[float(v) for v in row] for row in mat])
    return fmat @ p


def apply_part_to_poly(part: Part, n: int, p) -> np.ndarray:
    """``(V^n + V*^n) p / 2`` for REAL and ``(V^n - V*^n) p / 2`` for IMAG.

    The IMAG result is the real antisymmetric factor; ``Im V^n p`` itself is
    ``-i`` times it.
    """
    if part not in (Part.REAL, Part.IMAG):
        return apply_power_to_poly(part, n, p)
    fwd = apply_power_to_poly(Part.FULL_V, n, p)
    adj = apply_power_to_poly(Part.FULL_V_ADJOINT, n, p)
    half = Fraction(1, 2) if _is_exact(fwd) else 0.5
    return half * poly_add(fwd, adj if part is Part.REAL else -adj)
