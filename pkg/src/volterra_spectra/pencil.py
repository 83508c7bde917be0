"""Finite spectra of Re V^n (n odd) and Im V^n (n even) from an n x n pencil.

A non-zero eigenfunction of ``Re(i^(n-1) V^n)`` satisfies ``f^(n) = 0`` plus n
boundary conditions at x = 1, so it is a polynomial ``sum_j c_j x^j`` of degree
below n.  Writing ``v_j = j! c_j`` the conditions become ``(A - lam B) v = 0``
with

    A[j, k] = i^(n-1) / (j + n - k)!,     B[j, k] = 2 / (j - k)!  (j >= k, else 0).

Row k of the boundary conditions reads ``sum_j v_j / (j + n - k)!``, so the
system satisfied by ``v`` is the transposed pencil ``(A^T - lam B^T) v = 0``.
Eigenvalues are the same either way; eigenvectors are taken from the
transpose.

Only the real matrix ``A' = A / i^(n-1)`` is stored; the phase is handled by
case.  With ``mu`` the eigenvalues of ``B^-1 A'``:

* n odd: ``i^(n-1) = +-1`` and the eigenvalues of Re V^n are exactly ``mu``;
* n even: ``Re(i^(n-1) V^n) = -eps Im V^n`` with ``i^(n-1) = eps i``, and the
  eigenvalues of Im V^n are ``-i mu`` (``mu`` is purely imaginary).

In both cases 0 is also an eigenvalue, with infinite multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import solve_triangular

from .constants import MAX_PENCIL_POWER, PENCIL_CONTAMINATION, PENCIL_MULTIPLICITY_RTOL
from .discretizer import Source, Spectrum, sort_spectrum
from .errors import CapacityExceeded, NumericalBreakdown
from .kernels import Part, apply_part_to_poly, as_poly, poly_add, poly_norm


@dataclass(frozen=True)
class PhaseCase:
    """``i^(n-1)`` written as ``eps`` (n odd) or ``eps * i`` (n even)."""

    odd: bool
    eps: int

    @property
    def part(self) -> Part:
        return Part.REAL if self.odd else Part.IMAG


@dataclass(frozen=True, eq=False)
class PencilPair:
    n: int
    aprime: np.ndarray
    b: np.ndarray
    phase: PhaseCase


@dataclass(frozen=True, eq=False)
class ExactEigenpair:
    """A pencil eigenvalue with its polynomial eigenfunction.

    For n odd ``poly`` is a unit eigenfunction of Re V^n.  For n even it is the
    real polynomial ``f`` of the invariant pair ``S f = lam g, S g = -lam f``
    where ``S = (V^n - V*^n) / 2``; ``f + i g`` is then an eigenfunction of
    Im V^n for ``lam``.
    """

    lam: float
    poly: np.ndarray
    residual: float
    part: Part
    multiplicity: int = 1


def build_pencil(n: int) -> PencilPair:
    if not 1 <= n <= MAX_PENCIL_POWER:
        raise CapacityExceeded(f"pencil power must lie in 1..{MAX_PENCIL_POWER}, got {n}")
    idx = np.arange(n)
    aprime = np.array([[1.0 / math.factorial(j + n - k) for k in idx] for j in idx])
    b = np.array([[2.0 / math.factorial(j - k) if j >= k else 0.0 for k in idx] for j in idx])
    if n % 2:
        phase = PhaseCase(True, (-1) ** ((n - 1) // 2))
    else:
        phase = PhaseCase(False, (-1) ** ((n - 2) // 2))
    return PencilPair(n, aprime, b, phase)


def _solve(p: PencilPair, transpose: bool = False):
    """Mapped real eigenvalues and raw eigenvectors of ``B^-1 A'``, or of
    ``B^-T A'^T`` when ``transpose`` is set."""
    if transpose:
        c = solve_triangular(p.b.T, p.aprime.T, lower=False)
    else:
        c = solve_triangular(p.b, p.aprime, lower=True)
    mu, vecs = np.linalg.eig(c)
    if not np.all(np.isfinite(mu)):
        raise NumericalBreakdown(f"pencil eigensolve failed for n={p.n}")
    scale = np.max(np.abs(mu))
    if p.phase.odd:
        lam, junk = mu.real, np.abs(mu.imag)
    else:
        lam, junk = mu.imag, np.abs(mu.real)
    worst = float(np.max(junk)) / scale
    if worst > PENCIL_CONTAMINATION:
        raise NumericalBreakdown(
            f"pencil n={p.n}: mapped eigenvalues carry a spurious "
            f"{'imaginary' if p.phase.odd else 'real'} part of relative size {worst:.2e} "
            f"(threshold {PENCIL_CONTAMINATION:.0e})")
    keep = np.abs(lam) > 64 * np.finfo(float).eps * scale
    return lam[keep], vecs[:, keep]


def _multiplicities(values: np.ndarray) -> tuple:
    scale = np.max(np.abs(values)) if len(values) else 1.0
    tol = PENCIL_MULTIPLICITY_RTOL * scale
    return tuple(int(np.sum(np.abs(values - v) <= tol)) for v in values)


def pencil_eigenvalues(p: PencilPair) -> Spectrum:
    lam, _ = _solve(p)
    values = sort_spectrum(lam)
    mult = _multiplicities(values)
    notes = ("repeated root",) if max(mult, default=1) > 1 else ()
    return Spectrum(values, Source.PENCIL, infinite_kernel=True, multiplicity=mult, notes=notes)


def _real_poly(v: np.ndarray) -> np.ndarray:
    """Coefficients ``c_j = v_j / j!`` of a real representative of the eigenvector."""
    k = int(np.argmax(np.abs(v)))
    v = v * (np.conj(v[k]) / abs(v[k]))
    c = v.real / np.array([math.factorial(j) for j in range(len(v))], dtype=float)
    return c / poly_norm(c)


def pencil_eigenpairs(p: PencilPair) -> list:
    lam, vecs = _solve(p, transpose=True)
    order = np.lexsort((-lam, -np.abs(lam)))
    mult = _multiplicities(lam[order])
    part = p.phase.part
    pairs = []
    for pos, i in enumerate(order):
        f = _real_poly(vecs[:, i])
        res = residual_check(p.n, part, float(lam[i]), f)
        pairs.append(ExactEigenpair(float(lam[i]), f, res, part, mult[pos]))
    return pairs


def residual_check(n: int, part: Part, lam: float, f) -> float:
    """L^2 residual of an eigen-equation, by exact polynomial arithmetic.

    REAL: ``|| Re V^n f - lam f ||``.
    IMAG: with ``S = (V^n - V*^n) / 2`` and ``g = S f / lam``, the residual of
    the second half of the invariant pair, ``|| S g + lam f ||``.
    """
    if part not in (Part.REAL, Part.IMAG):
        raise ValueError("residual_check applies to REAL or IMAG parts")
    f = as_poly(f)
    image = apply_part_to_poly(part, n, f)
    if part is Part.REAL:
        return poly_norm(poly_add(image, -lam * f))
    if lam == 0:
        return poly_norm(image)
    g = image / lam
    return poly_norm(poly_add(apply_part_to_poly(part, n, g), lam * f))


def pencil_spectrum_for(part: Part, n: int) -> Optional[Spectrum]:
    """Pencil spectrum when ``(part, n)`` is a finite-rank case, else None."""
    if (part is Part.REAL and n % 2 == 1) or (part is Part.IMAG and n % 2 == 0):
        return pencil_eigenvalues(build_pencil(n))
    return None
