"""Eigenvalue families of Im V and Re V^2 with bracketed root finding.

Im V has the simple eigenvalues ``1 / ((2k + 1) pi)``, k in Z.

Re V^2 has three families, all simple:

* ``1 / (4 rho^2)`` where rho > 0 solves ``coth t = t`` (the only positive one);
* ``-1 / (4 t^2)`` for each positive root of ``cot t = -t``;
* ``-1 / ((2k + 1)^2 pi^2)``, k >= 0.  The index set k in Z hits every value
  twice (k and -k-1) but both indices give the same eigenfunction
  ``cos((2k + 1) pi x)``, so each value is listed once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import COT_BRACKET_DELTA, ROOT_ABS_TOL, ROOT_BISECT_TOL, ROOT_MAX_ITER
from .discretizer import Source, Spectrum, sort_spectrum
from .errors import InternalError


class FamilyKind(enum.Enum):
    IMV_ODD_PI = "imv_odd_pi"
    REV2_COTH = "rev2_coth"
    REV2_COT = "rev2_cot"
    REV2_ODD_PI = "rev2_odd_pi"
    REV2_MERGED = "rev2_merged"


@dataclass(frozen=True, eq=False)
class EigenFamily:
    kind: FamilyKind
    index_range: tuple
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", sort_spectrum(self.values))

    def as_spectrum(self) -> Spectrum:
        return Spectrum(self.values, Source.ANALYTIC)


@dataclass(frozen=True)
class RootSolverConfig:
    abs_tol: float = ROOT_ABS_TOL
    max_iter: int = ROOT_MAX_ITER

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")


def bracketed_root(func: Callable[[float], float], dfunc: Callable[[float], float],
                   lo: float, hi: float, cfg: RootSolverConfig = RootSolverConfig(),
                   bisect_tol: float = ROOT_BISECT_TOL) -> float:
    """Root of ``func`` in ``[lo, hi]``: bisection down to ``bisect_tol``, then
    Newton steps, each one kept only if it stays inside the current bracket."""
    flo, fhi = func(lo), func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise InternalError(f"root not bracketed by [{lo}, {hi}]")
    it = 0
    while hi - lo > bisect_tol and it < cfg.max_iter:
        mid = 0.5 * (lo + hi)
        fmid = func(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        it += 1
    t = 0.5 * (lo + hi)
    ft = func(t)
    while abs(ft) >= cfg.abs_tol and it < cfg.max_iter:
        step = ft / dfunc(t)
        nxt = t - step
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        fn = func(nxt)
        if (fn < 0) == (flo < 0):
            lo, flo = nxt, fn
        else:
            hi = nxt
        if nxt == t:
            break
        t, ft = nxt, fn
        it += 1
    if abs(ft) >= cfg.abs_tol:
        # rounding floor of func near the root; accept if no float does better
        neighbours = [np.nextafter(t, -np.inf), np.nextafter(t, np.inf)]
        if min(abs(func(s)) for s in neighbours) < abs(ft):
            raise InternalError(f"root solver did not converge (|f| = {abs(ft):.2e})")
    return float(t)


def coth_residual(t: float) -> float:
    return 1.0 / math.tanh(t) - t


def cot_residual(t: float) -> float:
    return 1.0 / math.tan(t) + t


def solve_coth_eq(cfg: RootSolverConfig = RootSolverConfig()) -> float:
    """The positive root rho of ``coth t = t`` (about 1.1997)."""
    return bracketed_root(coth_residual, lambda t: -1.0 / math.sinh(t) ** 2 - 1.0,
                          0.5, 3.0, cfg)


def solve_cot_family(count: int, cfg: RootSolverConfig = RootSolverConfig()) -> np.ndarray:
    """First ``count`` positive roots of ``cot t = -t``.

    On ``(k pi + pi/2, (k + 1) pi)`` the function ``cot t + t`` falls from a
    positive value to -inf, and it is positive on ``(k pi, k pi + pi/2]``, so
    each such interval holds exactly one root.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    d = COT_BRACKET_DELTA
    roots = [bracketed_root(cot_residual, lambda t: -1.0 / math.tan(t) ** 2,
                            k * math.pi + math.pi / 2 + d, (k + 1) * math.pi - d, cfg)
             for k in range(count)]
    return np.array(roots)


def imv_eigenvalues(count: int) -> EigenFamily:
    """The ``2 * count`` eigenvalues of Im V of largest modulus."""
    if count < 1:
        raise ValueError("count must be >= 1")
    pos = 1.0 / ((2 * np.arange(count) + 1) * math.pi)
    return EigenFamily(FamilyKind.IMV_ODD_PI, (-count, count - 1), np.concatenate([pos, -pos]))


def rho_eigenvalue(cfg: RootSolverConfig = RootSolverConfig()) -> float:
    rho = solve_coth_eq(cfg)
    return 1.0 / (4.0 * rho * rho)


def rev2_families(count: int, cfg: RootSolverConfig = RootSolverConfig()) -> dict:
    """The three Re V^2 families separately, ``count`` members of each infinite one."""
    t = solve_cot_family(count, cfg)
    k = np.arange(count)
    return {
        FamilyKind.REV2_COTH: EigenFamily(FamilyKind.REV2_COTH, (0, 0),
                                          np.array([rho_eigenvalue(cfg)])),
        FamilyKind.REV2_COT: EigenFamily(FamilyKind.REV2_COT, (0, count - 1),
                                         -1.0 / (4.0 * t * t)),
        FamilyKind.REV2_ODD_PI: EigenFamily(FamilyKind.REV2_ODD_PI, (0, count - 1),
                                            -1.0 / ((2 * k + 1) ** 2 * math.pi ** 2)),
    }


def rev2_eigenvalues(count: int, cfg: RootSolverConfig = RootSolverConfig()) -> EigenFamily:
    """The ``count`` eigenvalues of Re V^2 of largest modulus.

    The two negative families interlace (the k-th cot root lies between the
    k-th and (k+1)-th odd multiples of pi/2), so ``count`` members of each
    suffice to fill the top ``count``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    fams = rev2_families(count, cfg)
    merged = sort_spectrum(np.concatenate([f.values for f in fams.values()]))[:count]
    return EigenFamily(FamilyKind.REV2_MERGED, (0, count - 1), merged)
