"""Closed-form norms and norm bounds for V^n, Re V^n and Im V^n.

Everything here is a plain formula in double precision.  Lower bounds on the
operator norm come from ``||S^2||_HS / ||S||_HS <= ||S|| <= ||S||_HS`` for
self-adjoint Hilbert-Schmidt S, fed with a lower estimate of ``||S^2||_HS``.

Note that the lower estimates ``hs_sq_re_lower`` and ``opnorm_bounds_re`` /
``opnorm_bounds_im`` (lower ends) are NOT valid for every n: the true values
fall below them from n = 2 (squares) and n = 3 (operator norms) on.  They are
kept as formulas so the discrepancy can be measured; see the acceptance
suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .analytic import solve_coth_eq
from .constants import MAX_KERNEL_POWER
from .errors import CapacityExceeded
from .kernels import Part


def _check(n: int):
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    if n > MAX_KERNEL_POWER:
        raise CapacityExceeded(f"power {n} exceeds cap {MAX_KERNEL_POWER}")


def _fact(k: int) -> float:
    return float(math.factorial(k))


def hs_vn(n: int) -> float:
    _check(n)
    return 1.0 / (_fact(n - 1) * math.sqrt(2 * n * (2 * n - 1)))


def hs_re_im(n: int) -> float:
    """HS norm of Re V^n, equal to that of Im V^n and to ``hs_vn(n) / sqrt 2``."""
    _check(n)
    return 1.0 / (_fact(n - 1) * math.sqrt(4 * n * (2 * n - 1)))


def opnorm_bounds_vn(n: int) -> tuple:
    _check(n)
    lower = 1.0 / (_fact(n - 1) * math.sqrt((2 * n + 1) * (2 * n - 1)))
    return lower, hs_vn(n)


def opnorm_bounds_re(n: int) -> tuple:
    _check(n)
    lower = 1.0 / (_fact(n - 1) * math.sqrt(4 * n * (2 * n + 1)))
    return lower, hs_re_im(n)


def opnorm_bounds_im(n: int) -> tuple:
    lower_re, upper = opnorm_bounds_re(n)
    return lower_re * (1.0 - 1.0 / math.comb(2 * n - 2, n - 1)), upper


def hs_sq_re_lower(n: int) -> float:
    _check(n)
    return 1.0 / (2.0 * _fact(n - 1) ** 2 * (2 * n - 1) * math.sqrt(2 * n * (2 * n + 1)))


def hs_sq_diff(n: int) -> float:
    """``||(Re V^n)^2 - (Im V^n)^2||_HS``; the difference is ``Re V^(2n)``."""
    _check(n)
    return 1.0 / (2.0 * _fact(2 * n - 1) * math.sqrt(2 * n * (4 * n - 1)))


def hs_sq_im_lower(n: int) -> float:
    return hs_sq_re_lower(n) * (1.0 - 1.0 / math.comb(2 * n - 2, n - 1))


def double_integral_check(n: int) -> float:
    """Closed form of the integral of (x - t)^(2n-2) over the unit square."""
    _check(n)
    return 1.0 / (n * (2 * n - 1))


def known_exact_opnorms() -> dict:
    """Closed-form operator norms, keyed by ``(Part, n)``."""
    rho = solve_coth_eq()
    return {
        (Part.REAL, 1): 0.5,
        (Part.IMAG, 1): 1.0 / math.pi,
        (Part.REAL, 2): 1.0 / (4.0 * rho * rho),
        (Part.IMAG, 2): math.sqrt(3.0) / 12.0,
        (Part.REAL, 3): 1.0 / 48.0 + math.sqrt(5.0) / 80.0,
        (Part.IMAG, 4): math.sqrt(1575.0 + 84.0 * math.sqrt(345.0)) / 5040.0,
    }


_BOUNDS = {Part.FULL_V: opnorm_bounds_vn, Part.REAL: opnorm_bounds_re, Part.IMAG: opnorm_bounds_im}
_HS = {Part.FULL_V: hs_vn, Part.REAL: hs_re_im, Part.IMAG: hs_re_im}


@dataclass(frozen=True)
class NormReport:
    n: int
    part: Part
    hs_exact: float
    op_lower: float
    op_upper: float
    op_exact: Optional[float] = None
    op_discretized: Optional[float] = None

    def __post_init__(self):
        if self.op_lower > self.op_upper:
            raise ValueError("lower bound exceeds upper bound")

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.op_lower - slack <= value <= self.op_upper + slack


def norm_report(part: Part, n: int, op_discretized: Optional[float] = None) -> NormReport:
    if part not in _BOUNDS:
        raise ValueError(f"no norm bounds for {part}")
    lower, upper = _BOUNDS[part](n)
    exact = known_exact_opnorms().get((part, n))
    return NormReport(n, part, _HS[part](n), lower, upper, exact, op_discretized)
