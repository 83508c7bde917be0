"""Reproduction suite: every closed-form claim checked by at least two routes.

Each criterion is a function ``(ctx) -> list[Check]``.  The command-line
``verify`` command and ``tests/test_acceptance.py`` both run :data:`CRITERIA`.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import dblquad

from . import constants as C
from .accretivity import (QuadCoeffs, boundary_distance, certify_numeric, rayleigh_value,
                          resolvent_norm_check, spike, x_minus_half)
from .analytic import coth_residual, imv_eigenvalues, rev2_eigenvalues, solve_coth_eq
from .discretizer import (GridSpec, assemble, eigenvalues_antisymmetric, eigenvalues_symmetric,
                          hs_norm, op_norm, sort_spectrum)
from .kernels import KernelSpec, Part
from .norms import (double_integral_check, hs_re_im, hs_sq_diff, hs_sq_re_lower, hs_vn,
                    known_exact_opnorms, opnorm_bounds_im, opnorm_bounds_re, opnorm_bounds_vn)
from .numrange import (hull_contains, range_interval, rayleigh_points_v, rayleigh_probe_re,
                       weak_left_endpoint)
from .pencil import build_pencil, pencil_eigenpairs, pencil_eigenvalues
from .report import Check

ACCRETIVE_GRID = 500


def closed_form_spectra() -> dict:
    """Non-zero eigenvalues of the finite-rank cases n = 1..4."""
    r5, r345 = math.sqrt(5.0), math.sqrt(345.0)
    big = math.sqrt(1575.0 + 84.0 * r345) / 5040.0
    small = math.sqrt(1575.0 - 84.0 * r345) / 5040.0
    return {
        1: [0.5],
        2: [math.sqrt(3.0) / 12.0, -math.sqrt(3.0) / 12.0],
        3: [-1.0 / 24.0, 1.0 / 48.0 + r5 / 80.0, 1.0 / 48.0 - r5 / 80.0],
        4: [big, -big, small, -small],
    }


def closed_form_ranges() -> dict:
    rho = solve_coth_eq()
    im4 = math.sqrt(1575.0 + 84.0 * math.sqrt(345.0)) / 5040.0
    return {
        (Part.REAL, 1): (0.0, 0.5),
        (Part.IMAG, 1): (-1.0 / math.pi, 1.0 / math.pi),
        (Part.REAL, 2): (-1.0 / math.pi ** 2, 1.0 / (4.0 * rho * rho)),
        (Part.IMAG, 2): (-math.sqrt(3.0) / 12.0, math.sqrt(3.0) / 12.0),
        (Part.REAL, 3): (-1.0 / 24.0, 1.0 / 48.0 + math.sqrt(5.0) / 80.0),
        (Part.IMAG, 4): (-im4, im4),
    }


class Context:
    """Grid size plus memoised discretizations shared between criteria."""

    def __init__(self, m: int = C.DEFAULT_GRID):
        self.m = m
        self.matrix = lru_cache(maxsize=None)(self._matrix)
        self.spectrum = lru_cache(maxsize=None)(self._spectrum)
        self.norm = lru_cache(maxsize=None)(self._norm)

    def _matrix(self, part: Part, n: int, m: int | None = None):
        return assemble(KernelSpec(part, n), GridSpec(m or self.m))

    def _spectrum(self, part: Part, n: int, m: int | None = None):
        mat = self.matrix(part, n, m)
        if part is Part.REAL:
            return eigenvalues_symmetric(mat)
        return eigenvalues_antisymmetric(mat)

    def _norm(self, part: Part, n: int):
        if part in (Part.REAL, Part.IMAG):
            return self.spectrum(part, n).norm
        return op_norm(self.matrix(part, n))


def _abs(name, expected, actual, tol) -> Check:
    return Check(name, float(expected), float(actual), tol, abs(actual - expected) <= tol)


def _rel(name, expected, actual, tol) -> Check:
    return Check(name, float(expected), float(actual), tol,
                 abs(actual - expected) <= tol * abs(expected), "~rel")


def _le(name, actual, bound, tol=0.0) -> Check:
    return Check(name, float(bound), float(actual), tol, actual <= bound + tol, "<=")


def _ge(name, actual, bound, tol=0.0) -> Check:
    return Check(name, float(bound), float(actual), tol, actual >= bound - tol, ">=")


def _within(name, actual, lo, hi, tol) -> Check:
    return Check(name, [float(lo), float(hi)], float(actual), tol,
                 lo - tol <= actual <= hi + tol, "in")


def crit_pencil_closed_forms(ctx):
    checks = []
    for n, expected in closed_form_spectra().items():
        got = pencil_eigenvalues(build_pencil(n)).values
        want = sort_spectrum(expected)
        if len(got) != len(want):
            checks.append(Check(f"pencil closed form n={n} count", len(want), len(got), 0, False))
            continue
        err = float(np.max(np.abs(got - want)))
        checks.append(Check(f"pencil closed form n={n}", [float(v) for v in want],
                            [float(v) for v in got], C.TOL_PENCIL_CLOSED_FORM,
                            err <= C.TOL_PENCIL_CLOSED_FORM, "=="))
    return checks


def crit_pencil_count(ctx):
    checks = []
    for n in range(1, 11):
        count = len(pencil_eigenvalues(build_pencil(n)))
        checks.append(_le(f"nonzero eigenvalue count n={n}", count, n))
    for n in range(1, 7):
        worst = max(p.residual for p in pencil_eigenpairs(build_pencil(n)))
        checks.append(_le(f"eigenpair residual n={n}", worst, C.TOL_EIGENPAIR_RESIDUAL))
    return checks


def crit_root_solver(ctx):
    rho = solve_coth_eq()
    return [_abs("rho", C.RHO_REFERENCE, rho, C.TOL_RHO),
            _le("|coth rho - rho|", abs(coth_residual(rho)), C.TOL_ROOT_RESIDUAL)]


def crit_spectral_cross_validation(ctx):
    checks = []
    analytic = imv_eigenvalues(5).values
    disc = ctx.spectrum(Part.IMAG, 1).top(10)
    for k, (a, d) in enumerate(zip(analytic, disc)):
        checks.append(_rel(f"Im V eigenvalue #{k + 1}", a, d, C.RTOL_IMV_FAMILY))
    analytic = rev2_eigenvalues(8).values
    disc = ctx.spectrum(Part.REAL, 2).top(8)
    for k, (a, d) in enumerate(zip(analytic, disc)):
        checks.append(_rel(f"Re V^2 eigenvalue #{k + 1}", a, d, C.RTOL_REV2_FAMILY))
    return checks


def crit_hs_identities(ctx):
    checks = []
    worst = max(abs(hs_re_im(n) / hs_vn(n) - 1.0 / math.sqrt(2.0)) for n in range(1, 21))
    checks.append(_le("HS ratio Re/V = 1/sqrt2, n<=20", worst, C.TOL_HS_RATIO))
    for n in range(1, 7):
        for part in (Part.REAL, Part.IMAG):
            checks.append(_rel(f"HS {KernelSpec(part, n).label} discretized", hs_re_im(n),
                               hs_norm(ctx.matrix(part, n)), C.RTOL_HS_DISCRETE))
    checks.append(_abs("HS Re V discretized exact", 0.5, hs_norm(ctx.matrix(Part.REAL, 1)), 1e-15))
    return checks


_BOUNDS = {Part.FULL_V: opnorm_bounds_vn, Part.REAL: opnorm_bounds_re, Part.IMAG: opnorm_bounds_im}


def crit_bound_sandwiches(ctx):
    checks = []
    for n in range(1, 9):
        for part, bounds in _BOUNDS.items():
            lo, hi = bounds(n)
            checks.append(_within(f"norm sandwich {KernelSpec(part, n).label}",
                                  ctx.norm(part, n), lo, hi, C.SANDWICH_SLACK * hi))
    for (part, n), exact in known_exact_opnorms().items():
        label = KernelSpec(part, n).label
        lo, hi = _BOUNDS[part](n)
        checks.append(_within(f"closed-form norm {label} within bounds", exact, lo, hi,
                              C.TOL_TABLE_IN_BOUNDS))
        checks.append(_rel(f"closed-form norm {label} vs discretized", exact, ctx.norm(part, n),
                           C.RTOL_TABLE_DISCRETE))
    return checks


def crit_square_estimates(ctx):
    checks = []
    worst = max(abs(hs_sq_diff(n) - hs_re_im(2 * n)) for n in range(1, 11))
    checks.append(_le("HS of square difference = HS Re V^2n, n<=10", worst, C.TOL_SQUARE_IDENTITY))
    for n in range(1, 7):
        r = ctx.matrix(Part.REAL, n).entries
        bound = hs_sq_re_lower(n)
        checks.append(_ge(f"HS (Re V^{n})^2 lower estimate", hs_norm(r @ r), bound,
                          C.SQUARE_SLACK * bound))
    return checks


def crit_symmetry_perron(ctx):
    checks = []
    for n in range(1, 9):
        v = np.sort(ctx.spectrum(Part.IMAG, n).values)
        checks.append(Check(f"Im V^{n} spectrum symmetric", 0.0,
                            float(np.max(np.abs(v + v[::-1]))), 0.0,
                            bool(np.array_equal(v, -v[::-1])), "=="))
    for n in (2, 4, 6, 8, 10):
        v = np.sort(pencil_eigenvalues(build_pencil(n)).values)
        checks.append(Check(f"Im V^{n} pencil spectrum symmetric", 0.0,
                            float(np.max(np.abs(v + v[::-1]))), 1e-12 * abs(v).max(),
                            bool(np.max(np.abs(v + v[::-1])) <= 1e-12 * abs(v).max()), "=="))
    for n in range(1, 9):
        for m in sorted({100, ctx.m}):
            top = ctx.spectrum(Part.REAL, n, m).values[0]
            checks.append(_ge(f"Perron: top eigenvalue Re V^{n} (m={m}) positive", top, 0.0)
                          if top != 0 else Check(f"Perron Re V^{n}", ">0", 0.0, 0.0, False, ">"))
    return checks


def crit_numerical_range(ctx):
    checks = []
    for (part, n), (lo, hi) in closed_form_ranges().items():
        iv = range_interval(part, n, ctx.m)
        label = f"W({KernelSpec(part, n).label})"
        ok = abs(iv.lo - lo) <= C.TOL_RANGE_CLOSED_FORM and abs(iv.hi - hi) <= C.TOL_RANGE_CLOSED_FORM
        checks.append(Check(label, [lo, hi], [iv.lo, iv.hi], C.TOL_RANGE_CLOSED_FORM, ok, "=="))
    pts = rayleigh_points_v(ACCRETIVE_GRID, 200, seed=0)
    inside = sum(hull_contains(z, C.TOL_BROWN_REGION) for z in pts)
    checks.append(Check("Rayleigh points of V inside boundary curve", 200, inside,
                        C.TOL_BROWN_REGION, inside == 200, "=="))
    for n in range(1, 9):
        probe = rayleigh_probe_re(n)
        closed = -3.0 * (n - 1) / ((n + 3) * math.factorial(n + 1))
        checks.append(_abs(f"Rayleigh probe Re V^{n}", closed, probe, C.TOL_RAYLEIGH_PROBE))
        checks.append(_le(f"Rayleigh probe Re V^{n} <= weak endpoint", probe,
                          weak_left_endpoint(n)))
    return checks


def crit_accretivity(ctx):
    checks = []
    grid = np.arange(-2.0, 2.0 + 1e-9, 0.5)
    disagree, witness_bad = [], []
    for a in grid:
        for b in grid:
            q = QuadCoeffs(float(a), float(b))
            v = certify_numeric(q, ACCRETIVE_GRID)
            if (v.predicate or boundary_distance(q) > C.BOUNDARY_EXCLUSION) and not v.certificate_agrees:
                disagree.append((q.a, q.b))
            if not v.predicate and not v.witness.value < 0:
                witness_bad.append((q.a, q.b))
    checks.append(Check("criterion vs min eigenvalue on (a, b) sweep", 0, len(disagree),
                        C.ACCRETIVE_SLACK, not disagree, "=="))
    checks.append(Check("witness Rayleigh value negative on sweep", 0, len(witness_bad),
                        0.0, not witness_bad, "=="))
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(20):
        b = -rng.uniform(0.0, 3.0)
        a = -b / 2 + rng.uniform(0.0, 3.0)
        worst = max(worst, resolvent_norm_check(QuadCoeffs(a, b), ACCRETIVE_GRID))
    checks.append(_le("resolvent norm on accretive region", worst, 1.0 + C.ACCRETIVE_SLACK))
    xm = rayleigh_value(QuadCoeffs(0.0, 1.0), x_minus_half(ACCRETIVE_GRID))
    checks.append(Check("XMinusHalf witness for V^2", "<0", xm, 0.0, xm < 0, "<"))
    sp = rayleigh_value(QuadCoeffs(0.0, -1.0), spike(ACCRETIVE_GRID, 50))
    checks.append(Check("Spike witness for -V^2", "<0", sp, 0.0, sp < 0, "<"))
    return checks


def crit_double_integral(ctx):
    checks = []
    for n in range(1, 7):
        val, _ = dblquad(lambda t, x: (x - t) ** (2 * n - 2), 0.0, 1.0, 0.0, 1.0,
                         epsabs=1e-13, epsrel=1e-12)
        checks.append(_rel(f"double integral n={n}", double_integral_check(n), val,
                           C.RTOL_DOUBLE_INTEGRAL))
    return checks


CRITERIA = [
    (1, "pencil closed forms", crit_pencil_closed_forms),
    (2, "pencil eigenvalue count and residuals", crit_pencil_count),
    (3, "root solver", crit_root_solver),
    (4, "analytic vs discretized spectra", crit_spectral_cross_validation),
    (5, "Hilbert-Schmidt identities", crit_hs_identities),
    (6, "operator norm bound sandwiches", crit_bound_sandwiches),
    (7, "squared-operator HS estimates", crit_square_estimates),
    (8, "spectral symmetry and Perron sign", crit_symmetry_perron),
    (9, "numerical ranges", crit_numerical_range),
    (10, "accretivity", crit_accretivity),
    (11, "double integral", crit_double_integral),
]


def run_all(m: int = C.DEFAULT_GRID) -> list:
    """``[(number, title, checks), ...]`` for every criterion."""
    ctx = Context(m)
    return [(num, title, fn(ctx)) for num, title, fn in CRITERIA]
