import math

import numpy as np
import pytest
from scipy.optimize import brentq

from volterra_spectra import InternalError, KernelSpec, Part, assemble
from volterra_spectra.analytic import (FamilyKind, RootSolverConfig, bracketed_root, cot_residual,
                                       coth_residual, imv_eigenvalues, rev2_eigenvalues,
                                       rev2_families, rho_eigenvalue, solve_coth_eq,
                                       solve_cot_family)
from volterra_spectra.constants import RHO_REFERENCE, TOL_RHO, TOL_ROOT_RESIDUAL
from volterra_spectra.discretizer import GridSpec, eigenvalues_symmetric

# 20-digit values from mpmath.findroot
RHO_MP = 1.19967864025773383392
COT_ROOTS_MP = [2.79838604578388713672, 6.12125046689806830129, 9.31786646179106537901]


def test_rho():
    rho = solve_coth_eq()
    assert abs(rho - RHO_REFERENCE) < TOL_RHO
    assert rho == pytest.approx(RHO_MP, abs=1e-13)
    assert abs(coth_residual(rho)) < TOL_ROOT_RESIDUAL


def test_cot_roots_against_reference_values():
    np.testing.assert_allclose(solve_cot_family(3), COT_ROOTS_MP, rtol=0, atol=1e-14)


def test_cot_roots_against_brentq():
    roots = solve_cot_family(20)
    for k, t in enumerate(roots):
        lo, hi = k * math.pi + math.pi / 2 + 1e-9, (k + 1) * math.pi - 1e-9
        assert lo < t < hi
        assert t == pytest.approx(brentq(cot_residual, lo, hi, xtol=1e-15), abs=1e-12)


def test_first_cot_residuals():
    for t in solve_cot_family(5):
        assert abs(cot_residual(t)) < TOL_ROOT_RESIDUAL


def test_unbracketed_root_raises():
    with pytest.raises(InternalError):
        bracketed_root(lambda t: t * t + 1, lambda t: 2 * t, -1.0, 1.0)


def test_solver_config_validation():
    with pytest.raises(ValueError):
        RootSolverConfig(abs_tol=0.0)


def test_imv_family():
    fam = imv_eigenvalues(3)
    assert fam.kind is FamilyKind.IMV_ODD_PI
    np.testing.assert_allclose(fam.values[:2], [1 / math.pi, -1 / math.pi])
    v = np.sort(fam.values)
    np.testing.assert_array_equal(v, -v[::-1])


def test_rev2_single_positive_value():
    fams = rev2_families(10)
    merged = rev2_eigenvalues(12).values
    assert np.sum(merged > 0) == 1
    assert merged[0] == pytest.approx(rho_eigenvalue())
    assert fams[FamilyKind.REV2_COT].values[0] == pytest.approx(-1 / (4 * COT_ROOTS_MP[0] ** 2))
    assert np.all(fams[FamilyKind.REV2_ODD_PI].values < 0)


def test_rev2_merged_examples():
    v = rev2_eigenvalues(4).values
    assert v[0] == pytest.approx(1 / (4 * RHO_MP ** 2))
    assert v[1] == pytest.approx(-1 / math.pi ** 2)
    assert v[2] == pytest.approx(-1 / (4 * COT_ROOTS_MP[0] ** 2))
    assert v[3] == pytest.approx(-1 / (9 * math.pi ** 2))


def test_rev2_merged_vs_discretized():
    disc = eigenvalues_symmetric(assemble(KernelSpec(Part.REAL, 2), GridSpec(800))).top(10)
    np.testing.assert_allclose(disc, rev2_eigenvalues(10).values, rtol=1e-2)


def test_count_validation():
    for fn in (solve_cot_family, imv_eigenvalues, rev2_eigenvalues):
        with pytest.raises(ValueError):
            fn(0)
