import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from volterra_spectra import CapacityExceeded, KernelSpec, Part, StructureMismatch
from volterra_spectra.discretizer import (GridSpec, Source, Spectrum, Structure, assemble,
                                          eigenvalues_antisymmetric, eigenvalues_symmetric,
                                          hs_norm, op_norm, sort_spectrum, spectrum,
                                          volterra_matrix)
from volterra_spectra.pencil import build_pencil, pencil_eigenvalues


def mat(part, n, m):
    return assemble(KernelSpec(part, n), GridSpec(m))


def test_grid_examples():
    g = GridSpec(4)
    np.testing.assert_allclose(g.nodes, [0.125, 0.375, 0.625, 0.875])
    assert g.h == 0.25
    with pytest.raises(ValueError):
        GridSpec(1)
    with pytest.raises(CapacityExceeded):
        GridSpec(10 ** 6)


def test_assemble_examples():
    re = mat(Part.REAL, 1, 4)
    np.testing.assert_array_equal(re.entries, np.full((4, 4), 0.125))
    assert re.structure is Structure.SYMMETRIC
    im = mat(Part.IMAG, 1, 2)
    np.testing.assert_array_equal(im.entries, [[0.0, -0.25], [0.25, 0.0]])
    v = mat(Part.FULL_V, 1, 3)
    assert np.all(np.diag(v.entries) == 0) and np.all(np.triu(v.entries) == 0)


def test_entries_read_only():
    with pytest.raises(ValueError):
        mat(Part.REAL, 1, 4).entries[0, 0] = 1.0


def test_structure_mismatch():
    with pytest.raises(StructureMismatch):
        eigenvalues_symmetric(mat(Part.IMAG, 2, 10))
    with pytest.raises(StructureMismatch):
        eigenvalues_antisymmetric(mat(Part.REAL, 2, 10))
    with pytest.raises(StructureMismatch):
        spectrum(mat(Part.FULL_V, 2, 10))


def test_re_v_rank_one():
    spec = eigenvalues_symmetric(mat(Part.REAL, 1, 200))
    assert spec.values[0] == pytest.approx(0.5, abs=1e-14)
    assert np.max(np.abs(spec.values[1:])) < 1e-14


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("part", [Part.REAL, Part.IMAG])
def test_symmetry_of_matrices(part, n):
    e = mat(part, n, 60).entries
    if part is Part.REAL:
        np.testing.assert_array_equal(e, e.T)
    else:
        np.testing.assert_array_equal(e, -e.T)


@pytest.mark.parametrize("m", [100, 500])
@pytest.mark.parametrize("n", range(1, 9))
def test_perron_top_eigenvalue_positive(n, m):
    assert eigenvalues_symmetric(mat(Part.REAL, n, m)).values[0] > 0


@pytest.mark.parametrize("n", range(1, 9))
def test_antisymmetric_spectrum_exactly_symmetric(n):
    for m in (99, 100):
        v = np.sort(eigenvalues_antisymmetric(mat(Part.IMAG, n, m)).values)
        np.testing.assert_array_equal(v, -v[::-1])


def test_sort_order():
    np.testing.assert_array_equal(sort_spectrum([0.1, -0.5, 0.5, -0.2]), [0.5, -0.5, -0.2, 0.1])


def test_spectrum_sorts_itself():
    s = Spectrum(np.array([0.1, -0.3, 0.2]), Source.DISCRETIZED)
    np.testing.assert_array_equal(s.values, [-0.3, 0.2, 0.1])
    assert s.norm == 0.3 and len(s) == 3


def test_hs_norm_re_v_exact():
    assert hs_norm(mat(Part.REAL, 1, 1000)) == 0.5


@pytest.mark.parametrize("n", [2, 3, 5])
def test_hs_norm_re_equals_im_for_n_at_least_2(n):
    m = 300
    assert hs_norm(mat(Part.REAL, n, m)) == pytest.approx(hs_norm(mat(Part.IMAG, n, m)), rel=1e-12)


def test_refinement_converges_quadratically():
    # top eigenvalue of Re V^2 against 1/(4 rho^2)
    from volterra_spectra.analytic import rho_eigenvalue
    exact = rho_eigenvalue()
    errs = [abs(eigenvalues_symmetric(mat(Part.REAL, 2, m)).values[0] - exact) for m in (100, 200, 400)]
    assert errs[0] > errs[1] > errs[2]
    assert 3.0 < errs[0] / errs[1] < 5.0
    # Richardson extrapolation gains digits
    e = [eigenvalues_symmetric(mat(Part.REAL, 2, m)).values[0] for m in (200, 400)]
    assert abs((4 * e[1] - e[0]) / 3 - exact) < errs[2] / 10


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_rayleigh_quotient_inside_spectral_hull(n, seed):
    m = 80
    a = mat(Part.REAL, n, m)
    vals = eigenvalues_symmetric(a).values
    f = np.random.default_rng(seed).standard_normal(m)
    rq = f @ a.entries @ f / (f @ f)
    assert vals.min() - 1e-14 <= rq <= vals.max() + 1e-14


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_pencil_agrees_with_discretization(n):
    part = Part.REAL if n % 2 else Part.IMAG
    exact = pencil_eigenvalues(build_pencil(n)).values
    disc = spectrum(mat(part, n, 1000)).top(len(exact))
    np.testing.assert_allclose(disc, exact, rtol=1e-2, atol=1e-9)


def test_op_norm_general_and_array():
    v = mat(Part.FULL_V, 1, 400)
    assert op_norm(v) == pytest.approx(2 / math.pi, rel=1e-2)
    assert op_norm(v.entries) == op_norm(v)


def test_volterra_matrix_parts():
    g = GridSpec(50)
    vh = volterra_matrix(g)
    np.testing.assert_allclose(np.diag(vh), g.h / 2)
    np.testing.assert_allclose(0.5 * (vh + vh.T), mat(Part.REAL, 1, 50).entries)
    r = mat(Part.REAL, 1, 50).entries
    np.testing.assert_allclose(r, 2 * r @ r, atol=1e-16)


def test_deterministic():
    a = eigenvalues_symmetric(mat(Part.REAL, 3, 300)).values
    b = eigenvalues_symmetric(mat(Part.REAL, 3, 300)).values
    np.testing.assert_array_equal(a, b)
