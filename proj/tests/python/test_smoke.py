"""Smoke tests for the python bindings."""

import math

import pytest

import waveset as ws


UNIT = ws.Region([[(0, 0), (1, 0), (1, 1), (0, 1)]])
Z2 = ws.Lattice([[1, 0], [0, 1]])


def test_area_and_booleans():
    assert UNIT.area == pytest.approx(1.0, abs=1e-12)
    other = ws.Region.rect(0.5, 0.0, 1.5, 1.0)
    assert ws.region_intersect(UNIT, other).area == pytest.approx(0.5, abs=1e-12)
    assert ws.region_union(UNIT, other).area == pytest.approx(1.5, abs=1e-12)
    assert ws.region_subtract(UNIT, other).area == pytest.approx(0.5, abs=1e-12)


def test_affine_scaling():
    img = ws.affine_image(UNIT, [[2, 0], [0, 3]])
    assert img.area == pytest.approx(6.0, abs=1e-12)


def test_indicator_fourier():
    assert ws.indicator_fourier(UNIT, 0.0, 0.0) == pytest.approx(1.0)
    assert abs(ws.indicator_fourier(UNIT, 1.0, 0.0)) < 1e-14
    assert abs(ws.indicator_fourier(UNIT, 0.5, 0.0)) == pytest.approx(
        2.0 / math.pi, abs=1e-12
    )


def test_expansive():
    assert ws.is_expansive([[2, 0], [0, 3]])
    assert not ws.is_expansive([[2, 1], [0, 0.5]])


def test_dual_lattice_and_points():
    dual = ws.dual_lattice(ws.Lattice([[2, 0], [0, 1]]))
    assert dual.basis[0][0] == pytest.approx(0.5)
    window = ws.Region.rect(-1.5, -1.5, 1.5, 1.5)
    assert len(ws.lattice_points(Z2, window)) == 9


def test_construct_diag_rot_j1():
    trace = ws.construct_diag_rot(1)
    assert trace.result.area == pytest.approx(8.0 / 9.0, abs=1e-12)
    assert trace.result.area + trace.residual_area == pytest.approx(1.0, abs=1e-9)


def test_additive_tiling_check():
    window = ws.Region.rect(-2, -2, 2, 2)
    rep = ws.check_additive_tiling(UNIT, Z2, window, 1e-9)
    assert rep.passed
    bad = ws.check_additive_tiling(ws.Region.rect(0, 0, 1.5, 1), Z2, window, 1e-9)
    assert not bad.passed
    assert bad.total_overlap == pytest.approx(8.0, abs=1e-6)


def test_spectral_routes_agree():
    gram = ws.check_spectral(UNIT, Z2, "gram-matrix", 3, 1e-6)
    fug = ws.check_spectral(UNIT, Z2, "fuglede-tiling", 3, 1e-6)
    assert gram.passed and fug.passed


def test_end_to_end_small_wavelet_set():
    trace = ws.construct_diag_rot(6)
    window = ws.Region.rect(-2, -2, 3, 3)
    rep = ws.check_additive_tiling(trace.result, Z2, window, 1e-3)
    assert rep.passed
    spec = ws.DilationSpec(4, [[2, 0], [0, 3]], (-8, 8))
    target = ws.Region.rect(1.6, 0.1, 1.9, 0.4)
    defect = ws.parseval_test(trace.result, spec, Z2, target, 8)
    assert 0.0 < defect < 0.2


def test_monte_carlo_deterministic():
    window = ws.Region.rect(0, 0, 2, 2)
    est1, err1 = ws.monte_carlo_area(UNIT, window, 50000, 3)
    est2, err2 = ws.monte_carlo_area(UNIT, window, 50000, 3)
    assert est1 == est2 and err1 == err2
    assert abs(est1 - 1.0) <= 4 * err1


def test_construction_error_surfaces():
    e = ws.Region.rect(-0.5, -0.5, 0.5, 0.5)
    spec = ws.DilationSpec(1, [[2, 0], [0, 2]], (-6, 6), "powers-then-rotations")
    with pytest.raises(ws.PreconditionError):
        ws.dls_exchange(e, e, spec, Z2, 10, 1e-6)
