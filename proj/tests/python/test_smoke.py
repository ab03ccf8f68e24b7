"""Smoke tests for the python bindings."""

import math

import pytest

cmray = pytest.importorskip("cmray")


def test_exact_helpers():
    assert cmray.class_number(-20) == 2
    assert cmray.class_number(-23) == 3
    assert cmray.kronecker_symbol(-20, 2) == 0
    assert cmray.kronecker_symbol(-31, 2) == 1
    assert cmray.kronecker_symbol(-20, 7) == 1
    assert cmray.ray_class_order(-20, 7) == 36
    assert cmray.degree_kn_over_h(-20, 7) == 18
    assert cmray.degree_ring_over_h(-20, 3) == 2
    assert cmray.collapses_to_half(-31, 10)
    assert not cmray.collapses_to_half(-20, 10)
    assert cmray.np_nm(12, 5) == (1, 2, 1, 3)
    c = cmray.choose_t(18)
    assert c["t"] == 5 and c["N_plus"] == 3 and c["N_minus"] == 9


def test_reports():
    f = cmray.field_info(-20)
    assert f["class_number"] == 2
    r = cmray.rayclass(-20, 7, check=True)
    assert r["order"] == "36"
    assert r["ring_subgroup_order"] == 3
    t = cmray.invariant_table(-20, 5, digits=50)
    assert len(t["entries"]) == 20
    float(t["entries"][0]["log_abs_siegel"])  # decimal strings parse


def test_weber_consistency():
    h = cmray.weber_value(-20, 1, 7, digits=60)
    f = cmray.fricke_value(-20, 0, 1, 1, 7, digits=60)
    assert math.isclose(float(h[0]), float(f[0]), rel_tol=1e-12)
    assert math.isclose(float(h[1]), float(f[1]), rel_tol=1e-12)
    x = cmray.xi_value(-20, 5, 2, digits=50)
    assert float(x[0]) != 0.0


def test_verify_suites():
    rep = cmray.verify("case-constants", dk=-20, N=5, digits=60)
    assert rep["pass"]
    assert rep["results"][0]["expected"] == -2
    rep = cmray.verify("table1", max_n=60)
    assert rep["pass"]
    rep = cmray.verify("main", dk=-20, N=5, digits=60)
    assert rep["pass"]
    assert rep["results"][0]["verdict"] == "generated"
