import cmath
import math

import jsonschema
import pytest

import tritime


def test_quantize_table():
    row = tritime.quantize(1, r5=1.0)
    assert row["m0"] == 1.0
    assert row["verdict"]
    row = tritime.quantize(3, r4=0.5, r5=2.0, kappa=2.0, hbar=0.5)
    assert row["m0"] == 0.75
    assert row["e"] == 12.0


def test_small_verify_report_validates():
    report = tritime.verify(seed=3, states=3, n_samples=20000, slit_configs=2, causality_pairs=500)
    jsonschema.validate(report, tritime.report_schema())
    assert report["seed"] == 3
    assert all(c["verdict"] for c in report["claims"])
    ids = {c["id"] for c in report["claims"]}
    assert {"scalar.klein_gordon", "spin.g_factor", "worldline.null"} <= ids


def test_verify_is_deterministic():
    kwargs = dict(seed=5, states=2, n_samples=10000, slit_configs=1, causality_pairs=200)
    assert tritime.verify_json(threads=1, **kwargs) == tritime.verify_json(threads=3, **kwargs)


def test_measure_matches_target():
    m = tritime.measure("gaussian", n=200000, seed=9)
    assert len(m["counts"]) == 64
    assert sum(m["counts"]) == 200000
    assert m["bound_met"]
    assert tritime.measure("gaussian", n=1000, seed=9)["counts"] == tritime.measure("gaussian", n=1000, seed=9)["counts"]


def test_double_slit_fringes_and_control():
    r = tritime.double_slit(n=100000, seed=4)
    assert r["spacing"] == pytest.approx(5.0)
    assert r["fringe_deviation"] <= 0.02
    one = tritime.double_slit(n=100000, seed=4, slits="lower")
    assert one["visibility"] < 0.15
    assert math.isnan(one["fringe_deviation"])


def test_first_minimum_models():
    # d = 1, L = 100, lambda = 1: destructive at y = 50 only with paraxial path lengths.
    # Paraxial path lengths differ by exactly lambda / 2; only the 1/l amplitudes differ.
    l1 = 100 + 49.5**2 / 200
    l2 = 100 + 50.5**2 / 200
    oracle = (100 / l1 - 100 / l2) ** 2 / 4
    assert tritime.two_path_probability(1, 100, 1, 50, model="paraxial") == pytest.approx(oracle, rel=1e-9)
    assert tritime.two_path_probability(1, 100, 1, 50) > 0.01


def test_spin_surface():
    p = tritime.hopf(0.3, 1.1, 2.0)
    assert abs(abs(p["z1"]) ** 2 + abs(p["z2"]) ** 2 - 1) < 1e-14
    assert p["sn_residual"] < 1e-12
    assert tritime.g_factor()["g"] == "2"
    assert tritime.g_factor(area="disk")["g"] == "1"
    assert tritime.rotation_eigenvalue(0.5, 0.5, -0.5) == pytest.approx(complex(0, -0.5))
    assert cmath.isclose(tritime.rotation_eigenvalue(0.5, -0.5, 0.5), 0.5j)


def test_errors_map_to_python():
    with pytest.raises(tritime.GeometryError):
        tritime.double_slit(d=2.0, L=1.0)
    with pytest.raises(tritime.DomainError):
        tritime.quantize(1, r5=0.0)
    with pytest.raises(tritime.UnsupportedJ):
        tritime.rotation_eigenvalue(1.0, 0.5, 0.5)
    with pytest.raises(tritime.Error):
        tritime.measure("square")
