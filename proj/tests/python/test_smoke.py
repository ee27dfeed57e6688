import math

import numpy as np
import pytest

import configdensity as cd


def disk_config(radius=1.0, half=2.0, spacing=1.0 / 64.0):
    return {
        "generator": {"kind": "ball", "params": {"delta": 1.0, "radius": radius, "center": [0.0, 0.0]}},
        "grid": {"lo": [-half, -half], "hi": [half, half], "spacing": spacing},
    }


def test_bessel_matches_known_values():
    assert cd.bessel_j0(0.0) == 1.0
    assert cd.bessel_j0(1.0) == pytest.approx(0.7651976865579666, abs=1e-15)


def test_field_round_trip_through_numpy(tmp_path):
    values = np.random.default_rng(0).random((8, 12))
    f = cd.DensityField(values, 0.5, origin=[1.0, -2.0])
    assert f.grid.shape[:2] == [8, 12]
    assert f.mass() == pytest.approx(values.sum() * 0.25)
    path = str(tmp_path / "f.dfield")
    cd.save_field(f, path)
    np.testing.assert_array_equal(cd.load_field(path).values(), values)


def test_invalid_values_raise_with_code():
    with pytest.raises(cd.Error) as info:
        cd.DensityField(np.full((4, 4), 2.0), 1.0)
    assert info.value.args[0] == "invariant_violation"


def test_lens_area_of_unit_disk():
    f = cd.generate(disk_config())
    lens = 2 * math.pi / 3 - math.sqrt(3) / 2
    assert cd.pair_correlation(f, 1.0) == pytest.approx(lens, rel=0.01)
    assert cd.pair_correlation(f, 1.0, method="spectral") == pytest.approx(lens, rel=0.01)


def test_triangle_and_colinear_are_positive_on_a_disk():
    f = cd.generate(disk_config(radius=2.0, half=3.0, spacing=0.125))
    assert cd.triangle_d1(f, 0.5) > 0.0
    assert cd.colinear_triple(f, 0.5) > 0.0


def test_sweep_reports_no_onset_beyond_the_diameter():
    config = disk_config(spacing=1.0 / 32.0)
    config.update({"functional": "pair", "t_min": 2.5, "t_max": 4.0, "t_steps": 4})
    result = cd.run_sweep(config)
    assert result["onset"] is None
    assert result["csv"].startswith("t,alpha,value,method,positive,elapsed_ns\n")
    assert result["csv"] == cd.run_sweep(config)["csv"]


def test_config_errors_name_the_field():
    config = disk_config()
    config.update({"functional": "pair", "t_min": -1.0, "t_max": 1.0, "t_steps": 2})
    with pytest.raises(cd.Error) as info:
        cd.run_sweep(config)
    assert info.value.args[0] == "config_error"
    assert "t_min" in info.value.args[1]


def test_banach_density_of_constant_field():
    f = cd.DensityField(np.full((64, 64), 0.3), 0.25)
    assert cd.banach_density(f, [2.0, 4.0, 8.0])["estimate"] == 0.3


def test_fast_verify_suite_passes():
    code, reports = cd.verify("fast")
    assert code == 0
    assert len(reports) >= 12
    assert all(r["passed"] for r in reports)
