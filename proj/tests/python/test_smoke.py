import math

import numpy as np
import pytest

import greedy_opt


def quad_config(**algorithm):
    algo = {"kind": "GGA_ADAPTIVE", "t": 1.0, "b": 0.5}
    algo.update(algorithm)
    return {
        "schema_version": 1,
        "objective": {"kind": "quadratic", "target": [1.0, 2.0]},
        "dictionary": {"kind": "coordinate"},
        "algorithm": algo,
        "stop": {"max_iter": 200},
    }


def test_dual_norm():
    assert greedy_opt.dual_norm(np.array([1.0, 2.0])) == pytest.approx(math.sqrt(5.0))
    expected = (3.0 ** 1.5 + 4.0 ** 1.5) ** (1.0 / 1.5)
    assert greedy_opt.dual_norm(np.array([3.0, -4.0]), p=3.0) == pytest.approx(expected)
    with pytest.raises(greedy_opt.ValidationError):
        greedy_opt.dual_norm(np.array([1.0]), p=1.0)


def test_e_d_coordinate_and_sphere():
    r = greedy_opt.e_d(np.array([1.0, -3.0, 2.0]), np.eye(3))
    assert r["value"] == 3.0
    assert (r["index"], r["sign"]) == (1, -1)
    s = greedy_opt.e_d(np.array([3.0, 4.0]))
    assert s["value"] == pytest.approx(5.0)
    assert np.allclose(s["atom"], [0.6, 0.8])


def test_run_converges():
    out = greedy_opt.run(quad_config())
    assert out["status"] in ("STOPPED_GRADIENT", "MAX_ITER")
    assert out["e"][-1] < 1e-6
    assert np.allclose(out["g"], [1.0, 2.0], atol=1e-3)
    assert out["manifest"]["schema_version"] == 1
    assert out["trace_csv"].startswith("m,")


def test_run_is_deterministic():
    a = greedy_opt.run(quad_config(kind="GEGA", mode="FIRST_ABOVE", t=0.5))
    b = greedy_opt.run(quad_config(kind="GEGA", mode="FIRST_ABOVE", t=0.5))
    assert a["trace_csv"] == b["trace_csv"]


def test_validation_errors():
    with pytest.raises(greedy_opt.ValidationError, match=r"b must be in \(0,1\)"):
        greedy_opt.run(quad_config(b=1.0))
    with pytest.raises(greedy_opt.GreedyOptError):
        greedy_opt.run(quad_config(majorant={"gamma": 1.0, "q": 3.0}))


def test_majorant_violation():
    cfg = quad_config()
    cfg["objective"]["majorant_scale"] = 0.25
    with pytest.raises(greedy_opt.MajorantViolation):
        greedy_opt.run(cfg)


def test_fit_power_law():
    ms = list(range(1, 101))
    fit = greedy_opt.fit_power_law(ms, [2.0 * m ** -0.5 for m in ms])
    assert fit["exponent"] == pytest.approx(-0.5, abs=1e-12)


def test_verify_passes():
    outcomes = greedy_opt.verify()
    assert len(outcomes) == 12
    assert all(o["passed"] for o in outcomes), [o for o in outcomes if not o["passed"]]
