import math
from pathlib import Path

import numpy as np
import pytest

import relreg

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def test_worlds_listed():
    names = [w[0] for w in relreg.worlds()]
    assert len(names) == 8
    assert "terrain_2d" in names and "box7d" in names


def test_l2_heuristic():
    assert relreg.l2_heuristic(np.zeros(2), np.array([3.0, 4.0])) == pytest.approx(5.0)


def test_uniform_edge_cost_is_length():
    env = relreg.build_environment("multi_obstacle_2d")
    a, b = np.array([0.5, 0.5]), np.array([1.5, 1.5])
    assert relreg.edge_cost(env, a, b) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_step_limit_examples():
    s = relreg.StepLimitInputs(g_gp=8.0, h_vg=4.0, cos_theta=-1.0, c_vp=1.0, epsilon=10.0)
    assert relreg.step_limit_uniform(s) == pytest.approx(6.0)
    assert relreg.step_limit_general(s) == pytest.approx(6.0)
    s.epsilon = 0.9
    assert relreg.step_limit_uniform(s) == pytest.approx(0.9)
    ahead = relreg.StepLimitInputs(g_gp=8.0, h_vg=4.0, cos_theta=1.0, c_vp=2.0, epsilon=10.0)
    assert relreg.step_limit_general(ahead) == pytest.approx(4.0 / 3.0)


def test_plan_finds_valid_path():
    env = relreg.build_environment("potential_2d")
    cfg = relreg.PlannerConfig()
    cfg.max_iterations = 1500
    cfg.seed = 4
    res = relreg.plan(env, cfg)
    assert res.solved
    path = res.best_path
    assert np.allclose(path[0], env.start)
    assert env.in_goal(path[-1])
    assert all(env.is_motion_valid(p, q) for p, q in zip(path, path[1:]))


def test_plan_is_deterministic():
    env = relreg.build_environment("multi_obstacle_2d")
    cfg = relreg.PlannerConfig()
    cfg.max_iterations = 800
    cfg.sampler = "informed"
    a = relreg.plan(env, cfg)
    b = relreg.plan(env, cfg)
    assert a.best_cost == b.best_cost
    assert a.vertices == b.vertices


def test_bad_config_raises():
    cfg = relreg.PlannerConfig()
    with pytest.raises(ValueError):
        cfg.sampler = "nope"
    env = relreg.build_environment("terrain_2d")
    with pytest.raises(relreg.ConfigError):
        relreg.plan(env, cfg)  # no budget


def test_benchmark_from_config(tmp_path):
    cfg = relreg.load_config(CONFIGS / "quick.yaml")
    cfg.trials = 2
    cfg.out_dir = str(tmp_path / "out")
    out = relreg.run_benchmark(cfg, write=True)
    labels = [s["label"] for s in out["summary"]["samplers"]]
    assert labels == ["uniform", "informed", "relevant"]
    assert (tmp_path / "out" / "records.csv").exists()
    assert all("elapsed_ms" not in r for r in out["rows"])
