import math
import os
import subprocess

import pytest

import conelearn as cl


def test_sym_eig_diagonal():
    values, vectors = cl.sym_eig([[2.0, 0.0], [0.0, 5.0]])
    assert values == pytest.approx([2.0, 5.0])
    assert vectors[0][0] == pytest.approx(1.0)


def test_min_norm_point():
    point, weights = cl.min_norm_point([[1.0, 0.0], [0.0, 1.0]])
    assert point == pytest.approx([0.5, 0.5], abs=1e-9)
    assert sum(weights) == pytest.approx(1.0)


def test_worst_case_loss():
    assert cl.worst_case_loss(math.pi / 6) == pytest.approx(0.5)
    assert cl.worst_case_loss(math.pi / 2) == 1.0


def test_circumcenter_orthant():
    center, alpha = cl.circumcenter_of_generators(
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    )
    assert center == pytest.approx([1 / math.sqrt(3)] * 3, abs=1e-9)
    assert alpha == pytest.approx(math.acos(1 / math.sqrt(3)), abs=1e-9)


def test_cone_update_known_values():
    identity = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    w, _ = cl.cone_update([1.0, 1.0], identity, [0.0, 1.0, 0.0], 0.0, identity, 3)
    assert w == pytest.approx([4.0 / 9.0, 4.0 / 3.0], abs=1e-12)
    assert w[0] * w[1] <= math.exp(-0.5)


def test_cone_angle_formula():
    assert cl.cone_angle([1.0, 1.0]) == pytest.approx(math.pi / 4)
    assert cl.cone_angle([0.25, 1.0]) == pytest.approx(math.pi / 4)
    assert cl.cone_angle([3.0]) == pytest.approx(math.pi / 3)


def test_polyhedral_angle_bound():
    assert cl.polyhedral_angle_bound(1.0, 2) == pytest.approx(
        math.acos(1.0 / 2 ** 1.5), abs=1e-12
    )


def test_run_ellipsoidal_killer_within_bound():
    result = cl.run(
        {"policy": "ellipsoidal", "env": "killer", "d": 3, "T": 200, "alpha": math.pi / 4}
    )
    assert result["bound_ok"]
    assert result["cum_regret"] <= result["bound"]


def test_run_determinism():
    config = {"policy": "projected", "env": "random", "d": 3, "T": 150, "seed": 7}
    a = cl.run(config)
    b = cl.run(config)
    assert a["jsonl"] == b["jsonl"]


def test_error_taxonomy():
    with pytest.raises(cl.ConelearnError):
        cl.solve_linear([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])


def test_cli_runs_if_available():
    cli = os.environ.get("CONELEARN_CLI")
    if not cli:
        pytest.skip("CONELEARN_CLI not set")
    proc = subprocess.run(
        [cli, "run", "--policy", "ellipsoidal", "--env", "killer", "--d", "3",
         "--T", "100", "--seed", "1", "--assert-bounds"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert "cum_regret=" in proc.stdout
