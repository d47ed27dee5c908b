import csv
import io
import json
import math
import os
import subprocess

import pytest

import locallim


def test_sample_is_reproducible():
    a = locallim.sample("gnm", {"n": 20, "m": 15}, seed=3)
    b = locallim.sample("gnm", {"n": 20, "m": 15}, seed=3)
    assert a == b
    n, edges = a
    assert n == 20
    assert len(edges) == 15


def test_bad_sampler_parameters():
    with pytest.raises(ValueError):
        locallim.sample("gnm", {"n": 4, "m": 20})
    with pytest.raises(ValueError):
        locallim.sample("nosuch", {"n": 4})


def test_structure_stats_k4():
    k4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    s = locallim.structure_stats(4, k4)
    assert (s["v_Q"], s["v_C"], s["v_K"], s["e_K"]) == (4, 4, 4, 6)
    assert locallim.is_planar(4, k4)


def test_limits():
    assert locallim.borel_pmf(2) == pytest.approx(2 * math.exp(-2) / 2)
    assert locallim.gw_plane_prob(1.0, "1:2") == pytest.approx(math.exp(-1) / 2)
    mass, leftover = locallim.gw_ball_reference(1.0, 1, 1e-6)
    assert sum(p for _, p in mass) + leftover == pytest.approx(1.0)
    assert locallim.predicted_limit("III", 1.5) == "mixture(0.5, SK(1), GW(1))"


def test_census_of_a_path():
    census = dict(locallim.plane_census(5, [(1, 2), (2, 3), (3, 4), (4, 5)], 1))
    assert census == {"1:1": 2, "1:2": 3}


def test_suite_csv():
    text = locallim.run_suite(json.dumps({"suite": "CAYLEY_GW", "seed": 1}))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 1
    assert rows[0]["pass"] == "true"
    with pytest.raises(ValueError):
        locallim.run_suite(json.dumps({"suite": "NOPE"}))


def test_cli_binary(tmp_path):
    exe = os.environ.get("LOCALLIM_CLI")
    if not exe:
        pytest.skip("LOCALLIM_CLI not set")
    graph = tmp_path / "theta.txt"
    graph.write_text("4 5\n1 2\n1 3\n2 3\n1 4\n2 4\n")
    out = subprocess.run([exe, "decompose", str(graph)], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "4,5,0,0,4,4,2,3,4,0"
    bad = subprocess.run([exe, "sample", "gnm", "--n", "4", "--m", "20"], capture_output=True)
    assert bad.returncode == 2
