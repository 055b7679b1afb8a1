import json

import numpy as np
import pytest

from cobetween.graph import components
from cobetween.netgen import fit_exponent, gen_ba, gen_er, generate, mean_geodesic_multiplicity, scaling_study
from cobetween.spdag import build_sp_dag


def test_er_extremes():
    assert gen_er(10, 1.0, 3).n_e == 45
    g = gen_er(10, 0.0, 3)
    assert g.n_v == 10 and g.n_e == 0


def test_er_deterministic():
    assert gen_er(100, 0.05, 42).edges() == gen_er(100, 0.05, 42).edges()
    assert gen_er(100, 0.05, 42).edges() != gen_er(100, 0.05, 43).edges()


def test_er_argument_checks():
    with pytest.raises(ValueError):
        gen_er(1, 0.5, 0)
    with pytest.raises(ValueError):
        gen_er(5, 1.5, 0)


def test_ba_tree():
    g = gen_ba(5, 1, 0)
    assert g.n_e == 4 and components(g).component_count == 1


@pytest.mark.parametrize("n,m", [(10, 2), (50, 3), (20, 1), (12, 11)])
def test_ba_edge_count(n, m):
    assert gen_ba(n, m, 1).n_e == m + m * (n - m - 1)


def test_ba_connected_and_deterministic():
    g = gen_ba(200, 2, 7)
    assert components(g).component_count == 1
    assert g.edges() == gen_ba(200, 2, 7).edges()
    with pytest.raises(ValueError):
        gen_ba(3, 3, 0)


def test_generate_models():
    assert generate("tree", 30, {}, 1).n_e == 29
    with pytest.raises(ValueError):
        generate("lattice", 10, {}, 0)


def test_mean_multiplicity_definition():
    g = gen_er(40, 0.15, 2)
    sig = np.array([build_sp_dag(g, s).sigma for s in range(g.n_v)])
    assert mean_geodesic_multiplicity(g) == pytest.approx(np.mean(sig.sum(axis=0) / g.n_v), rel=1e-12)


def test_fit_exponent_exact_power():
    sizes = [10, 20, 40, 80]
    assert fit_exponent(sizes, [3 * n**0.25 for n in sizes]) == pytest.approx(0.25)


def test_tree_exponent_zero():
    # unique geodesics: every sigma is 1, so the statistic is 1 for any size
    rep = scaling_study("tree", [50, 100, 200], seed=3, time_compute=False)
    assert rep.mean_sigma == [1.0, 1.0, 1.0]
    assert rep.fitted_exponent == pytest.approx(0.0, abs=1e-12)


def test_report_json_schema():
    rep = scaling_study("ba", [30, 60], {"m": 2}, seed=1, workers=2)
    data = json.loads(rep.to_json())
    assert set(data) == {"model", "sizes", "mean_sigma", "fitted_exponent", "runtimes_sec", "workers"}
    assert data["workers"] == 2 and data["sizes"] == [30, 60]
    assert all(x > 0 for x in data["mean_sigma"])


def test_sizes_must_increase():
    with pytest.raises(ValueError):
        scaling_study("er", [200, 100])


def test_runtime_monotone_in_size():
    rep = scaling_study("er", [100, 200, 400, 800], {"mean_degree": 6}, seed=0, timing_repeats=3)
    assert all(b >= a for a, b in zip(rep.runtimes_sec, rep.runtimes_sec[1:]))


def test_ba_exponent_recorded():
    rep = scaling_study("ba", [100, 200, 400, 800], {"m": 2}, seed=0, time_compute=False)
    # regression baseline measured at build time (seed 0)
    assert np.isfinite(rep.fitted_exponent)
    assert rep.fitted_exponent == pytest.approx(BA_BASELINE, abs=1e-9)


BA_BASELINE = 0.09153219963137092
