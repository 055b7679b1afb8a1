import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cobetween.dependency import accumulate_dependencies
from cobetween.engine import (
    BACKENDS,
    accumulate_pair_contributions,
    compute_all,
    cond_matrix,
    corr_matrix,
)
from cobetween.graph import Graph, parse_edgelist
from cobetween.netgen import gen_ba, gen_er
from cobetween.oracle import brute_centrality
from cobetween.pairs import PairAccumulator, PairMap
from cobetween.spdag import build_sp_dag

import corpus

P4 = "a b\nb c\nc d"
P5 = "a b\nb c\nc d\nd e"


def single_source(g, s):
    acc = PairAccumulator()
    dag = build_sp_dag(g, s)
    accumulate_pair_contributions(dag, accumulate_dependencies(dag), acc)
    return acc


def test_stage3_path4():
    acc = single_source(parse_edgelist(P4), 0)
    assert list(acc.items()) == [(1, 2, 1.0)]


def test_stage3_cycle4():
    assert len(single_source(corpus.cycle(4), 0)) == 0


def test_stage3_path5():
    acc = single_source(parse_edgelist(P5), 0)
    assert acc[1, 2] == 2.0 and acc[1, 3] == 1.0 and acc[2, 3] == 1.0
    assert len(acc) == 3


def test_stage3_rejects_mismatched_sources():
    g = corpus.path(4)
    with pytest.raises(ValueError):
        accumulate_pair_contributions(
            build_sp_dag(g, 0), accumulate_dependencies(build_sp_dag(g, 1)), PairAccumulator()
        )


def test_compute_path4(backend):
    r = compute_all(parse_edgelist(P4), backend=backend)
    assert r.betweenness.tolist() == [0, 2, 2, 0]
    assert list(r.cobetweenness.items()) == [(1, 2, 1.0)]


def test_compute_cycle4(backend):
    r = compute_all(corpus.cycle(4), backend=backend)
    assert r.betweenness.tolist() == [0.5] * 4
    assert len(r.cobetweenness) == 0


def test_corr_and_cond_path4():
    r = compute_all(parse_edgelist(P4))
    assert corr_matrix(r)[1, 2] == 0.5
    c = cond_matrix(r)
    assert c[1, 2] == 0.5 and c[2, 1] == 0.5
    assert corr_matrix(r)[0, 1] == 0.0


def test_cond_path5_asymmetric():
    c = cond_matrix(compute_all(parse_edgelist(P5)))
    b, cc, d = 1, 2, 3
    assert c[d, cc] == pytest.approx(0.5, abs=1e-15)
    assert c[cc, d] == pytest.approx(2 / 3, abs=1e-15)


def test_cond_zero_when_given_has_no_betweenness():
    r = compute_all(corpus.star(4))
    c = cond_matrix(r)
    for u in range(5):
        for v in range(1, 5):
            assert c[u, v] == 0.0


def test_ordered_convention_doubles(backend):
    g = gen_ba(30, 2, 4)
    un = compute_all(g, "unordered", backend=backend)
    od = compute_all(g, "ordered", backend=backend)
    np.testing.assert_array_equal(od.betweenness, 2 * un.betweenness)
    np.testing.assert_array_equal(od.cob_dense(), 2 * un.cob_dense())
    for fn in (corr_matrix, cond_matrix):
        np.testing.assert_allclose(fn(od).to_dense(g.n_v), fn(un).to_dense(g.n_v), rtol=1e-15)


def test_bad_arguments():
    g = corpus.path(3)
    with pytest.raises(ValueError):
        compute_all(g, convention="sideways")
    with pytest.raises(ValueError):
        compute_all(g, workers=0)
    with pytest.raises(ValueError):
        compute_all(g, backend="fortran")


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled core not built")
@pytest.mark.parametrize("name,g", corpus.random_graphs(25) + corpus.weighted_graphs())
def test_backends_agree(name, g):
    a = compute_all(g, backend="cython")
    b = compute_all(g, backend="python")
    np.testing.assert_allclose(a.betweenness, b.betweenness, atol=1e-9)
    np.testing.assert_allclose(a.cob_dense(), b.cob_dense(), atol=1e-9)


@pytest.mark.parametrize("name,g", corpus.weighted_graphs())
def test_weighted_matches_oracle(name, g, backend):
    r = compute_all(g, backend=backend)
    o = brute_centrality(g)
    np.testing.assert_allclose(r.betweenness, o.betweenness, atol=1e-9)
    np.testing.assert_allclose(r.cob_dense(), o.cob_dense(), atol=1e-9)


def test_disconnected_graph():
    g = parse_edgelist("a b\nb c\nx y\ny z\nz w")
    r = compute_all(g)
    o = brute_centrality(g)
    np.testing.assert_allclose(r.betweenness, o.betweenness)
    np.testing.assert_allclose(r.cob_dense(), o.cob_dense())
    assert r.betweenness[g.index("b")] == 1.0


def test_isolated_vertices(backend):
    r = compute_all(gen_er(10, 0.0, 1), backend=backend)
    assert not r.betweenness.any() and len(r.cobetweenness) == 0


def test_workers_python_processes():
    g = gen_er(25, 0.2, 8)
    a = compute_all(g, workers=1, backend="python")
    b = compute_all(g, workers=3, backend="python")
    np.testing.assert_allclose(a.cob_dense(), b.cob_dense(), atol=1e-9)


def test_hashed_accumulator_path(monkeypatch):
    if "cython" not in BACKENDS:
        pytest.skip("compiled core not built")
    import cobetween.engine as eng

    g = gen_er(40, 0.12, 2)
    dense = compute_all(g, workers=2)
    monkeypatch.setattr(eng, "DENSE_BUDGET_BYTES", 0)
    hashed = compute_all(g, workers=2)
    np.testing.assert_allclose(dense.cob_dense(), hashed.cob_dense(), atol=1e-12)


def test_bridge_vertices_have_empty_rows():
    # 5 and 6 each sit only in the middle of 7-x-11, a length-2 geodesic
    g = parse_edgelist("1 5\n1 7\n1 11\n1 6\n5 7\n5 11\n6 7\n6 11\n1 2\n2 3")
    r = compute_all(g)
    rows = r.cobetweenness.row_sums(g.n_v)
    for lab in ("5", "6"):
        assert r.betweenness[g.index(lab)] > 0
        assert rows[g.index(lab)] == 0
    assert rows[g.index("1")] > 0
    np.testing.assert_allclose(rows, brute_centrality(g).cobetweenness.row_sums(g.n_v))


def test_pair_accumulator_merge_properties():
    rng = np.random.default_rng(0)
    accs = []
    for _ in range(3):
        a = PairAccumulator()
        for _ in range(50):
            u, v = rng.choice(12, 2, replace=False)
            a.add(int(u), int(v), float(rng.integers(1, 5)))
        accs.append(a)
    x, y, z = accs
    np.testing.assert_array_equal((x + y).to_dense(12), (y + x).to_dense(12))
    np.testing.assert_array_equal(((x + y) + z).to_dense(12), (x + (y + z)).to_dense(12))
    assert (x + y)[3, 5] == x[5, 3] + y[3, 5]


def test_pair_map_roundtrip_dense():
    m = np.array([[0, 1, 0], [1, 0, 2.5], [0, 2.5, 0]])
    pm = PairMap.from_dense(m)
    assert list(pm.items()) == [(0, 1, 1.0), (1, 2, 2.5)]
    np.testing.assert_array_equal(pm.to_dense(3), m)
    d = PairMap.from_dense(np.array([[0, 1.0], [3.0, 0]]), symmetric=False)
    assert d[0, 1] == 1.0 and d[1, 0] == 3.0


def test_relabel_invariance():
    g = gen_ba(35, 2, 9)
    perm = np.random.default_rng(1).permutation(g.n_v).tolist()
    r1 = compute_all(g)
    r2 = compute_all(g.relabel(perm))
    np.testing.assert_allclose(r2.betweenness[perm], r1.betweenness, atol=1e-9)
    np.testing.assert_allclose(r2.cob_dense()[np.ix_(perm, perm)], r1.cob_dense(), atol=1e-9)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(2, 14))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges([str(i) for i in range(n)], [(u, v, 1.0) for (u, v), k in zip(pairs, mask) if k])


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_property_oracle_and_bounds(g):
    r = compute_all(g)
    o = brute_centrality(g)
    np.testing.assert_allclose(r.betweenness, o.betweenness, atol=1e-9)
    cob = r.cob_dense()
    np.testing.assert_allclose(cob, o.cob_dense(), atol=1e-9)
    assert np.array_equal(cob, cob.T)
    bound = np.minimum.outer(r.betweenness, r.betweenness)
    off = ~np.eye(g.n_v, dtype=bool)
    assert np.all(cob[off] <= bound[off] + 1e-12)
    for vals in (corr_matrix(r).values_array, cond_matrix(r).values_array):
        assert np.all((vals >= 0) & (vals <= 1 + 1e-12))


def test_betweenness_matches_networkx(backend):
    nx = pytest.importorskip("networkx")
    from corpus import random_graphs

    for name, g in random_graphs(count=30, seed=7):
        h = nx.Graph()
        h.add_nodes_from(range(g.n_v))
        h.add_edges_from((u, v) for u, v, _ in g.edges())
        ref = nx.betweenness_centrality(h, normalized=False)
        got = compute_all(g, backend=backend).betweenness
        np.testing.assert_allclose(got, [ref[i] for i in range(g.n_v)], rtol=0, atol=1e-9, err_msg=name)
