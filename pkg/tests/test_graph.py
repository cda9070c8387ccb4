from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bagrowth as bg
from bagrowth.graph import star_graph, proposition_states


def test_new_complete_k3():
    s = bg.new_complete(3)
    assert s.num_vertices == 3
    assert all(d == 2 for d in s.degree)
    assert s.total_degree == 6


def test_new_complete_k2_and_k5():
    assert bg.new_complete(2).total_degree == 2
    assert len(bg.new_complete(2).edges) == 1
    assert bg.new_complete(5).total_degree == 20


def test_new_complete_rejects_small():
    with pytest.raises(bg.ConfigurationError):
        bg.new_complete(1)


def test_labels_skip_zero():
    s = bg.new_complete(3)
    rng = np.random.default_rng(0)
    for _ in range(3):
        bg.step_holme_kim(s, 1, rng)
    assert list(s.labels()) == [-3, -2, -1, 1, 2, 3]


def test_step_holme_kim_adds_m_edges():
    rng = np.random.default_rng(7)
    s = bg.new_complete(4)
    before = s.total_degree
    bg.step_holme_kim(s, 3, rng)
    assert s.degree[-1] == 3
    assert s.total_degree == before + 6
    s.check()


def test_step_holme_kim_endpoints_distinct():
    rng = np.random.default_rng(11)
    s = bg.new_complete(4)
    for _ in range(30):
        bg.step_holme_kim(s, 3, rng)
    s.check()  # simplicity implies per-step distinctness


def test_step_sequential_exhausts_on_clique():
    rng = np.random.default_rng(0)
    s = bg.new_complete(4)
    bg.step_sequential(s, 4, rng)
    assert sorted(s.adjacency[4]) == [0, 1, 2, 3]


def test_step_sequential_total_degree():
    rng = np.random.default_rng(3)
    s = bg.new_complete(5)
    for _ in range(20):
        bg.step_sequential(s, 2, rng)
    assert s.total_degree == 20 + 2 * 2 * 20
    s.check()


def test_generate_t0_is_clique():
    g = bg.generate(bg.RunConfig(m0=4, m=2, t=0, seed=1))
    assert g.num_vertices == 4
    assert len(g.edges) == 6


def test_generate_counts():
    g = bg.generate(bg.RunConfig(m0=3, m=1, t=10, seed=99))
    assert g.num_vertices == 13
    assert len(g.edges) == 13
    g.check()


def test_generate_deterministic():
    cfg = bg.RunConfig(m0=3, m=2, t=50, seed=42, scheme="holme-kim")
    a = bg.generate(cfg)
    b = bg.generate(cfg)
    assert np.array_equal(a.edges, b.edges)
    c = bg.generate(bg.RunConfig(m0=3, m=2, t=50, seed=43))
    assert not np.array_equal(a.edges, c.edges)


@pytest.mark.parametrize("scheme", ["holme-kim", "sequential"])
@pytest.mark.parametrize("m0,m,t", [(3, 1, 40), (5, 2, 40), (4, 4, 25)])
def test_generate_invariants(scheme, m0, m, t):
    g = bg.generate(bg.RunConfig(m0=m0, m=m, t=t, seed=5, scheme=scheme))
    g.check()
    assert g.total_degree == m0 * (m0 - 1) + 2 * m * t
    # vertices added at step i keep degree >= m forever
    assert all(g.degree[m0:] >= m)
    assert all(g.degree[:m0] >= m0 - 1)


def test_degree_histogram_k3():
    assert bg.degree_histogram(bg.new_complete(3)) == {2: 3}


def test_degree_histogram_after_one_step():
    rng = np.random.default_rng(1)
    s = bg.new_complete(3)
    bg.step_holme_kim(s, 1, rng)
    assert bg.degree_histogram(s) == {1: 1, 2: 2, 3: 1}


@pytest.mark.parametrize("scheme", ["holme-kim", "sequential"])
def test_degree_histogram_handshake(scheme):
    g = bg.generate(bg.RunConfig(m0=4, m=2, t=30, seed=8, scheme=scheme))
    hist = bg.degree_histogram(g)
    assert sum(hist.values()) == g.num_vertices
    assert sum(k * c for k, c in hist.items()) == 12 + 2 * 2 * 30


def test_enumeration_k3_m2():
    recv = bg.attachment_probability_exact(bg.new_complete(3), 2)
    assert recv == [Fraction(2, 3)] * 3


def test_enumeration_m1_is_plain_preferential():
    rng = np.random.default_rng(2)
    s = bg.new_complete(4)
    for _ in range(4):
        bg.step_holme_kim(s, 2, rng)
    recv = bg.attachment_probability_exact(s, 1)
    total = s.total_degree
    assert recv == [Fraction(int(k), total) for k in s.degree]


def test_enumeration_star_center_certain():
    recv = bg.attachment_probability_exact(star_graph(4), 2)
    assert recv[0] == 1
    assert recv[1:] == [Fraction(1, 4)] * 4
    assert sum(recv) == 2


def test_enumeration_bound():
    with pytest.raises(bg.EnumerationBoundError):
        bg.attachment_probability_exact(bg.new_complete(13), 2)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000), m0=st.integers(3, 5), steps=st.integers(0, 5))
def test_proposition_on_random_states(seed, m0, steps):
    # one-step receive probability is exactly m * k_i / total, any reachable state
    rng = np.random.default_rng(seed)
    s = bg.new_complete(m0)
    m = int(rng.integers(1, m0 + 1))
    for _ in range(steps):
        bg.step_holme_kim(s, m, rng)
    recv = bg.attachment_probability_exact(s, m)
    total = s.total_degree
    assert recv == [Fraction(m * int(k), total) for k in s.degree]
    assert sum(recv) == m


def test_verify_proposition_suite():
    results = bg.graph.verify_proposition()
    assert results
    assert all(r["ok"] for r in results)
    names = {r["state"] for r in results}
    assert names == {"K_3", "K_4", "K_5", "S_4", "K_4+2steps"}


def test_schemes_agree_in_law_at_m1():
    # with m = 1 both schemes attach purely preferentially
    trials = 4000
    counts = {"holme-kim": np.zeros(3), "sequential": np.zeros(3)}
    step = {"holme-kim": bg.step_holme_kim, "sequential": bg.step_sequential}
    for scheme in counts:
        rng = np.random.default_rng(77)
        for _ in range(trials):
            s = bg.new_complete(3)
            step[scheme](s, 1, rng)
            counts[scheme][s.adjacency[3][0]] += 1
    for scheme, c in counts.items():
        np.testing.assert_allclose(c / trials, [1 / 3] * 3, atol=0.03)


def test_sequential_k3_pairs_uniform():
    # K_3, m=2: by symmetry each unordered endpoint pair has probability 1/3
    rng = np.random.default_rng(5)
    seen = {}
    for _ in range(3000):
        s = bg.new_complete(3)
        bg.step_sequential(s, 2, rng)
        pair = tuple(sorted(s.adjacency[3]))
        seen[pair] = seen.get(pair, 0) + 1
    freqs = np.array(sorted(seen.values())) / 3000
    assert len(seen) == 3
    np.testing.assert_allclose(freqs, 1 / 3, atol=0.03)


def test_exports(tmp_path):
    g = bg.generate(bg.RunConfig(m0=3, m=1, t=5, seed=3))
    edge_path = tmp_path / "g.edges"
    hist_path = tmp_path / "g.hist.csv"
    bg.graph.write_edge_list(g, edge_path, header="# meta")
    bg.graph.write_degree_histogram(g, hist_path, header="# meta")
    lines = edge_path.read_text().strip().split("\n")
    assert lines[0] == "# meta"
    assert len(lines) == 1 + 8  # 3 initial + 5 grown edges
    first_edge = lines[1].split()
    assert first_edge == ["-3", "-2"]
    hist = hist_path.read_text().strip().split("\n")
    assert hist[1] == "k,count"
    total = sum(int(r.split(",")[1]) for r in hist[2:])
    assert total == 8
