import math
import random
from collections import deque
from itertools import combinations

from cnpkit.features import (
    betweenness_centrality,
    clustering_coefficient,
    closeness_centrality,
    degree_centrality,
    feature_matrix,
    format_features,
    normalize,
    parse_features,
)
from cnpkit.graph import graph_from_edges
from cnpkit.testutil import random_connected_graph, random_graph


def star(leaves):
    return graph_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _bfs_all(g, s):
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def _betweenness_oracle(g):
    """Enumerate shortest paths per pair by DAG counting from scratch."""

    out = [0.0] * g.n
    for u, w in combinations(range(g.n), 2):
        du = _bfs_all(g, u)
        if w not in du:
            continue
        dw = _bfs_all(g, w)
        d = du[w]
        # sigma[x] = number of shortest u-x paths, via dp in distance order
        sigma = {u: 1}
        for x in sorted(du, key=du.get):
            if x == u:
                continue
            sigma[x] = sum(sigma[y] for y in g.adj[x] if du.get(y) == du[x] - 1)
        total = sigma[w]
        sig_w = {w: 1}
        for x in sorted(dw, key=dw.get):
            if x == w:
                continue
            sig_w[x] = sum(sig_w[y] for y in g.adj[x] if dw.get(y) == dw[x] - 1)
        for v in range(g.n):
            if v in (u, w) or v not in du or v not in dw:
                continue
            if du[v] + dw[v] == d:
                # paths through v = paths u->v times paths v->w
                out[v] += sigma[v] * sig_w[v] / total
    return out


class TestCloseness:
    def test_star_center(self):
        assert closeness_centrality(star(4))[0] == 1.0

    def test_star_leaf(self):
        vals = closeness_centrality(star(4))
        assert math.isclose(vals[1], 4 / 7)

    def test_isolated_node_zero(self):
        g = graph_from_edges(3, [(0, 1)])
        assert closeness_centrality(g)[2] == 0.0

    def test_matches_distance_sum_oracle(self):
        rng = random.Random(21)
        for _ in range(20):
            g = random_connected_graph(rng, n_max=25)
            vals = closeness_centrality(g)
            for v in range(g.n):
                dist = _bfs_all(g, v)
                expect = (g.n - 1) / sum(dist.values())
                assert abs(vals[v] - expect) < 1e-12


class TestBetweenness:
    def test_path_middle(self):
        g = graph_from_edges(3, [(0, 1), (1, 2)])
        assert math.isclose(betweenness_centrality(g)[1], 1.0)

    def test_cycle4(self):
        g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        for v, x in enumerate(betweenness_centrality(g)):
            assert math.isclose(x, 0.5), (v, x)

    def test_complete_graph_zero(self):
        g = graph_from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
        assert all(abs(x) < 1e-12 for x in betweenness_centrality(g))

    def test_matches_pair_enumeration_oracle(self):
        rng = random.Random(22)
        for _ in range(15):
            g = random_graph(rng, n_max=20, n_min=5)
            got = betweenness_centrality(g)
            want = _betweenness_oracle(g)
            for a, b in zip(got, want):
                assert abs(a - b) < 1e-9


class TestDegreeAndClustering:
    def test_degree_examples(self):
        k4 = graph_from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
        assert degree_centrality(k4) == [3.0] * 4
        g = graph_from_edges(2, [])
        assert degree_centrality(g) == [0.0, 0.0]

    def test_triangle_clustering_one(self):
        k3 = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
        assert clustering_coefficient(k3) == [1.0, 1.0, 1.0]

    def test_star_center_zero(self):
        assert clustering_coefficient(star(4))[0] == 0.0

    def test_matches_triangle_counting_oracle(self):
        rng = random.Random(23)
        for _ in range(20):
            g = random_graph(rng, n_max=25)
            nbr = g.neighbor_sets()
            got = clustering_coefficient(g)
            for v in range(g.n):
                d = len(g.adj[v])
                if d < 2:
                    assert got[v] == 0.0
                    continue
                tri = sum(
                    1 for a, b in combinations(g.adj[v], 2) if b in nbr[a]
                )
                assert abs(got[v] - 2 * tri / (d * (d - 1))) < 1e-12


class TestNormalize:
    def test_midpoint_rank(self):
        raw = [float(i) for i in range(100)]
        out = normalize(raw, 100)
        assert math.isclose(out[49], 0.0)

    def test_four_distinct(self):
        out = normalize([10.0, 20.0, 30.0, 40.0], 4)
        assert out == [-0.25, 0.0, 0.25, 0.5]

    def test_all_equal_stable_ties(self):
        out = normalize([7.0, 7.0, 7.0], 3)
        assert math.isclose(out[0], -1 / 6)
        assert math.isclose(out[1], 1 / 6)
        assert math.isclose(out[2], 1 / 2)

    def test_monotone(self):
        rng = random.Random(24)
        raw = [rng.random() for _ in range(50)]
        out = normalize(raw, 50)
        for i in range(50):
            for j in range(50):
                if raw[i] < raw[j]:
                    assert out[i] < out[j]

    def test_range(self):
        rng = random.Random(25)
        raw = [rng.random() for _ in range(33)]
        out = normalize(raw, 33)
        assert all(-0.5 < x <= 0.5 for x in out)


class TestFeatureMatrix:
    def test_shape_and_export_round_trip(self):
        rng = random.Random(26)
        g = random_graph(rng, n_max=20, n_min=8)
        fm = feature_matrix(g)
        assert fm.n == g.n
        text = format_features(g, fm)
        labels, rows = parse_features(text)
        assert labels == list(g.labels)
        # write -> read -> write is byte-identical
        fm2_text = "\n".join(
            f"{lab} " + " ".join(format(x, '.9g') for x in row)
            for lab, row in zip(labels, rows)
        ) + "\n"
        assert fm2_text == text

    def test_deterministic_export(self):
        rng = random.Random(27)
        g = random_graph(rng, n_max=25, n_min=10)
        a = format_features(g, feature_matrix(g))
        b = format_features(g, feature_matrix(g))
        assert a == b
