import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schur_cheeger import (
    CutPair,
    as_vertex_set,
    boundary_weight,
    build_graph,
    cut_weight,
    generators,
    parse_edgelist,
    phi_set,
    read_edgelist,
    volume,
    write_edgelist,
)
from schur_cheeger.errors import (
    EmptyOrFullSet,
    GraphError,
    NonPositiveWeight,
    OverlappingSets,
    SelfLoop,
)


def test_unit_triangle(triangle):
    assert triangle.n == 3
    assert triangle.degree.tolist() == [2, 2, 2]
    assert triangle.total_volume == 6


def test_parallel_edges_merge():
    G = build_graph([(0, 1, 2), (0, 1, 3)])
    assert G.edges == [(0, 1, 5.0)]
    G = build_graph([(1, 0, 2), (0, 1, 3)])
    assert G.edges == [(0, 1, 5.0)]


def test_rejects_bad_input():
    with pytest.raises(SelfLoop):
        build_graph([(0, 0, 1)])
    with pytest.raises(NonPositiveWeight):
        build_graph([(0, 1, 0)])
    with pytest.raises(NonPositiveWeight):
        build_graph([(0, 1, -2.5)])


def test_string_ids_keep_first_appearance():
    G = build_graph([("x", "a", 1), ("a", "m", 2)])
    assert G.labels == ("x", "a", "m")
    assert G.index_of["m"] == 2


def test_integer_ids_compacted_in_order():
    G = build_graph([(10, 3, 1.0), (3, 7, 1.0)])
    assert G.labels == (3, 7, 10)
    assert G.edges == [(0, 1, 1.0), (0, 2, 1.0)]


@pytest.mark.parametrize("S, expected", [([0], 2), ([0, 1, 2], 6)])
def test_volume_triangle(triangle, S, expected):
    assert volume(triangle, S) == expected


def test_volume_path_middle(path3):
    assert volume(path3, [1]) == 2


def test_cut_weight_examples(triangle, path3):
    assert cut_weight(triangle, [0], [1]) == 1
    assert cut_weight(triangle, [0], [1, 2]) == 2
    assert cut_weight(path3, [0], [2]) == 0
    with pytest.raises(OverlappingSets):
        cut_weight(triangle, [0, 1], [1])


def test_phi_examples(triangle, cycle4):
    assert phi_set(triangle, [0]) == 1.0
    assert phi_set(cycle4, [0, 1]) == 0.5
    n = 10
    assert phi_set(generators.cycle(n), range(n // 2)) == pytest.approx(2 / n, rel=1e-12)
    with pytest.raises(EmptyOrFullSet):
        phi_set(triangle, [])
    with pytest.raises(EmptyOrFullSet):
        phi_set(triangle, [0, 1, 2])


def test_vertex_set_normalizes(triangle):
    assert as_vertex_set(triangle, [2, 0, 2]).tolist() == [0, 2]
    with pytest.raises(GraphError):
        as_vertex_set(triangle, [3])


def test_cut_pair_validation():
    CutPair(np.array([0]), np.array([1]))
    with pytest.raises(OverlappingSets):
        CutPair(np.array([0, 1]), np.array([1]))
    with pytest.raises(EmptyOrFullSet):
        CutPair(np.array([], dtype=int), np.array([1]))


def test_edgelist_roundtrip(tmp_path):
    G = parse_edgelist("# comment\n0 1 1.5\n\n1 2 2\n2 0 0.25\n")
    assert G.edges == [(0, 1, 1.5), (0, 2, 0.25), (1, 2, 2.0)]
    p = tmp_path / "g.txt"
    write_edgelist(G, p)
    H = read_edgelist(p)
    assert H.edges == G.edges and H.labels == G.labels


def test_edgelist_bad_line():
    with pytest.raises(GraphError):
        parse_edgelist("0 1\n")


def test_connectivity_cached():
    assert generators.cycle(5).is_connected
    assert not build_graph([(0, 1, 1), (2, 3, 1)]).is_connected


def test_graph_is_read_only(triangle):
    with pytest.raises(ValueError):
        triangle.w[0] = 5.0


edge_lists = st.lists(
    st.tuples(st.integers(0, 7), st.integers(0, 7), st.integers(1, 5)),
    min_size=1, max_size=20,
).map(lambda es: [(u, v, w) for u, v, w in es if u != v]).filter(bool)


@settings(max_examples=100, deadline=None)
@given(edge_lists, st.data())
def test_cut_identities(edges, data):
    G = build_graph(edges)
    assert G.degree.sum() == pytest.approx(2 * G.w.sum())
    # degree equals incident weight sum, rebuilt from the raw triples
    raw = {}
    for u, v, w in edges:
        raw[u] = raw.get(u, 0) + w
        raw[v] = raw.get(v, 0) + w
    assert [raw[lab] for lab in G.labels] == pytest.approx(G.degree.tolist())

    side = data.draw(st.lists(st.integers(0, 2), min_size=G.n, max_size=G.n))
    A = [i for i in range(G.n) if side[i] == 0]
    B = [i for i in range(G.n) if side[i] == 1]
    assert cut_weight(G, A, B) == pytest.approx(cut_weight(G, B, A))
    if A and B:
        assert volume(G, A + B) == pytest.approx(volume(G, A) + volume(G, B))
    rest = [i for i in range(G.n) if i not in A]
    internal = sum(w for u, v, w in G.edges if u in A and v in A)
    assert cut_weight(G, A, rest) == pytest.approx(volume(G, A) - 2 * internal)
    assert boundary_weight(G, A) == pytest.approx(cut_weight(G, A, rest))
    if A and rest and G.is_connected:
        assert 0 < phi_set(G, A) <= 1 + 1e-12
