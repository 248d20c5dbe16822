import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monodimer.errors import GeometryError, InvalidGraphError
from monodimer.fixtures import example_multigraph, example_plane_graph
from monodimer.plane_graph import (
    Orientation,
    PlaneGraph,
    canonical_orientation,
    enclosed_vertex_count,
    faces,
    graph_to_json,
    is_pfaffian,
    load_graph_json,
    path_graph,
    pfaffian_orientation,
)
from monodimer.products import grid2d_plane


def test_path_graph_basic():
    g = path_graph(4)
    assert g.n == 4
    assert list(g.edges) == [(1, 2), (2, 3), (3, 4)]
    g1 = path_graph(1)
    assert g1.n == 1 and list(g1.edges) == []
    with pytest.raises(InvalidGraphError):
        path_graph(0)


def test_path_rotation():
    g = path_graph(3)
    assert sorted(g.other_end(i, 2) for i in g.rotation[2]) == [1, 3]


def test_faces_square():
    g = PlaneGraph([(0, 0), (1, 0), (1, 1), (0, 1)],
                   [(1, 2), (1, 4), (2, 3), (3, 4)])
    fs = faces(g)
    assert len(fs) == 2
    assert sum(1 for f in fs if f.is_outer) == 1


def test_faces_tree():
    fs = faces(path_graph(4))
    assert len(fs) == 1 and fs[0].is_outer


def test_faces_example_graph_euler():
    g = example_plane_graph()
    fs = faces(g)
    assert len(fs) == 3  # Euler: 4 - 5 + f = 2
    assert sum(1 for f in fs if f.is_outer) == 1


def test_canonical_orientation():
    g = path_graph(3)
    o = canonical_orientation(g)
    assert o.dir == ((1, 2), (2, 3))


def test_example_canonical_is_pfaffian():
    g = example_plane_graph()
    assert is_pfaffian(g, canonical_orientation(g))


def test_cyclic_square_not_pfaffian():
    g = PlaneGraph([(0, 0), (1, 0), (1, 1), (0, 1)],
                   [(1, 2), (1, 4), (2, 3), (3, 4)])
    cyclic = Orientation(((1, 2), (4, 1), (2, 3), (3, 4)))
    assert not is_pfaffian(g, cyclic)
    assert is_pfaffian(g, canonical_orientation(g))


def test_tree_any_orientation_pfaffian():
    g = path_graph(5)
    assert is_pfaffian(g, canonical_orientation(g))
    assert is_pfaffian(g, canonical_orientation(g).reversed())


def test_pfaffian_orientation_construction():
    for l, m in [(2, 2), (3, 3), (4, 3), (5, 4)]:
        g, _ = grid2d_plane(l, m)
        o = pfaffian_orientation(g)
        assert is_pfaffian(g, o)
    g = example_plane_graph()
    assert is_pfaffian(g, pfaffian_orientation(g))


def test_pfaffian_orientation_random_trees():
    rng = np.random.default_rng(3)
    g, _ = grid2d_plane(4, 4)
    for _ in range(20):
        o = pfaffian_orientation(g, rng=rng)
        assert is_pfaffian(g, o)


def test_reversal_preserves_pfaffian_on_even_faces():
    # grid faces are squares (even length)
    g, _ = grid2d_plane(3, 4)
    o = pfaffian_orientation(g)
    assert is_pfaffian(g, o.reversed())


def test_enclosed_vertex_count():
    g = example_multigraph()
    assert enclosed_vertex_count(g, [3, 4]) == 0  # digon
    assert enclosed_vertex_count(g, [3, 4, 5]) == 1  # vertex 6 inside
    assert enclosed_vertex_count(g, [5, 4, 3]) == 1  # direction-invariant
    assert enclosed_vertex_count(g, [1, 2, 3, 4]) == 0


def test_enclosed_center_of_3x3():
    g, _ = grid2d_plane(3, 3)
    labels = {v: c for v, c in enumerate(g.coords, 1)}
    boundary = [v for v, (x, y) in labels.items()
                if x in (1, 3) or y in (1, 3)]
    # order boundary by angle around the center
    boundary.sort(key=lambda v: math.atan2(labels[v][1] - 2, labels[v][0] - 2))
    assert enclosed_vertex_count(g, boundary) == 1


def test_enclosed_rejects_self_crossing():
    g, _ = grid2d_plane(2, 2)
    lab = {tuple(map(round, c)): v for v, c in enumerate(g.coords, 1)}
    bowtie = [lab[(1, 1)], lab[(2, 2)], lab[(2, 1)], lab[(1, 2)]]
    with pytest.raises(GeometryError):
        enclosed_vertex_count(g, bowtie)


def test_json_round_trip(tmp_path):
    g = example_plane_graph()
    o = canonical_orientation(g)
    data = graph_to_json(g, o)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(data))
    g2, o2 = load_graph_json(str(path))
    assert g2.n == g.n and g2.edges == g.edges
    assert o2.dir == o.dir


def test_invalid_graphs():
    with pytest.raises(InvalidGraphError):
        PlaneGraph([(0, 0)], [(1, 1)])  # self-loop
    with pytest.raises(InvalidGraphError):
        PlaneGraph([(0, 0), (1, 0)], [(1, 3)])  # label out of range


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_pfaffian_on_random_grid_subgraphs(l, m, data):
    full, _ = grid2d_plane(l, m)
    keep = data.draw(st.lists(st.booleans(), min_size=len(full.edges),
                              max_size=len(full.edges)))
    edges = [e for e, k in zip(full.edges, keep) if k]
    present = sorted({v for e in edges for v in e})
    if not present:
        return
    relabel = {v: i for i, v in enumerate(present, 1)}
    g = PlaneGraph([full.coords[v - 1] for v in present],
                   [tuple(sorted((relabel[u], relabel[v])))
                    for u, v in edges])
    if not g.is_connected():
        return
    assert is_pfaffian(g, pfaffian_orientation(g))
