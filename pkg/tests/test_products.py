import itertools

import pytest

from monodimer.errors import InvalidGraphError
from monodimer.fixtures import example_plane_graph
from monodimer.model import _as_host, enumerate_even_loops
from monodimer.plane_graph import canonical_orientation, path_graph
from monodimer.products import (
    GridSpec,
    boustrophedon_grid,
    boustrophedon_labels,
    cartesian_product,
    e_i_count,
    i_projection,
    loop_edge_ids,
    oriented_cartesian_product,
)


def test_product_counts():
    p = cartesian_product([path_graph(4), path_graph(3)])
    assert p.n == 12 and len(p.edges) == 17  # 3*3 + 2*4
    q = cartesian_product([path_graph(2)] * 3)
    assert q.n == 8 and len(q.edges) == 12
    with pytest.raises(InvalidGraphError):
        cartesian_product([])


def test_p2p2_is_4cycle():
    p = cartesian_product([path_graph(2), path_graph(2)])
    assert p.n == 4 and len(p.edges) == 4
    assert all(len(p.neighbors(t)) == 2 for t in p.label)


def test_boustrophedon_2d():
    # label of (p, q): 2sl + p for q = 2s+1, 2sl - p + 1 for q = 2s
    labels = boustrophedon_labels((4, 3))
    for (p, q), lab in labels.items():
        if q % 2 == 1:
            s = (q - 1) // 2
            assert lab == 2 * s * 4 + p
        else:
            s = q // 2
            assert lab == 2 * s * 4 - p + 1
    assert labels[(1, 2)] == 8


def test_boustrophedon_3d():
    l, m, n = 3, 2, 3
    labels = boustrophedon_labels((l, m, n))
    for (p, q, r), lab in labels.items():
        if q % 2 == 1 and r % 2 == 1:
            s, t = (q - 1) // 2, (r - 1) // 2
            expect = 2 * t * l * m + 2 * s * l + p
        elif q % 2 == 0 and r % 2 == 1:
            s, t = q // 2, (r - 1) // 2
            expect = 2 * t * l * m + 2 * s * l - p + 1
        elif q % 2 == 1 and r % 2 == 0:
            s, t = (q - 1) // 2, r // 2
            expect = 2 * t * l * m - 2 * s * l - p + 1
        else:
            s, t = q // 2, r // 2
            expect = 2 * t * l * m - 2 * s * l + p
        assert lab == expect, (p, q, r)


def test_one_dimensional_labels():
    assert boustrophedon_labels((5,)) == {(i,): i for i in range(1, 6)}


def _canonical_on_labels(p):
    """Direction each product edge gets from the flat-label canonical rule."""
    out = []
    for a, b, _, _ in p.edges:
        la, lb = p.label[a], p.label[b]
        out.append((a, b) if la < lb else (b, a))
    return out


@pytest.mark.parametrize("dims", [(2,), (4, 3), (2, 2), (3, 3),
                                  (3, 2, 3), (2, 2, 2), (4, 3, 2)])
def test_oriented_product_equals_canonical_on_snake_labels(dims):
    p = boustrophedon_grid(GridSpec(dims))
    assert p.orientation == _canonical_on_labels(p)


def test_oriented_product_single_factor_identity():
    g = example_plane_graph()
    o = canonical_orientation(g)
    p = oriented_cartesian_product([(g, o)])
    for eid, (a, b, i, fe) in enumerate(p.edges):
        t, h = o.dir[fe]
        assert p.direction(eid) == ((a, b) if a[0] == t else (b, a))


def test_p2p2_parity_rule():
    p2 = path_graph(2)
    o = canonical_orientation(p2)
    p = oriented_cartesian_product([(p2, o), (p2, o)])
    for eid, (a, b, i, _) in enumerate(p.edges):
        t, h = p.direction(eid)
        if i == 2:
            assert t[1] < h[1]  # factor-2 edges keep factor direction
        else:
            # factor-1 edges: forward in the copy u2 = 1, reversed in u2 = 2
            if t[1] == 1:
                assert t[0] < h[0]
            else:
                assert t[0] > h[0]


def test_projection_edge_conservation():
    p = boustrophedon_grid(GridSpec((2, 3, 2)))
    sub = list(range(0, len(p.edges), 2))
    total = sum(len(i_projection(p, sub, i).edges)
                for i in range(1, p.k + 1))
    assert total == len(sub)


def test_loop_projections_even():
    p = boustrophedon_grid(GridSpec((3, 3)))
    host = _as_host(p)
    lab2t = {lab: t for t, lab in p.label.items()}
    for loop in itertools.islice(enumerate_even_loops(host), 50):
        tl = [lab2t[v] for v in loop]
        eids = loop_edge_ids(p, tl)
        for i in range(1, p.k + 1):
            assert i_projection(p, eids, i).is_even()


def test_alternating_4loop_projects_to_digons():
    p = boustrophedon_grid(GridSpec((2, 2)))
    face = [(1, 1), (2, 1), (2, 2), (1, 2)]
    eids = loop_edge_ids(p, face)
    for i in (1, 2):
        proj = i_projection(p, eids, i)
        assert proj.multiplicities() == {(1, 2): 2}


def test_e_i_count():
    p = boustrophedon_grid(GridSpec((2, 2)))
    # doubled factor-1 edge in copy u2 = 1: parity u2 + (k-i) = 1 + 1 even
    assert e_i_count(p, [(1, 1), (2, 1)], 1) == 0
    # same doubled edge in copy u2 = 2: odd copy, both traversals count
    assert e_i_count(p, [(1, 2), (2, 2)], 1) == 2
    face = [(1, 1), (2, 1), (2, 2), (1, 2)]
    assert e_i_count(p, face, 1) == 1
    with pytest.raises(InvalidGraphError):
        e_i_count(p, face, 2)  # only 1 <= i <= k-1


def test_grid_spec_validation():
    with pytest.raises(InvalidGraphError):
        GridSpec((0, 2))
    with pytest.raises(InvalidGraphError):
        GridSpec((2, 2), ("a",))
    s = GridSpec((2, 3, 4))
    assert s.d == 3 and s.size == 24
    assert s.edge_weights == ("a1", "a2", "a3")
