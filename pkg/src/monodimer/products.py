"""Cartesian products of plane graphs, grids, and projections.

The oriented product reverses a factor edge exactly when the parity of
the trailing coordinates (plus the number of trailing factors) is odd;
edges of the last factor always keep their factor direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidGraphError
from .plane_graph import Orientation, PlaneGraph, canonical_orientation, path_graph

__all__ = [
    "ProductGraph",
    "GridSpec",
    "ProjectionMultigraph",
    "cartesian_product",
    "oriented_cartesian_product",
    "boustrophedon_labels",
    "boustrophedon_grid",
    "grid2d_plane",
    "i_projection",
    "e_i_count",
]


@dataclass(frozen=True)
class GridSpec:
    """Dimensions and weight symbols of a d-dimensional grid."""

    dims: tuple
    edge_weights: tuple = None
    vertex_weight: str = "x"

    def __post_init__(self):
        dims = tuple(int(m) for m in self.dims)
        if len(dims) < 1 or any(m < 1 for m in dims):
            raise InvalidGraphError(f"invalid grid dims {dims}")
        object.__setattr__(self, "dims", dims)
        ew = self.edge_weights
        if ew is None:
            ew = tuple(f"a{i}" for i in range(1, len(dims) + 1))
        else:
            ew = tuple(ew)
            if len(ew) != len(dims):
                raise InvalidGraphError("one edge weight symbol per dimension")
        object.__setattr__(self, "edge_weights", ew)

    @property
    def d(self):
        return len(self.dims)

    @property
    def size(self):
        p = 1
        for m in self.dims:
            p *= m
        return p


class ProductGraph:
    """Cartesian product of k plane graphs with factor-tagged edges.

    Vertices are factor-label tuples; ``label`` maps a tuple to its flat
    1-based label.  Each edge records its factor tag (1-based), the two
    endpoint tuples, its weight symbol, and (if oriented) its direction.
    """

    def __init__(self, factors, labels, edges, orientation=None,
                 edge_weights=None, vertex_weight="x"):
        self.factors = tuple(factors)
        self.k = len(self.factors)
        self.label = dict(labels)  # tuple -> flat label
        self.verts = [None] * len(self.label)
        for t, lab in self.label.items():
            self.verts[lab - 1] = t
        self.n = len(self.verts)
        self.edges = list(edges)  # (utuple, vtuple, factor_i, factor_edge_idx)
        self.orientation = None if orientation is None else list(orientation)
        self.edge_weights = (
            [f"a{i}" for _, _, i, _ in self.edges]
            if edge_weights is None
            else list(edge_weights)
        )
        self.vertex_weight = vertex_weight
        self._adj = {t: [] for t in self.label}
        for eid, (a, b, _, _) in enumerate(self.edges):
            self._adj[a].append((b, eid))
            self._adj[b].append((a, eid))

    def neighbors(self, t):
        return self._adj[t]

    def edge_between(self, a, b):
        for nb, eid in self._adj[a]:
            if nb == b:
                return eid
        raise KeyError(f"no edge between {a} and {b}")

    def direction(self, eid):
        if self.orientation is None:
            raise InvalidGraphError("product graph has no orientation")
        return self.orientation[eid]

    def __repr__(self):
        return f"ProductGraph(k={self.k}, n={self.n}, edges={len(self.edges)})"


def _all_paths(factors):
    for g in factors:
        if list(g.edges) != [(i, i + 1) for i in range(1, g.n)]:
            return False
    return True


def boustrophedon_labels(dims):
    """Snake labelling of a grid, built by left-associated folding.

    For one row the labels are 1..m; each further dimension alternately
    appends the previous block forwards and mirrored.
    """
    labels = {(p,): p for p in range(1, dims[0] + 1)}
    block = dims[0]
    for m in dims[1:]:
        new = {}
        for t, lab in labels.items():
            for r in range(1, m + 1):
                if r % 2 == 1:
                    new[t + (r,)] = (r - 1) * block + lab
                else:
                    new[t + (r,)] = r * block - lab + 1
        labels = new
        block *= m
    return labels


def _lex_labels(factors):
    # factor-1 index varies fastest
    sizes = [g.n for g in factors]
    return {t: i + 1 for i, t in enumerate(_tuple_iter(sizes))}


def _tuple_iter(sizes):
    """All coordinate tuples with the first coordinate varying fastest."""
    if len(sizes) == 1:
        for u in range(1, sizes[0] + 1):
            yield (u,)
        return
    for rest in _tuple_iter(sizes[1:]):
        for u in range(1, sizes[0] + 1):
            yield (u,) + rest


def _product_edges(factors):
    sizes = [g.n for g in factors]
    edges = []
    for i, g in enumerate(factors):
        other = sizes[:i] + sizes[i + 1:]
        for fe_idx, (u, v) in enumerate(g.edges):
            for rest in _tuple_iter(other) if other else [()]:
                a = rest[:i] + (u,) + rest[i:]
                b = rest[:i] + (v,) + rest[i:]
                edges.append((a, b, i + 1, fe_idx))
    return edges


def _labels_for(factors):
    if _all_paths(factors):
        return boustrophedon_labels(tuple(g.n for g in factors))
    return _lex_labels(factors)


def cartesian_product(factors, edge_weights=None, vertex_weight="x"):
    """Unoriented Cartesian product of nonempty plane graphs."""
    factors = list(factors)
    if not factors:
        raise InvalidGraphError("empty factor list")
    edges = _product_edges(factors)
    return ProductGraph(
        factors,
        _labels_for(factors),
        edges,
        orientation=None,
        edge_weights=_expand_weights(edges, len(factors), edge_weights),
        vertex_weight=vertex_weight,
    )


def _expand_weights(edges, k, edge_weights):
    if edge_weights is None:
        edge_weights = [f"a{i}" for i in range(1, k + 1)]
    out = []
    for _, _, i, fe_idx in edges:
        spec = edge_weights[i - 1]
        out.append(spec[fe_idx] if isinstance(spec, dict) else spec)
    return out


def oriented_cartesian_product(oriented_factors, edge_weights=None,
                               vertex_weight="x"):
    """Oriented Cartesian product of (graph, orientation) pairs."""
    oriented_factors = list(oriented_factors)
    if not oriented_factors:
        raise InvalidGraphError("empty factor list")
    factors = [g for g, _ in oriented_factors]
    orients = [o for _, o in oriented_factors]
    k = len(factors)
    edges = _product_edges(factors)
    direction = []
    for a, b, i, fe_idx in edges:
        t, h = orients[i - 1].dir[fe_idx]
        # align (a, b) so that a carries the factor tail
        if a[i - 1] == t:
            fwd, bwd = a, b
        else:
            fwd, bwd = b, a
        parity = sum(fwd[i:]) + (k - i)
        if parity % 2 == 0:
            direction.append((fwd, bwd))
        else:
            direction.append((bwd, fwd))
    return ProductGraph(
        factors,
        _labels_for(factors),
        edges,
        orientation=direction,
        edge_weights=_expand_weights(edges, k, edge_weights),
        vertex_weight=vertex_weight,
    )


def boustrophedon_grid(spec: GridSpec) -> ProductGraph:
    """Oriented grid graph with snake labels and canonical path orientations."""
    paths = [path_graph(m) for m in spec.dims]
    pairs = [(g, canonical_orientation(g)) for g in paths]
    return oriented_cartesian_product(
        pairs,
        edge_weights=list(spec.edge_weights),
        vertex_weight=spec.vertex_weight,
    )


def grid2d_plane(l, m):
    """Boustrophedon-labeled 2D grid as a PlaneGraph.

    Returns (graph, axis) where axis maps each edge index to 0 for edges
    along the first direction and 1 for the second.
    """
    labels = boustrophedon_labels((l, m))
    coords = [None] * (l * m)
    for (p, q), lab in labels.items():
        coords[lab - 1] = (float(p), float(q))
    edges = []
    axis = {}
    for (p, q), lab in labels.items():
        if p < l:
            edges.append(tuple(sorted((lab, labels[(p + 1, q)]))))
            axis[len(edges) - 1] = 0
        if q < m:
            edges.append(tuple(sorted((lab, labels[(p, q + 1)]))))
            axis[len(edges) - 1] = 1
    order = sorted(range(len(edges)), key=lambda i: edges[i])
    g = PlaneGraph(coords, [edges[i] for i in order], check_planarity=False)
    return g, {new: axis[old] for new, old in enumerate(order)}


@dataclass(frozen=True)
class ProjectionMultigraph:
    """Multigraph on a factor obtained by contracting all other edges."""

    base: PlaneGraph
    edges: tuple  # factor edge endpoint pairs, with multiplicity

    def multiplicities(self):
        out = {}
        for e in self.edges:
            out[e] = out.get(e, 0) + 1
        return out

    def as_plane_multigraph(self):
        return PlaneGraph(self.base.coords, list(self.edges),
                          check_planarity=False)

    def is_even(self):
        deg = {}
        for u, v in self.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return all(d % 2 == 0 for d in deg.values())


def i_projection(p: ProductGraph, sub_edges, i) -> ProjectionMultigraph:
    """Contract all but factor-i edges of a subgraph given by edge ids."""
    if not (1 <= i <= p.k):
        raise InvalidGraphError(f"factor index {i} out of range 1..{p.k}")
    base = p.factors[i - 1]
    kept = []
    for eid in sub_edges:
        a, b, fi, fe_idx = p.edges[eid]
        if fi == i:
            kept.append(base.edges[fe_idx])
    return ProjectionMultigraph(base, tuple(kept))


def loop_edge_ids(p: ProductGraph, loop):
    """Edge ids traversed by a closed vertex-tuple sequence."""
    loop = list(loop)
    if loop[0] != loop[-1]:
        loop = loop + [loop[0]]
    return [p.edge_between(a, b) for a, b in zip(loop, loop[1:])]


def e_i_count(p: ProductGraph, loop, i) -> int:
    """Parity-restricted count of factor-i loop edges over odd copies."""
    if not (1 <= i <= p.k - 1):
        raise InvalidGraphError(
            f"factor index {i} must be in 1..{p.k - 1} for the parity count"
        )
    count = 0
    for eid in loop_edge_ids(p, loop):
        a, b, fi, _ = p.edges[eid]
        if fi != i:
            continue
        parity = sum(a[i:]) + (p.k - i)
        if parity % 2 == 1:
            count += 1
    return count
