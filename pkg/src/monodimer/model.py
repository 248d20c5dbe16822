"""The loop-vertex / monopole-dimer model.

Generalised adjacency matrices, brute-force enumeration of loop-vertex
configurations, and the two routes to the sign of a loop on a product:
via the orientation directly, and via cycle decompositions of the factor
projections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidGraphError, SizeCapError
from .plane_graph import (
    Orientation,
    PlaneGraph,
    enclosed_vertex_count,
    signed_area,
)
from .poly import MPoly, PolyMatrix
from .products import ProductGraph, i_projection, loop_edge_ids

__all__ = [
    "LoopConfig",
    "build_K",
    "enumerate_configs",
    "enumerate_even_loops",
    "loop_weight_oriented",
    "partition_bruteforce",
    "sign_cycle_multiset",
    "compatible_decomposition",
    "all_decompositions",
    "all_directed_decompositions",
    "sign_of_loop_projections",
    "loop_sign_from_orientation",
]

CONFIG_VERTEX_CAP = 16
DECOMP_EDGE_CAP = 14


@dataclass(frozen=True)
class LoopConfig:
    """Directed even loops plus isolated vertices covering all vertices."""

    loops: tuple  # tuples of vertex labels, closing edge implied
    isolated: frozenset


class _Host:
    """Uniform flat-label view of a weighted oriented (multi)graph."""

    def __init__(self, n, edges, direction, edge_weights, vertex_weights):
        self.n = n
        self.edges = list(edges)  # (u, v) label pairs
        self.direction = list(direction)  # (tail, head) per edge
        self.edge_weights = list(edge_weights)  # symbol or number per edge
        self.vertex_weights = dict(vertex_weights)  # label -> symbol or number
        self.adj = {v: [] for v in range(1, n + 1)}
        for eid, (u, v) in enumerate(self.edges):
            self.adj[u].append((v, eid))
            self.adj[v].append((u, eid))

    def edge_sign(self, eid, u, v):
        t, h = self.direction[eid]
        return 1 if (t, h) == (u, v) else -1


def _as_host(g, orientation=None, vertex_weights=None, edge_weights=None):
    if isinstance(g, ProductGraph):
        if g.orientation is None and orientation is None:
            raise InvalidGraphError("product graph is not oriented")
        lab = g.label
        edges = [(lab[a], lab[b]) for a, b, _, _ in g.edges]
        direction = [(lab[t], lab[h]) for t, h in (orientation or g.orientation)]
        ew = edge_weights if edge_weights is not None else g.edge_weights
        vw = vertex_weights or {v: g.vertex_weight for v in range(1, g.n + 1)}
        return _Host(g.n, edges, direction, ew, vw)
    if isinstance(g, PlaneGraph):
        if orientation is None:
            raise InvalidGraphError("an orientation is required")
        if edge_weights is None:
            edge_weights = [_default_edge_symbol(u, v) for u, v in g.edges]
        if vertex_weights is None:
            vertex_weights = {v: "x" for v in range(1, g.n + 1)}
        elif not isinstance(vertex_weights, dict):
            vertex_weights = {v: vertex_weights for v in range(1, g.n + 1)}
        return _Host(g.n, g.edges, orientation.dir, edge_weights, vertex_weights)
    raise TypeError(f"unsupported graph type {type(g)!r}")


def _default_edge_symbol(u, v):
    if u < 10 and v < 10:
        return f"a{u}{v}"
    return f"a{u}_{v}"


def _weight_poly(w):
    if isinstance(w, MPoly):
        return w
    if isinstance(w, str):
        return MPoly.var(w)
    return MPoly.const(w)


def build_K(g, orientation=None, vertex_weights=None, edge_weights=None):
    """Generalised adjacency matrix: vertex weights on the diagonal,
    signed edge weights off it."""
    host = _as_host(g, orientation, vertex_weights, edge_weights)
    n = host.n
    zero = MPoly.zero()
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for v in range(1, n + 1):
        try:
            rows[v - 1][v - 1] = _weight_poly(host.vertex_weights[v])
        except KeyError as exc:
            raise InvalidGraphError(f"missing vertex weight for {v}") from exc
    for eid, (u, v) in enumerate(host.edges):
        if host.edge_weights[eid] is None:
            raise InvalidGraphError(f"missing edge weight for edge {eid}")
        a = _weight_poly(host.edge_weights[eid])
        t, h = host.direction[eid]
        rows[t - 1][h - 1] = rows[t - 1][h - 1] + a
        rows[h - 1][t - 1] = rows[h - 1][t - 1] - a
    return PolyMatrix(rows)


# -- configuration enumeration --------------------------------------------


def _directed_loops_from(host, v0, allowed):
    """Directed even loops through v0 using only `allowed` vertices.

    Length-2 loops (doubled edges) are produced once; longer loops in
    both directions.
    """
    path = [v0]
    onpath = {v0}

    def extend():
        v = path[-1]
        for w, _eid in host.adj[v]:
            if w == v0 and len(path) >= 2:
                if len(path) % 2 == 0:
                    yield tuple(path)
            elif w in allowed and w not in onpath:
                path.append(w)
                onpath.add(w)
                yield from extend()
                onpath.discard(w)
                path.pop()

    # deduplicate doubled edges reached via parallel edges
    seen2 = set()
    for loop in extend():
        if len(loop) == 2:
            if loop in seen2:
                continue
            seen2.add(loop)
        yield loop


def enumerate_configs(g, orientation=None, vertex_weights=None,
                      edge_weights=None):
    """Yield every loop-vertex configuration exactly once.

    Undirected loops of length >= 4 appear in both directions; a doubled
    edge once.  Hard-capped at 16 vertices.
    """
    host = _as_host(g, orientation, vertex_weights, edge_weights) \
        if not isinstance(g, _Host) else g
    if host.n > CONFIG_VERTEX_CAP:
        raise SizeCapError(
            f"{host.n} vertices exceeds the enumeration cap of "
            f"{CONFIG_VERTEX_CAP}; use the determinant route instead"
        )

    def rec(uncovered, loops, isolated):
        if not uncovered:
            yield LoopConfig(tuple(loops), frozenset(isolated))
            return
        v0 = min(uncovered)
        rest = uncovered - {v0}
        isolated.append(v0)
        yield from rec(rest, loops, isolated)
        isolated.pop()
        for loop in _directed_loops_from(host, v0, rest):
            loops.append(loop)
            yield from rec(uncovered - set(loop), loops, isolated)
            loops.pop()

    yield from rec(frozenset(range(1, host.n + 1)), [], [])


def enumerate_even_loops(g, orientation=None):
    """All directed even loops (doubled edges once, cycles both ways)."""
    host = _as_host(g, orientation) if not isinstance(g, _Host) else g
    if host.n > CONFIG_VERTEX_CAP:
        raise SizeCapError(f"{host.n} vertices exceeds the cap")
    for v0 in range(1, host.n + 1):
        allowed = frozenset(range(v0 + 1, host.n + 1))
        yield from _directed_loops_from(host, v0, allowed)


def loop_weight_oriented(loop, orientation, edge_weights, host=None,
                         graph=None):
    """Signed monomial weight of a directed even loop.

    `loop` is a label sequence (closing edge implied).  Provide either a
    prepared host or a graph to resolve edges.
    """
    if host is None:
        host = _as_host(graph, orientation, None, edge_weights)
    loop = list(loop)
    if loop[0] == loop[-1]:
        loop = loop[:-1]
    if len(loop) % 2 != 0:
        raise InvalidGraphError("loop length must be even")
    return _loop_weight(host, tuple(loop))


def _loop_weight(host, loop):
    sign = -1
    weight = MPoly.one()
    steps = list(zip(loop, loop[1:] + (loop[0],)))
    if len(loop) == 2:
        # doubled edge: use two parallel edges when present
        u, v = loop
        eids = [eid for w, eid in host.adj[u] if w == v][:2]
        if len(eids) == 1:
            eids = eids * 2
        for (a, b), eid in zip(steps, eids):
            sign *= host.edge_sign(eid, a, b)
            weight = weight * _weight_poly(host.edge_weights[eid])
        return sign, weight
    for a, b in steps:
        eid = next(eid for w, eid in host.adj[a] if w == b)
        sign *= host.edge_sign(eid, a, b)
        weight = weight * _weight_poly(host.edge_weights[eid])
    return sign, weight


def partition_bruteforce(g, orientation=None, vertex_weights=None,
                         edge_weights=None):
    """Signed partition function by exhaustive configuration enumeration."""
    host = _as_host(g, orientation, vertex_weights, edge_weights)
    total = MPoly.zero()
    for cfg in enumerate_configs(host):
        term = MPoly.one()
        sign = 1
        for loop in cfg.loops:
            s, w = _loop_weight(host, loop)
            sign *= s
            term = term * w
        for v in cfg.isolated:
            term = term * _weight_poly(host.vertex_weights[v])
        total = total + (term if sign > 0 else -term)
    return total


# -- sign calculus ---------------------------------------------------------


def sign_cycle_multiset(cycles, host: PlaneGraph) -> int:
    """Sign of an edge-disjoint multiset of directed cycles in a drawing.

    Odd cycles directed clockwise contribute (-1)^chi; even cycles and
    anticlockwise odd cycles contribute (-1)^(chi+1).
    """
    sign = 1
    for cyc in cycles:
        cyc = list(cyc)
        if cyc[0] == cyc[-1]:
            cyc = cyc[:-1]
        chi = enclosed_vertex_count(host, cyc)
        if len(cyc) % 2 == 1 and signed_area(host.coords, cyc) < 0:
            sign *= (-1) ** chi
        else:
            sign *= (-1) ** (chi + 1)
    return sign


def compatible_decomposition(trail):
    """Greedy stack extraction of directed cycles from a closed trail.

    `trail` is a vertex label sequence with first == last.  Cycles keep
    the trail's direction.
    """
    trail = list(trail)
    if len(trail) < 2 or trail[0] != trail[-1]:
        raise InvalidGraphError("trail must be closed (first == last)")
    stack = []
    cycles = []
    for v in trail[:-1]:
        if v in stack:
            j = stack.index(v)
            cycles.append(tuple(stack[j:]))
            del stack[j:]
        stack.append(v)
    if stack:
        cycles.append(tuple(stack))
    return cycles


def _even_check(edges):
    deg = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return all(d % 2 == 0 for d in deg.values())


def all_decompositions(edges):
    """Every directed cycle decomposition of an even multigraph.

    `edges` is a list of label pairs (parallel edges repeat).  Cycles of
    length >= 3 appear in both directions; digons once.  Capped at 14
    edges.
    """
    edges = [tuple(e) for e in edges]
    if len(edges) > DECOMP_EDGE_CAP:
        raise SizeCapError(
            f"{len(edges)} edges exceeds the decomposition cap of "
            f"{DECOMP_EDGE_CAP}"
        )
    if not _even_check(edges):
        raise InvalidGraphError("cycle decompositions require an even graph")
    adj = {}
    for eid, (u, v) in enumerate(edges):
        adj.setdefault(u, []).append((v, eid))
        adj.setdefault(v, []).append((u, eid))

    def cycles_through(e0, unused):
        """Directed vertex-simple cycles using e0, within unused edges."""
        u0, v0 = edges[e0]
        starts = [(u0, v0)] if u0 == v0 else [(u0, v0), (v0, u0)]
        for s, t in starts:
            path = [s, t]
            used = [e0]

            def extend():
                v = path[-1]
                for w, eid in adj[v]:
                    if eid == e0 or eid not in unused or eid in used:
                        continue
                    if w == s:
                        yield tuple(path), tuple(used) + (eid,)
                    elif w not in path:
                        path.append(w)
                        used.append(eid)
                        yield from extend()
                        used.pop()
                        path.pop()

            yield from extend()

    def rec(unused):
        if not unused:
            yield []
            return
        e0 = min(unused)
        u0, v0 = edges[e0]
        emitted_digon = set()
        for cyc, used in cycles_through(e0, unused):
            if len(cyc) == 2:
                key = frozenset(used)
                if key in emitted_digon:
                    continue
                emitted_digon.add(key)
                cyc = tuple(sorted(cyc))
            for rest in rec(unused - set(used)):
                yield [cyc] + rest

    yield from rec(frozenset(range(len(edges))))


def all_directed_decompositions(darts):
    """Every partition of a directed edge multiset into directed cycles.

    `darts` is a list of (tail, head) pairs; directions are fixed, so the
    result is the set of decompositions compatible with any closed trail
    on these darts.
    """
    darts = [tuple(d) for d in darts]
    if len(darts) > DECOMP_EDGE_CAP:
        raise SizeCapError("too many edges for exhaustive decomposition")
    out = {}
    for eid, (t, h) in enumerate(darts):
        out.setdefault(t, []).append((h, eid))

    def rec(unused):
        if not unused:
            yield []
            return
        e0 = min(unused)
        t0, h0 = darts[e0]
        path = [t0, h0]
        used = [e0]

        def extend():
            v = path[-1]
            for w, eid in out.get(v, []):
                if eid not in unused or eid in used:
                    continue
                if w == t0:
                    yield tuple(path), tuple(used) + (eid,)
                elif w not in path:
                    path.append(w)
                    used.append(eid)
                    yield from extend()
                    used.pop()
                    path.pop()

        for cyc, usede in extend():
            for rest in rec(unused - set(usede)):
                yield [cyc] + rest

    yield from rec(frozenset(range(len(darts))))


def _projected_trail(p: ProductGraph, loop, i):
    """Directed closed trail traced in factor i by a product loop."""
    loop = list(loop)
    if loop[0] != loop[-1]:
        loop = loop + [loop[0]]
    seq = []
    for a, b in zip(loop, loop[1:]):
        eid = p.edge_between(a, b)
        _, _, fi, _ = p.edges[eid]
        if fi == i:
            seq.append((a[i - 1], b[i - 1]))
    if not seq:
        return None
    trail = [seq[0][0]]
    for t, h in seq:
        if trail[-1] != t:
            raise InvalidGraphError("projection is not a contiguous trail")
        trail.append(h)
    return trail


def sign_of_loop_projections(p: ProductGraph, loop) -> int:
    """Sign of a directed even loop from its factor projections."""
    loop = list(loop)
    if loop[0] == loop[-1]:
        loop = loop[:-1]
    if len(loop) % 2 != 0:
        raise InvalidGraphError("loop must be even")
    sign = -1
    from .products import e_i_count  # local to avoid cycle at import time

    for i in range(1, p.k):
        sign *= (-1) ** e_i_count(p, loop, i)
    for i in range(1, p.k + 1):
        trail = _projected_trail(p, loop, i)
        if trail is None:
            continue
        cycles = compatible_decomposition(trail)
        sign *= sign_cycle_multiset(cycles, p.factors[i - 1])
    return sign


def loop_sign_from_orientation(p: ProductGraph, loop) -> int:
    """(-1)^(r+1) with r the number of loop edges running against the
    product orientation."""
    loop = list(loop)
    if loop[0] != loop[-1]:
        loop = loop + [loop[0]]
    r = 0
    for a, b in zip(loop, loop[1:]):
        eid = p.edge_between(a, b)
        if p.direction(eid) != (a, b):
            r += 1
    return (-1) ** (r + 1)
