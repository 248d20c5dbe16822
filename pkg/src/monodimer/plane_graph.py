"""Labeled plane graphs: embeddings, faces, Pfaffian orientations, enclosure.

A graph carries explicit 2D coordinates; the rotation system is derived
from the angular order of neighbors.  Parallel edges are drawn coincident
and never enclose a vertex.  Clockwise means negative signed polygon area.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from shapely.geometry import Point, Polygon

from .errors import EmbeddingError, GeometryError, InvalidGraphError

__all__ = [
    "PlaneGraph",
    "Orientation",
    "Face",
    "path_graph",
    "faces",
    "canonical_orientation",
    "is_pfaffian",
    "pfaffian_orientation",
    "enclosed_vertex_count",
    "signed_area",
    "load_graph_json",
    "graph_to_json",
]


def _seg_properly_intersect(p1, p2, p3, p4):
    """True if open segments p1p2 and p3p4 cross at an interior point."""

    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(v) < 1e-12:
            return 0
        return 1 if v > 0 else -1

    o1 = orient(p1, p2, p3)
    o2 = orient(p1, p2, p4)
    o3 = orient(p3, p4, p1)
    o4 = orient(p3, p4, p2)
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


class PlaneGraph:
    """Simple or multi- graph with a straight-line plane drawing.

    Vertices are labeled 1..n; ``edges[k]`` is an unordered pair ``(u, v)``
    with ``u < v``.  Parallel edges repeat the pair.
    """

    def __init__(self, coords, edges, check_planarity=True):
        coords = tuple((float(x), float(y)) for x, y in coords)
        n = len(coords)
        if n == 0:
            raise InvalidGraphError("graph needs at least one vertex")
        norm = []
        for u, v in edges:
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidGraphError(f"edge ({u},{v}) outside labels 1..{n}")
            norm.append((u, v) if u < v else (v, u))
        self.n = n
        self.coords = coords
        self.edges = tuple(norm)
        if check_planarity:
            self._check_drawing()
        self.rotation = self._build_rotation()

    def _check_drawing(self):
        pts = self.coords
        for a in range(len(self.edges)):
            u1, v1 = self.edges[a]
            for b in range(a + 1, len(self.edges)):
                u2, v2 = self.edges[b]
                if (u1, v1) == (u2, v2):
                    continue  # coincident parallel edges are allowed
                if {u1, v1} & {u2, v2}:
                    continue
                if _seg_properly_intersect(
                    pts[u1 - 1], pts[v1 - 1], pts[u2 - 1], pts[v2 - 1]
                ):
                    raise EmbeddingError(
                        f"edges {self.edges[a]} and {self.edges[b]} cross"
                    )

    def _build_rotation(self):
        # rotation[v] = tuple of edge indices in counterclockwise angular
        # order of the far endpoint; coincident parallels tie-break by index.
        incident = {v: [] for v in range(1, self.n + 1)}
        for idx, (u, v) in enumerate(self.edges):
            incident[u].append(idx)
            incident[v].append(idx)
        rot = {}
        for v, idxs in incident.items():
            x0, y0 = self.coords[v - 1]

            def angle(idx, v=v, x0=x0, y0=y0):
                a, b = self.edges[idx]
                w = b if a == v else a
                x1, y1 = self.coords[w - 1]
                return math.atan2(y1 - y0, x1 - x0)

            rot[v] = tuple(sorted(idxs, key=lambda i: (angle(i), i)))
        return rot

    def other_end(self, edge_idx, v):
        a, b = self.edges[edge_idx]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v} not on edge {edge_idx}")

    def degree(self, v):
        return len(self.rotation[v])

    def neighbors(self, v):
        return [self.other_end(i, v) for i in self.rotation[v]]

    def edge_index(self, u, v):
        """Index of an edge between u and v (first match)."""
        key = (u, v) if u < v else (v, u)
        for i, e in enumerate(self.edges):
            if e == key:
                return i
        raise KeyError(f"no edge between {u} and {v}")

    def components(self):
        seen = set()
        comps = []
        for s in range(1, self.n + 1):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self):
        return len(self.components()) == 1

    def is_bipartite(self):
        color = {}
        for s in range(1, self.n + 1):
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w not in color:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return False
        return True

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class Orientation:
    """Direction (tail, head) for every edge index of a host graph."""

    dir: tuple

    def __post_init__(self):
        object.__setattr__(self, "dir", tuple(tuple(d) for d in self.dir))

    def forward(self, edge_idx, u, v):
        """True if the edge is directed u -> v."""
        return self.dir[edge_idx] == (u, v)

    def sign(self, edge_idx, u, v):
        """+1 if directed u -> v, -1 if v -> u."""
        t, h = self.dir[edge_idx]
        if (t, h) == (u, v):
            return 1
        if (t, h) == (v, u):
            return -1
        raise ValueError("direction does not match edge endpoints")

    def reversed(self):
        return Orientation(tuple((h, t) for t, h in self.dir))


@dataclass(frozen=True)
class Face:
    """A face as its cyclic sequence of directed edge-sides (darts)."""

    darts: tuple  # ((edge_idx, tail, head), ...)
    is_outer: bool
    area: float

    def vertices(self):
        return tuple(t for _, t, _ in self.darts)


def path_graph(n):
    """Path on n vertices labeled 1..n along a line."""
    if n < 1:
        raise InvalidGraphError("path graph needs at least one vertex")
    coords = [(float(i), 0.0) for i in range(1, n + 1)]
    edges = [(i, i + 1) for i in range(1, n)]
    return PlaneGraph(coords, edges, check_planarity=False)


def signed_area(coords, labels):
    """Shoelace signed area of the polygon visiting `labels` in order."""
    pts = [coords[v - 1] for v in labels]
    s = 0.0
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        s += x1 * y2 - x2 * y1
    return 0.5 * s


def faces(g: PlaneGraph):
    """All faces of the drawing via rotation-system traversal.

    Bounded faces are traced counterclockwise (positive signed area); the
    outer face of each component is the traversal with the most negative
    area.
    """
    darts = set()
    for idx, (u, v) in enumerate(g.edges):
        darts.add((idx, u, v))
        darts.add((idx, v, u))

    def next_dart(d):
        idx, u, v = d
        rot = g.rotation[v]
        pos = rot.index(idx)
        # previous edge in ccw order = next in clockwise order
        nxt = rot[pos - 1]
        return (nxt, v, g.other_end(nxt, v))

    out = []
    while darts:
        start = min(darts)
        cycle = []
        d = start
        while True:
            cycle.append(d)
            darts.discard(d)
            d = next_dart(d)
            if d == start:
                break
            if d not in darts:
                raise EmbeddingError("inconsistent rotation system")
        area = 0.0
        for _, u, v in cycle:
            x1, y1 = g.coords[u - 1]
            x2, y2 = g.coords[v - 1]
            area += 0.5 * (x1 * y2 - x2 * y1)
        out.append([tuple(cycle), area])

    # one outer face per connected component: the most negative area
    comps = g.components()
    result = []
    for comp in comps:
        idxs = [i for i, (cyc, _) in enumerate(out) if cyc[0][1] in comp]
        if not idxs:  # isolated vertex: only the outer face
            result.append(Face((), is_outer=True, area=0.0))
            continue
        outer = min(idxs, key=lambda i: out[i][1])
        for i in idxs:
            cyc, area = out[i]
            result.append(Face(cyc, is_outer=(i == outer), area=area))
    return result


def canonical_orientation(g: PlaneGraph) -> Orientation:
    """Every edge directed from lower to higher label."""
    return Orientation(tuple(g.edges))


def is_pfaffian(g: PlaneGraph, o: Orientation) -> bool:
    """Check the clockwise-odd property on every bounded face."""
    for f in faces(g):
        if f.is_outer:
            continue
        # bounded faces are traced ccw; an edge is clockwise on the face
        # iff it is oriented against the ccw dart.
        cw = sum(1 for idx, u, v in f.darts if not o.forward(idx, u, v))
        if cw % 2 == 0:
            return False
    return True


def pfaffian_orientation(g: PlaneGraph, rng=None) -> Orientation:
    """Construct a Pfaffian orientation of a connected plane graph.

    A spanning tree is oriented first (randomly when `rng` is given),
    then the remaining edges are fixed face by face along a spanning tree
    of the dual rooted at the outer face, making each bounded face
    clockwise-odd.
    """
    if not g.is_connected():
        raise InvalidGraphError("pfaffian_orientation requires a connected graph")
    m = len(g.edges)
    # spanning tree by BFS
    tree = set()
    seen = {1}
    queue = [1]
    while queue:
        v = queue.pop(0)
        for idx in g.rotation[v]:
            w = g.other_end(idx, v)
            if w not in seen:
                seen.add(w)
                tree.add(idx)
                queue.append(w)

    direction = [None] * m
    for idx in range(m):
        if idx in tree:
            u, v = g.edges[idx]
            if rng is not None and rng.random() < 0.5:
                direction[idx] = (v, u)
            else:
                direction[idx] = (u, v)

    fs = faces(g)
    # dual BFS over cotree edges from the outer face
    edge_faces = {}
    for fi, f in enumerate(fs):
        for idx, _, _ in f.darts:
            edge_faces.setdefault(idx, []).append(fi)
    outer = next(fi for fi, f in enumerate(fs) if f.is_outer)
    parent_edge = {outer: None}
    order = [outer]
    queue = [outer]
    while queue:
        fi = queue.pop(0)
        for idx, _, _ in fs[fi].darts:
            if idx in tree:
                continue
            for fj in edge_faces[idx]:
                if fj not in parent_edge:
                    parent_edge[fj] = idx
                    order.append(fj)
                    queue.append(fj)
    if len(order) != len(fs):
        raise EmbeddingError("dual graph not connected; drawing inconsistent")

    for fi in reversed(order):
        if fi == outer:
            continue
        f = fs[fi]
        fix = parent_edge[fi]
        cw = 0
        for idx, u, v in f.darts:
            if idx == fix:
                continue
            if direction[idx] != (u, v):
                cw += 1
        # the fixed edge appears exactly once on this bounded face
        fd = next((u, v) for idx, u, v in f.darts if idx == fix)
        if cw % 2 == 0:
            direction[fix] = (fd[1], fd[0])  # against ccw dart = clockwise
        else:
            direction[fix] = fd
    return Orientation(tuple(direction))


def enclosed_vertex_count(g: PlaneGraph, cycle) -> int:
    """Vertices of g strictly inside the polygon traced by `cycle`.

    `cycle` is the vertex label sequence (closing edge implied).  A digon
    encloses nothing.
    """
    cycle = list(cycle)
    if cycle[0] == cycle[-1]:
        cycle = cycle[:-1]
    if len(cycle) < 2:
        raise GeometryError("cycle too short")
    if len(cycle) == 2:
        return 0
    pts = [g.coords[v - 1] for v in cycle]
    poly = Polygon(pts)
    if not poly.is_valid:
        raise GeometryError("cycle does not trace a simple polygon")
    inside = 0
    members = set(cycle)
    for v in range(1, g.n + 1):
        if v in members:
            continue
        if poly.contains(Point(g.coords[v - 1])):
            inside += 1
    return inside


# -- JSON graph format -----------------------------------------------------
# {"n": int, "coords": [[x,y],...], "edges": [[u,v],...],
#  "orientation": [[tail,head],...]}  (orientation optional; 1-based labels)


def load_graph_json(source):
    """Load a graph (and optional orientation) from a dict, JSON text or path."""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if "\n" not in text and not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        data = json.loads(text)
    try:
        n = int(data["n"])
        coords = [tuple(map(float, c)) for c in data["coords"]]
        edges = [tuple(map(int, e)) for e in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"bad graph JSON: {exc}") from exc
    if len(coords) != n:
        raise InvalidGraphError("coords length does not match n")
    g = PlaneGraph(coords, edges)
    orient = None
    if data.get("orientation"):
        pairs = [tuple(map(int, d)) for d in data["orientation"]]
        if len(pairs) != len(edges):
            raise InvalidGraphError("orientation length does not match edges")
        direction = [None] * len(edges)
        used = [False] * len(edges)
        for t, h in pairs:
            key = (t, h) if t < h else (h, t)
            for i, e in enumerate(g.edges):
                if e == key and not used[i]:
                    direction[i] = (t, h)
                    used[i] = True
                    break
            else:
                raise InvalidGraphError(f"orientation pair ({t},{h}) matches no edge")
        orient = Orientation(tuple(direction))
    return g, orient


def graph_to_json(g: PlaneGraph, orientation: Orientation | None = None):
    data = {
        "n": g.n,
        "coords": [list(c) for c in g.coords],
        "edges": [list(e) for e in g.edges],
    }
    if orientation is not None:
        data["orientation"] = [list(d) for d in orientation.dir]
    return data
