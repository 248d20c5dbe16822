"""Small reference graphs used across tests and the verify suites."""

from __future__ import annotations

from .plane_graph import PlaneGraph

__all__ = ["example_plane_graph", "example_multigraph"]


def example_plane_graph() -> PlaneGraph:
    """Four vertices on a unit square with one diagonal.

    Edges {12, 13, 14, 23, 34}; the canonical (lower-to-higher label)
    orientation of this drawing is Pfaffian.
    """
    return PlaneGraph(
        [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)],
    )


def example_multigraph() -> PlaneGraph:
    """Six vertices with two parallel pairs: edge 34 doubled and edge 56
    doubled.

    Vertex 6 sits inside the triangle (3, 4, 5), so the directed cycle
    (3, 4, 5) strictly encloses one vertex.
    """
    return PlaneGraph(
        [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0),
         (0.5, 2.0), (0.5, 1.5)],
        [(1, 2), (1, 4), (2, 3), (3, 4), (3, 4), (3, 5), (4, 5),
         (5, 6), (5, 6)],
        check_planarity=False,
    )
