"""The finite chamber complex of a triangle presentation and its residues.

The complex has three vertices and three families of edges, each indexed by
the points of the plane.  Edge ``(k, x)`` is the ``x``-th edge of family ``k``.
A triple ``(x, y, z)`` contributes one chamber glued along ``(0, x)``,
``(1, y)`` and ``(2, z)``.  Every vertex lies on two families; its residue is
the bipartite graph of those edges, two edges being adjacent when a chamber
contains both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

import networkx as nx

from .incidence import ProjectivePlane, isomorphisms
from .presentation import TrianglePresentation, verify_presentation

__all__ = [
    "ChamberComplex",
    "NotFullError",
    "VERTEX_KINDS",
    "build_scab",
    "residue",
    "verify_generalized_triangle",
    "graph_to_plane",
    "residue_plane_iso",
    "incidence_graph",
]

EdgeId = tuple[int, int]
Chamber = tuple[EdgeId, EdgeId, EdgeId]

# edge families on each vertex
VERTEX_KINDS = {1: (0, 2), 2: (0, 1), 3: (1, 2)}


class NotFullError(ValueError):
    pass


@dataclass(frozen=True)
class ChamberComplex:
    n: int
    chambers: frozenset[Chamber] = field(repr=False)

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (1, 2, 3)

    @property
    def edges(self) -> list[EdgeId]:
        return [(k, x) for k in range(3) for x in range(self.n)]

    @staticmethod
    def rotate_edge(e: EdgeId) -> EdgeId:
        return ((e[0] + 1) % 3, e[1])

    def rotate(self, c: Chamber) -> Chamber:
        # re-sort so the family-0 edge comes first
        return tuple(sorted(self.rotate_edge(e) for e in c))  # type: ignore[return-value]


def build_scab(tp: TrianglePresentation) -> ChamberComplex:
    verdict = verify_presentation(tp.plane, tp.lam, tp.triples)
    if verdict.kind.value != "FULL":
        raise NotFullError(f"presentation is {verdict.kind.value}, not FULL")
    chambers = frozenset(((0, x), (1, y), (2, z)) for x, y, z in tp.triples)
    cx = ChamberComplex(tp.plane.n, chambers)
    if any(cx.rotate(c) not in chambers for c in chambers):
        raise NotFullError("rotation does not permute the chambers")
    return cx


def residue(cx: ChamberComplex, vertex: int) -> nx.Graph:
    """Bipartite graph on the ``2n`` edges through ``vertex``."""
    k1, k2 = VERTEX_KINDS[vertex]
    g = nx.Graph()
    g.add_nodes_from(((k1, x) for x in range(cx.n)), bipartite=0)
    g.add_nodes_from(((k2, x) for x in range(cx.n)), bipartite=1)
    g.add_edges_from((c[k1], c[k2]) for c in cx.chambers)
    return g


def incidence_graph(plane: ProjectivePlane) -> nx.Graph:
    """Points ``("p", i)`` joined to lines ``("l", j)`` through them."""
    g = nx.Graph()
    g.add_nodes_from((("p", i) for i in range(plane.n)), bipartite=0)
    g.add_nodes_from((("l", j) for j in range(plane.n)), bipartite=1)
    g.add_edges_from(
        (("p", p), ("l", j)) for j, pts in enumerate(plane.lines_of) for p in pts
    )
    return g


def verify_generalized_triangle(g: nx.Graph, q: int) -> bool:
    """Is ``g`` the incidence graph of a projective plane of order ``q``?"""
    n = q * q + q + 1
    if g.number_of_nodes() != 2 * n or g.number_of_edges() != (q + 1) * n:
        return False
    if any(d != q + 1 for _, d in g.degree()):
        return False
    if not nx.is_connected(g) or not nx.is_bipartite(g):
        return False
    a, b = nx.bipartite.sets(g)
    if len(a) != n or len(b) != n:
        return False
    return nx.girth(g) == 6 and nx.diameter(g) == 3


def _parts(g: nx.Graph) -> tuple[list[Hashable], list[Hashable]]:
    a, b = nx.bipartite.sets(g)
    a, b = sorted(a), sorted(b)
    return (a, b) if a[0] < b[0] else (b, a)


def graph_to_plane(
    g: nx.Graph, points: list[Hashable], lines: list[Hashable]
) -> ProjectivePlane:
    """Plane whose ``i``-th point is ``points[i]`` and ``j``-th line ``lines[j]``."""
    index = {v: i for i, v in enumerate(points)}
    return ProjectivePlane([[index[u] for u in g[l]] for l in lines])


def residue_plane_iso(
    g: nx.Graph, plane: ProjectivePlane
) -> dict[Hashable, tuple[str, int]] | None:
    """Part-respecting isomorphism from ``g`` onto the incidence graph of ``plane``.

    Either part of ``g`` may play the points.  Returns ``node -> ("p", i)`` or
    ``("l", j)``, or ``None`` when the graph is not isomorphic.
    """
    if g.number_of_nodes() != 2 * plane.n:
        return None
    if not verify_generalized_triangle(g, plane.order):
        return None
    a, b = _parts(g)
    for pts, lns in ((a, b), (b, a)):
        src = graph_to_plane(g, pts, lns)
        for pm, lm in isomorphisms(src, plane, limit=1):
            out = {v: ("p", pm[i]) for i, v in enumerate(pts)}
            out.update({v: ("l", lm[j]) for j, v in enumerate(lns)})
            return out
    return None
