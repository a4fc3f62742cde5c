"""Point-line correspondences, their graphs, and triangle covers.

A correspondence ``lam`` maps each point ``x`` to a line ``lam(x)``.  Its graph
has an edge ``(x, y)`` whenever ``y`` lies on ``lam(x)``; a triangle is a
3-cycle of edges, or a single loop ``(x, x)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numba
import numpy as np

from .incidence import Correlation, ProjectivePlane

__all__ = [
    "PointLineCorrespondence",
    "Edge",
    "CoverStatus",
    "CoverResult",
    "load_correspondence",
    "read_correspondence",
    "format_correspondence",
    "edges",
    "is_admissible",
    "triangles_through_edge",
    "admissible_triples",
    "estimated_score",
    "estimated_scores",
    "swap",
    "correlation_ab",
    "exact_score_correlation",
    "score_formula",
    "badness",
    "order_from_size",
    "swap_scores",
]


def order_from_size(n: int) -> int:
    q = (math.isqrt(4 * n - 3) - 1) // 2
    if q * q + q + 1 != n:
        raise ValueError(f"{n} is not q^2 + q + 1")
    return q


class Edge(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class PointLineCorrespondence:
    plane: ProjectivePlane = field(repr=False, compare=False)
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(self.plane.n)):
            raise ValueError("correspondence image is not a bijection onto the lines")

    def __call__(self, x: int) -> frozenset[int]:
        """Points of the line assigned to ``x``."""
        return self.plane.lines_of[self.image[x]]

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.image, dtype=np.int32)

    @cached_property
    def preimage_sets(self) -> tuple[frozenset[int], ...]:
        """``R(x) = {z : x in lam(z)}`` for every point ``x``."""
        out: list[set[int]] = [set() for _ in range(self.plane.n)]
        for z, line in enumerate(self.image):
            for x in self.plane.lines_of[line]:
                out[x].add(z)
        return tuple(frozenset(s) for s in out)

    @classmethod
    def identity(cls, plane: ProjectivePlane) -> "PointLineCorrespondence":
        return cls(plane, tuple(range(plane.n)))

    @classmethod
    def from_correlation(cls, plane: ProjectivePlane, c: Correlation) -> "PointLineCorrespondence":
        return cls(plane, c.pl)


# -- file format ---------------------------------------------------------------


def load_correspondence(text: str, plane: ProjectivePlane) -> PointLineCorrespondence:
    """Whitespace-separated line indices, entry ``i`` being the image of point ``i``.

    Values may be split over several rows; ``#`` starts a comment.
    """
    values = []
    for raw in text.splitlines():
        values.extend(int(tok) for tok in raw.split("#", 1)[0].split())
    if len(values) != plane.n:
        raise ValueError(f"expected {plane.n} entries, found {len(values)}")
    return PointLineCorrespondence(plane, tuple(values))


def read_correspondence(path: str | Path, plane: ProjectivePlane) -> PointLineCorrespondence:
    return load_correspondence(Path(path).read_text(), plane)


def format_correspondence(lam: PointLineCorrespondence) -> str:
    return " ".join(str(v) for v in lam.image) + "\n"


# -- graph combinatorics -----------------------------------------------------


def edges(lam: PointLineCorrespondence) -> list[Edge]:
    """Edges of the graph of ``lam`` in lexicographic order."""
    return [Edge(x, y) for x in range(lam.plane.n) for y in sorted(lam(x))]


def is_admissible(lam: PointLineCorrespondence, x: int, y: int, z: int) -> bool:
    return y in lam(x) and z in lam(y) and x in lam(z)


def triangles_through_edge(lam: PointLineCorrespondence, e: tuple[int, int]) -> list[int]:
    """All ``z`` making ``(x, y, z)`` admissible, for the edge ``e = (x, y)``."""
    x, y = e
    if y not in lam(x):
        raise ValueError(f"({x}, {y}) is not an edge of the graph")
    return sorted(lam(y) & lam.preimage_sets[x])


def admissible_triples(lam: PointLineCorrespondence) -> list[tuple[int, int, int]]:
    return [
        (x, y, z)
        for x, y in edges(lam)
        for z in sorted(lam(y) & lam.preimage_sets[x])
    ]


def swap(lam: PointLineCorrespondence, a: int, b: int) -> PointLineCorrespondence:
    image = list(lam.image)
    image[a], image[b] = image[b], image[a]
    return PointLineCorrespondence(lam.plane, tuple(image))


# -- greedy cover --------------------------------------------------------------


class CoverStatus(str, enum.Enum):
    SUCCESS = "SUCCESS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class CoverResult:
    """Outcome of the greedy cover.

    ``score`` counts covered edges (a loop counts once); ``chosen`` lists the
    committed triangles by their origins in commit order.
    """

    status: CoverStatus
    score: int
    chosen: tuple[tuple[int, int, int], ...]
    uncovered: frozenset[Edge]

    @property
    def succeeded(self) -> bool:
        return self.status is CoverStatus.SUCCESS


def estimated_score(lam: PointLineCorrespondence, restart: bool = True) -> CoverResult:
    """Greedy cover of the graph of ``lam`` by forced triangles.

    Edges are scanned in lexicographic order.  An edge lying in exactly one
    triangle of the remaining graph commits that triangle and its edges are
    removed.  By default the scan then starts over from the first edge;
    ``restart=False`` carries on from the next edge instead and repeats full
    passes until one commits nothing.  The cover fails when triangles remain
    at the end.
    """
    plane = lam.plane
    k = plane.order + 1
    m = plane.n * k
    chosen = np.empty((m, 3), dtype=np.int32)
    alive = np.empty(m, dtype=np.bool_)
    score, failed, nchosen = _greedy_cover(
        lam.array, plane.line_points, _line_pos(plane), restart, chosen, alive
    )
    uncovered = frozenset(
        Edge(e // k, int(plane.line_points[lam.image[e // k], e % k]))
        for e in np.flatnonzero(alive)
    )
    return CoverResult(
        CoverStatus.FAIL if failed else CoverStatus.SUCCESS,
        int(score),
        tuple(tuple(int(v) for v in row) for row in chosen[:nchosen]),
        uncovered,
    )


def estimated_scores(
    plane: ProjectivePlane, images: np.ndarray, restart: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Scores and FAIL flags for a batch of correspondences (one image per row)."""
    images = np.ascontiguousarray(images, dtype=np.int32)
    return _batch_cover(images, plane.line_points, _line_pos(plane), restart)


def _line_pos(plane: ProjectivePlane) -> np.ndarray:
    # position of each point within each line's sorted point list, or -1
    pos = plane.__dict__.get("_line_pos")
    if pos is None:
        pos = np.full((plane.n, plane.n), -1, dtype=np.int32)
        for l in range(plane.n):
            pos[l, plane.line_points[l]] = np.arange(plane.order + 1)
        plane.__dict__["_line_pos"] = pos
    return pos


_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)


@numba.njit(inline="always")
def _popcount(v):
    v = v - ((v >> _ONE) & _M1)
    v = (v & _M2) + ((v >> np.uint64(2)) & _M2)
    v = (v + (v >> np.uint64(4))) & _M4
    return (v * _H01) >> np.uint64(56)


@numba.njit(inline="always")
def _lowest_bit(v):
    return int(_popcount((v & (~v + _ONE)) - _ONE))


@numba.njit(cache=True)
def _triangle_count(out, inn, x, y, W):
    # number of z with (y, z) and (z, x) both present; also returns one such z
    c = 0
    z = -1
    for w in range(W):
        v = out[y, w] & inn[x, w]
        if v != 0:
            c += int(_popcount(v))
            z = w * 64 + _lowest_bit(v)
            if c > 1:
                break
    return c, z


@numba.njit(cache=True)
def _remove_edge(out, inn, alive, image, line_pos, k, u, v):
    alive[u * k + line_pos[image[u], v]] = False
    out[u, v >> 6] &= ~(_ONE << np.uint64(v & 63))
    inn[v, u >> 6] &= ~(_ONE << np.uint64(u & 63))


@numba.njit(cache=True)
def _greedy_cover(image, line_points, line_pos, restart, chosen, alive):
    n, k = line_points.shape
    W = (n + 63) // 64
    out = np.zeros((n, W), np.uint64)
    inn = np.zeros((n, W), np.uint64)
    for x in range(n):
        row = image[x]
        for j in range(k):
            y = line_points[row, j]
            out[x, y >> 6] |= _ONE << np.uint64(y & 63)
            inn[y, x >> 6] |= _ONE << np.uint64(x & 63)
    m = n * k
    alive[:] = True
    score = 0
    nchosen = 0
    changed = True
    while changed:
        changed = False
        for e in range(m):
            if not alive[e]:
                continue
            x = e // k
            y = line_points[image[x], e % k]
            c, z = _triangle_count(out, inn, x, y, W)
            if c != 1:
                continue
            chosen[nchosen, 0] = x
            chosen[nchosen, 1] = y
            chosen[nchosen, 2] = z
            nchosen += 1
            if x == y and y == z:
                _remove_edge(out, inn, alive, image, line_pos, k, x, x)
                score += 1
            else:
                _remove_edge(out, inn, alive, image, line_pos, k, x, y)
                _remove_edge(out, inn, alive, image, line_pos, k, y, z)
                _remove_edge(out, inn, alive, image, line_pos, k, z, x)
                score += 3
            changed = True
            if restart:
                break
    failed = False
    for e in range(m):
        if alive[e]:
            x = e // k
            y = line_points[image[x], e % k]
            c, z = _triangle_count(out, inn, x, y, W)
            if c > 0:
                failed = True
                break
    return score, failed, nchosen


@numba.njit(cache=True)
def _batch_cover(images, line_points, line_pos, restart):
    b, n = images.shape
    k = line_points.shape[1]
    scores = np.empty(b, np.int64)
    failed = np.empty(b, np.bool_)
    chosen = np.empty((n * k, 3), np.int32)
    alive = np.empty(n * k, np.bool_)
    for i in range(b):
        s, f, _ = _greedy_cover(images[i], line_points, line_pos, restart, chosen, alive)
        scores[i] = s
        failed[i] = f
    return scores, failed


@numba.njit(cache=True)
def _swap_cover(image, pairs, line_points, line_pos, restart):
    n, k = line_points.shape
    npairs = pairs.shape[0]
    scores = np.empty(npairs, np.int64)
    failed = np.empty(npairs, np.bool_)
    chosen = np.empty((n * k, 3), np.int32)
    alive = np.empty(n * k, np.bool_)
    work = image.copy()
    for i in range(npairs):
        a = pairs[i, 0]
        b = pairs[i, 1]
        work[a] = image[b]
        work[b] = image[a]
        s, f, _ = _greedy_cover(work, line_points, line_pos, restart, chosen, alive)
        scores[i] = s
        failed[i] = f
        work[a] = image[a]
        work[b] = image[b]
    return scores, failed


def swap_scores(
    lam: PointLineCorrespondence, pairs: np.ndarray, restart: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Estimated score of every swapped neighbour listed in ``pairs``."""
    pairs = np.ascontiguousarray(pairs, dtype=np.int32).reshape(-1, 2)
    return _swap_cover(lam.array, pairs, lam.plane.line_points, _line_pos(lam.plane), restart)


# -- correlations --------------------------------------------------------------


def correlation_ab(c: Correlation) -> tuple[int, int]:
    """``a`` counts points lying on their image under the cube of ``c``;
    ``b`` counts those among them also fixed by the sixth power."""
    if c.plane is None:
        raise ValueError("correlation is not attached to a plane")
    lines_of = c.plane.lines_of
    pl, lp = c.pl, c.lp
    a = b = 0
    for p in range(len(pl)):
        cube = pl[lp[pl[p]]]
        if p in lines_of[cube]:
            a += 1
            if lp[pl[lp[cube]]] == p:
                b += 1
    return a, b


def score_formula(q: int, a: int, b: int) -> int:
    """``(q + 1)(q^2 + q + 1) - (2q - 3) a - b``."""
    return (q + 1) * (q * q + q + 1) - (2 * q - 3) * a - b


def exact_score_correlation(c: Correlation) -> int:
    """Maximum number of edges coverable by disjoint triangles, for a correlation."""
    return score_formula(order_from_size(len(c.pl)), *correlation_ab(c))


def badness(
    lam: PointLineCorrespondence, uncovered: Iterable[tuple[int, int]], mode: str = "both"
) -> list[int]:
    """Uncovered edges meeting each point.

    ``mode="both"`` counts an edge at its origin and its destination (a loop
    once); ``mode="origin"`` counts it at the origin only.
    """
    if mode not in ("both", "origin"):
        raise ValueError(f"unknown badness mode {mode!r}")
    counts = [0] * lam.plane.n
    for x, y in uncovered:
        counts[x] += 1
        if mode == "both" and x != y:
            counts[y] += 1
    return counts
