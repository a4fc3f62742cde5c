"""Finite projective planes: loading, validation, isomorphisms and subplanes.

Points and lines are both indexed ``0..n-1`` with ``n = q*q + q + 1``.  A
plane is stored as the list of point sets of its lines, together with dense
``join``/``meet`` tables used by the numba kernels.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numba
import numpy as np

__all__ = [
    "PlaneFormatError",
    "InvalidPlaneError",
    "NotASubplaneError",
    "NotBaerError",
    "DegenerateConfigurationError",
    "ProjectivePlane",
    "Collineation",
    "Correlation",
    "SubplaneEmbedding",
    "DesarguesVerdict",
    "load_plane",
    "read_plane",
    "format_plane",
    "difference_set_plane",
    "dual",
    "isomorphisms",
    "enumerate_collineations",
    "enumerate_correlations",
    "subplane",
    "is_baer_subplane",
    "restrict_to_subplane",
    "check_desargues_config",
    "desargues_violations",
]


class PlaneFormatError(ValueError):
    """Incidence table text could not be parsed."""


class InvalidPlaneError(ValueError):
    """Incidence structure violates a projective-plane axiom."""


class NotASubplaneError(ValueError):
    pass


class NotBaerError(ValueError):
    pass


class DegenerateConfigurationError(ValueError):
    pass


class ProjectivePlane:
    """A projective plane of order ``q`` given by the points on each line.

    Construction checks every axiom and raises :class:`InvalidPlaneError`
    naming the first failing point pair or line pair.
    """

    def __init__(self, lines_of: Sequence[Iterable[int]]):
        rows = [tuple(sorted(int(p) for p in row)) for row in lines_of]
        n = len(rows)
        if n == 0:
            raise InvalidPlaneError("plane has no lines")
        k = len(rows[0])
        q = k - 1
        if q < 2 or q * q + q + 1 != n:
            raise InvalidPlaneError(
                f"{n} lines of {k} points do not fit any order q >= 2"
            )
        for i, row in enumerate(rows):
            if len(set(row)) != len(row):
                raise InvalidPlaneError(f"line {i} repeats a point")
            if len(row) != k:
                raise InvalidPlaneError(
                    f"line {i} has {len(row)} points, expected {k}"
                )
            if row[0] < 0 or row[-1] >= n:
                raise InvalidPlaneError(f"line {i} has a point outside 0..{n - 1}")

        self.order = q
        self.n = n
        self.lines_of: tuple[frozenset[int], ...] = tuple(frozenset(r) for r in rows)

        inc = np.zeros((n, n), dtype=np.bool_)
        for i, row in enumerate(rows):
            inc[list(row), i] = True
        degrees = inc.sum(axis=1)
        bad = np.flatnonzero(degrees != k)
        if bad.size:
            p = int(bad[0])
            raise InvalidPlaneError(
                f"point {p} lies on {int(degrees[p])} lines, expected {k}"
            )

        common = inc.astype(np.int32) @ inc.T.astype(np.int32)
        np.fill_diagonal(common, 1)
        wrong = np.argwhere(common != 1)
        if wrong.size:
            a, b = (int(v) for v in wrong[0])
            raise InvalidPlaneError(
                f"points {a} and {b} lie on {int(common[a, b])} common lines"
            )
        common = inc.T.astype(np.int32) @ inc.astype(np.int32)
        np.fill_diagonal(common, 1)
        wrong = np.argwhere(common != 1)
        if wrong.size:
            a, b = (int(v) for v in wrong[0])
            raise InvalidPlaneError(
                f"lines {a} and {b} meet in {int(common[a, b])} points"
            )

        self.incidence = inc
        self.line_points = np.array(rows, dtype=np.int32)
        self.point_lines = np.array(
            [np.flatnonzero(inc[p]) for p in range(n)], dtype=np.int32
        )
        join = np.full((n, n), -1, dtype=np.int32)
        for i, row in enumerate(rows):
            r = np.array(row)
            join[np.ix_(r, r)] = i
        np.fill_diagonal(join, -1)
        meet = np.full((n, n), -1, dtype=np.int32)
        for p in range(n):
            ls = self.point_lines[p]
            meet[np.ix_(ls, ls)] = p
        np.fill_diagonal(meet, -1)
        self.join = join
        self.meet = meet

    @cached_property
    def points_of(self) -> tuple[frozenset[int], ...]:
        """Lines through each point."""
        return tuple(frozenset(int(x) for x in row) for row in self.point_lines)

    def line_through(self, a: int, b: int) -> int:
        if a == b:
            raise ValueError("a line needs two distinct points")
        return int(self.join[a, b])

    def intersection(self, l: int, m: int) -> int:
        if l == m:
            raise ValueError("an intersection needs two distinct lines")
        return int(self.meet[l, m])

    def collinear(self, points: Iterable[int]) -> bool:
        pts = sorted(set(points))
        if len(pts) <= 2:
            return True
        line = self.join[pts[0], pts[1]]
        return bool(all(self.incidence[p, line] for p in pts[2:]))

    @cached_property
    def point_invariants(self) -> np.ndarray:
        """Isomorphism-invariant profile per point (one row per point).

        Row ``p`` counts the quadrangles through ``p`` by the size of the
        subplane they generate; every quadrangle generating more than
        ``q + sqrt(q) + 1`` points generates the whole plane (``m*m <= q``
        for proper subplanes of order ``m``), so that is the last column.
        """
        cap = self.order + math.isqrt(self.order) + 1
        return _quadrangle_closure_counts(self.join, self.meet, self.incidence, cap)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectivePlane):
            return NotImplemented
        return self.lines_of == other.lines_of

    def __hash__(self) -> int:
        return hash(self.lines_of)

    def __repr__(self) -> str:
        return f"ProjectivePlane(order={self.order}, n={self.n})"


# -- text format ---------------------------------------------------------------


def load_plane(text: str) -> ProjectivePlane:
    """Parse an incidence table: row ``i`` holds the points of line ``i``.

    Blank lines and ``#`` comments are ignored.
    """
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError as exc:
            raise PlaneFormatError(f"line {lineno}: {exc}") from None
    if not rows:
        raise PlaneFormatError("no rows found")
    k = len(rows[0])
    q = k - 1
    n = q * q + q + 1
    if q < 2:
        raise PlaneFormatError(f"row length {k} is too short for a plane")
    if len(rows) != n:
        raise PlaneFormatError(f"expected {n} rows for order {q}, found {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != k:
            raise PlaneFormatError(f"row {i} has {len(row)} entries, expected {k}")
        for p in row:
            if not 0 <= p < n:
                raise PlaneFormatError(f"row {i}: point {p} out of range 0..{n - 1}")
    return ProjectivePlane(rows)


def read_plane(path: str | Path) -> ProjectivePlane:
    return load_plane(Path(path).read_text())


def format_plane(plane: ProjectivePlane) -> str:
    return "".join(
        " ".join(str(p) for p in sorted(row)) + "\n" for row in plane.lines_of
    )


_DIFFERENCE_SETS = {2: (1, 2, 4), 3: (0, 1, 3, 9)}


def difference_set_plane(q: int) -> ProjectivePlane:
    """Cyclic plane of order 2 or 3; line ``x`` is ``{x + d}`` over the difference set."""
    if q not in _DIFFERENCE_SETS:
        raise ValueError(f"unsupported order {q}; only 2 and 3 are available")
    n = q * q + q + 1
    ds = _DIFFERENCE_SETS[q]
    return ProjectivePlane([[(x + d) % n for d in ds] for x in range(n)])


def dual(plane: ProjectivePlane) -> ProjectivePlane:
    """Swap points and lines: line ``p`` of the dual is the pencil of ``p``."""
    return ProjectivePlane([sorted(s) for s in plane.points_of])


# -- collineations and correlations ------------------------------------------


@dataclass(frozen=True)
class Collineation:
    point_perm: tuple[int, ...]
    line_perm: tuple[int, ...]

    def is_valid(self, plane: ProjectivePlane) -> bool:
        pp = np.asarray(self.point_perm)
        lp = np.asarray(self.line_perm)
        if sorted(self.point_perm) != list(range(plane.n)):
            return False
        if sorted(self.line_perm) != list(range(plane.n)):
            return False
        return bool(np.array_equal(plane.incidence[np.ix_(pp, lp)], plane.incidence))


@dataclass(frozen=True)
class Correlation:
    """Incidence-reversing pair of bijections ``pl: P -> L`` and ``lp: L -> P``."""

    pl: tuple[int, ...]
    lp: tuple[int, ...]
    plane: ProjectivePlane | None = field(default=None, repr=False, compare=False)

    def is_valid(self, plane: ProjectivePlane | None = None) -> bool:
        plane = plane or self.plane
        if sorted(self.pl) != list(range(plane.n)):
            return False
        if sorted(self.lp) != list(range(plane.n)):
            return False
        pl = np.asarray(self.pl)
        lp = np.asarray(self.lp)
        # p in l  <=>  lp(l) in pl(p)
        return bool(np.array_equal(plane.incidence[np.ix_(lp, pl)].T, plane.incidence))

    def point_square(self) -> list[int]:
        """The point map ``p -> lp(pl(p))``."""
        return [self.lp[self.pl[p]] for p in range(len(self.pl))]


def isomorphisms(
    source: ProjectivePlane,
    target: ProjectivePlane,
    fixed_points: dict[int, int] | None = None,
    fixed_lines: dict[int, int] | None = None,
    limit: int | None = None,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield incidence-preserving ``(point_map, line_map)`` pairs source -> target.

    The search individualises a base of points one at a time and propagates
    joins and meets after every choice, so each leaf is a full isomorphism.
    Candidate images are pruned with :attr:`ProjectivePlane.point_invariants`.
    Order of the output is deterministic (candidates in increasing index).
    """
    if limit is not None and limit <= 0:
        return
    if source.n != target.n:
        return
    n = source.n
    _, labels = np.unique(
        np.vstack([source.point_invariants, target.point_invariants]),
        axis=0,
        return_inverse=True,
    )
    labels = labels.reshape(-1).astype(np.int32)
    inv_s, inv_t = labels[:n], labels[n:]
    if not np.array_equal(np.sort(inv_s), np.sort(inv_t)):
        return
    state = _new_state(n)
    ok = True
    for p, img in (fixed_points or {}).items():
        ok = ok and _extend(source, target, inv_s, inv_t, state, 0, int(p), int(img))
    for l, img in (fixed_lines or {}).items():
        ok = ok and _extend(source, target, inv_s, inv_t, state, 1, int(l), int(img))
    if not ok:
        return

    base = _choose_base(source, inv_s, state)
    by_label: dict[int, list[int]] = {}
    for c in range(n):
        by_label.setdefault(int(inv_t[c]), []).append(c)

    found = 0
    stack: list[tuple[int, np.ndarray]] = [(0, state)]
    # explicit DFS; children pushed in reverse so output stays in index order
    while stack:
        level, st = stack.pop()
        if level == len(base):
            yield tuple(int(v) for v in st[:n]), tuple(int(v) for v in st[2 * n : 3 * n])
            found += 1
            if limit is not None and found >= limit:
                return
            continue
        p = base[level]
        if st[p] != -1:
            stack.append((level + 1, st))
            continue
        cands = np.array(by_label[int(inv_s[p])], dtype=np.int32)
        cands = _filter_candidates(
            p, cands, st, source.incidence, target.incidence, n
        )
        children = []
        for c in cands:
            child = st.copy()
            if _extend(source, target, inv_s, inv_t, child, 0, p, int(c)):
                children.append((level + 1, child))
        stack.extend(reversed(children))


def enumerate_collineations(
    plane: ProjectivePlane,
    fixed_points: Iterable[int] = (),
    fixed_lines: Iterable[int] = (),
    limit: int | None = None,
) -> Iterator[Collineation]:
    """All collineations fixing the given points and lines pointwise."""
    fp = {int(p): int(p) for p in fixed_points}
    fl = {int(l): int(l) for l in fixed_lines}
    for pm, lm in isomorphisms(plane, plane, fp, fl, limit):
        yield Collineation(pm, lm)


def enumerate_correlations(
    plane: ProjectivePlane, limit: int | None = None
) -> Iterator[Correlation]:
    """All correlations, found as isomorphisms from the plane onto its dual."""
    for pm, lm in isomorphisms(plane, dual(plane), limit=limit):
        yield Correlation(pm, lm, plane)


def _new_state(n: int) -> np.ndarray:
    # pmap | pinv | lmap | linv | mapped points | mapped lines | counts
    st = np.full(6 * n + 2, -1, dtype=np.int32)
    st[6 * n] = 0
    st[6 * n + 1] = 0
    return st


def _extend(src, tgt, inv_s, inv_t, state, kind, a, b) -> bool:
    return _propagate(
        src.join, src.meet, src.incidence, tgt.join, tgt.meet, tgt.incidence,
        inv_s, inv_t, state, kind, a, b,
    )


def _choose_base(plane: ProjectivePlane, inv: np.ndarray, state: np.ndarray) -> list[int]:
    """Greedy base of points generating the plane.

    The next point is taken from the smallest class of look-alikes (same
    invariant, same incidences with the current closure), skipping classes
    whose points would only add themselves to the closure.
    """
    n = plane.n
    pts = {p for p in range(n) if state[p] != -1}
    lines = {l for l in range(n) if state[2 * n + l] != -1}
    pts, lines = _closure(plane, pts, lines)
    base = []
    while len(pts) < n:
        sig = {}
        for r in range(n):
            if r not in pts:
                key = (int(inv[r]), frozenset(l for l in plane.points_of[r] if l in lines))
                sig.setdefault(key, []).append(r)
        groups = sorted(sig.values(), key=lambda group: (len(group), group[0]))
        size = len(pts) + len(lines)
        choice = None
        for group in groups:
            grown = _closure(plane, pts | {group[0]}, lines)
            if len(grown[0]) + len(grown[1]) > size + 1:
                choice = group[0], grown
                break
        if choice is None:
            p = groups[0][0]
            choice = p, _closure(plane, pts | {p}, lines)
        p, (pts, lines) = choice
        base.append(p)
    return base


def _closure(plane: ProjectivePlane, pts: set[int], lines: set[int]):
    pts, lines = set(pts), set(lines)
    todo_p, todo_l = list(pts), list(lines)
    pts, lines = set(), set()
    while todo_p or todo_l:
        if todo_p:
            p = todo_p.pop()
            if p in pts:
                continue
            for r in pts:
                l = int(plane.join[p, r])
                if l not in lines:
                    todo_l.append(l)
            pts.add(p)
        else:
            l = todo_l.pop()
            if l in lines:
                continue
            for m in lines:
                p = int(plane.meet[l, m])
                if p not in pts:
                    todo_p.append(p)
            lines.add(l)
    return pts, lines


@numba.njit(cache=True)
def _propagate(sjoin, smeet, sinc, tjoin, tmeet, tinc, inv_s, inv_t, st, kind, a, b):
    n = sjoin.shape[0]
    qk = np.empty(2 * n * n + 4, np.int8)
    qa = np.empty(2 * n * n + 4, np.int32)
    qb = np.empty(2 * n * n + 4, np.int32)
    qk[0] = kind
    qa[0] = a
    qb[0] = b
    head = 0
    tail = 1
    while head < tail:
        k = qk[head]
        x = qa[head]
        y = qb[head]
        head += 1
        if k == 0:
            if st[x] != -1:
                if st[x] != y:
                    return False
                continue
            if st[n + y] != -1 or inv_s[x] != inv_t[y]:
                return False
            nml = st[6 * n + 1]
            for i in range(nml):
                m = st[5 * n + i]
                if sinc[x, m] != tinc[y, st[2 * n + m]]:
                    return False
            st[x] = y
            st[n + y] = x
            nmp = st[6 * n]
            for i in range(nmp):
                r = st[4 * n + i]
                l = sjoin[x, r]
                l2 = tjoin[y, st[r]]
                cur = st[2 * n + l]
                if cur == -1:
                    qk[tail] = 1
                    qa[tail] = l
                    qb[tail] = l2
                    tail += 1
                elif cur != l2:
                    return False
            st[4 * n + nmp] = x
            st[6 * n] = nmp + 1
        else:
            if st[2 * n + x] != -1:
                if st[2 * n + x] != y:
                    return False
                continue
            if st[3 * n + y] != -1:
                return False
            nmp = st[6 * n]
            for i in range(nmp):
                r = st[4 * n + i]
                if sinc[r, x] != tinc[st[r], y]:
                    return False
            st[2 * n + x] = y
            st[3 * n + y] = x
            nml = st[6 * n + 1]
            for i in range(nml):
                m = st[5 * n + i]
                p = smeet[x, m]
                p2 = tmeet[y, st[2 * n + m]]
                cur = st[p]
                if cur == -1:
                    qk[tail] = 0
                    qa[tail] = p
                    qb[tail] = p2
                    tail += 1
                elif cur != p2:
                    return False
            st[5 * n + nml] = x
            st[6 * n + 1] = nml + 1
    return True


@numba.njit(cache=True)
def _filter_candidates(p, cands, st, sinc, tinc, n):
    out = np.empty(cands.shape[0], np.int32)
    k = 0
    nml = st[6 * n + 1]
    for c in cands:
        if st[n + c] != -1:
            continue
        good = True
        for i in range(nml):
            m = st[5 * n + i]
            if sinc[p, m] != tinc[c, st[2 * n + m]]:
                good = False
                break
        if good:
            out[k] = c
            k += 1
    return out[:k]


@numba.njit(cache=True)
def _closure_size(quad, join, meet, cap):
    # size of the subplane generated by quad, or cap + 1 once it exceeds cap
    n = join.shape[0]
    in_p = np.zeros(n, np.bool_)
    in_l = np.zeros(n, np.bool_)
    pts = np.empty(cap + 1, np.int32)
    lns = np.empty(cap + 1, np.int32)
    npt = 0
    nln = 0
    size = 2 * (cap + 1) * (cap + 1) + 8
    qv = np.empty(size, np.int32)
    qk = np.empty(size, np.int8)
    head = 0
    tail = 0
    for i in range(4):
        qv[tail] = quad[i]
        qk[tail] = 0
        tail += 1
    while head < tail:
        x = qv[head]
        k = qk[head]
        head += 1
        if k == 0:
            if in_p[x]:
                continue
            if npt == cap:
                return cap + 1
            in_p[x] = True
            for i in range(npt):
                l = join[x, pts[i]]
                if not in_l[l]:
                    qv[tail] = l
                    qk[tail] = 1
                    tail += 1
            pts[npt] = x
            npt += 1
        else:
            if in_l[x]:
                continue
            if nln == cap:
                return cap + 1
            in_l[x] = True
            for i in range(nln):
                p = meet[x, lns[i]]
                if not in_p[p]:
                    qv[tail] = p
                    qk[tail] = 0
                    tail += 1
            lns[nln] = x
            nln += 1
    return npt


@numba.njit(cache=True)
def _quadrangle_closure_counts(join, meet, inc, cap):
    n = join.shape[0]
    out = np.zeros((n, cap + 2), np.int64)
    quad = np.empty(4, np.int32)
    for a in range(n):
        for b in range(a + 1, n):
            lab = join[a, b]
            for c in range(b + 1, n):
                if inc[c, lab]:
                    continue
                lac = join[a, c]
                lbc = join[b, c]
                for d in range(c + 1, n):
                    if inc[d, lab] or inc[d, lac] or inc[d, lbc]:
                        continue
                    quad[0] = a
                    quad[1] = b
                    quad[2] = c
                    quad[3] = d
                    s = _closure_size(quad, join, meet, cap)
                    out[a, s] += 1
                    out[b, s] += 1
                    out[c, s] += 1
                    out[d, s] += 1
    return out


# -- subplanes -----------------------------------------------------------------


@dataclass(frozen=True)
class SubplaneEmbedding:
    plane: ProjectivePlane = field(repr=False)
    points: frozenset[int]
    lines: frozenset[int]
    sub_order: int
    baer: bool

    @property
    def point_index(self) -> tuple[int, ...]:
        """Ambient index of each restricted point, in ascending order."""
        return tuple(sorted(self.points))

    @property
    def line_index(self) -> tuple[int, ...]:
        return tuple(sorted(self.lines))


def subplane(plane: ProjectivePlane, points: Iterable[int], lines: Iterable[int]) -> SubplaneEmbedding:
    """Check that ``(points, lines)`` is a subplane and record whether it is Baer."""
    P0 = frozenset(int(p) for p in points)
    L0 = frozenset(int(l) for l in lines)
    for x in itertools.chain(P0, L0):
        if not 0 <= x < plane.n:
            raise NotASubplaneError(f"index {x} out of range")
    m = len(P0)
    q0 = (math.isqrt(4 * m - 3) - 1) // 2
    if q0 < 2 or q0 * q0 + q0 + 1 != m:
        raise NotASubplaneError(f"{m} points is not the size of a plane of order >= 2")
    if len(L0) != m:
        raise NotASubplaneError(f"{m} points but {len(L0)} lines")
    for l in sorted(L0):
        k = len(plane.lines_of[l] & P0)
        if k != q0 + 1:
            raise NotASubplaneError(f"line {l} holds {k} subplane points, expected {q0 + 1}")
    for p in sorted(P0):
        k = len(plane.points_of[p] & L0)
        if k != q0 + 1:
            raise NotASubplaneError(f"point {p} lies on {k} subplane lines, expected {q0 + 1}")
    for a, b in itertools.combinations(sorted(P0), 2):
        if int(plane.join[a, b]) not in L0:
            raise NotASubplaneError(f"line through points {a} and {b} is not in the subplane")
    for l, m_ in itertools.combinations(sorted(L0), 2):
        if int(plane.meet[l, m_]) not in P0:
            raise NotASubplaneError(f"lines {l} and {m_} meet outside the subplane")
    proper = m < plane.n
    covers_points = all(plane.points_of[p] & L0 for p in range(plane.n))
    covers_lines = all(plane.lines_of[l] & P0 for l in range(plane.n))
    return SubplaneEmbedding(plane, P0, L0, q0, proper and covers_points and covers_lines)


def is_baer_subplane(plane: ProjectivePlane, points: Iterable[int], lines: Iterable[int]) -> SubplaneEmbedding:
    emb = subplane(plane, points, lines)
    if len(emb.points) == plane.n:
        raise NotBaerError("a Baer subplane must be proper")
    if not emb.baer:
        raise NotBaerError("subplane does not meet every line and every pencil")
    return emb


def restrict_to_subplane(emb: SubplaneEmbedding) -> tuple[ProjectivePlane, tuple[int, ...], tuple[int, ...]]:
    """Restricted plane plus the ambient index of each of its points and lines."""
    pidx = emb.point_index
    lidx = emb.line_index
    local = {p: i for i, p in enumerate(pidx)}
    rows = [sorted(local[p] for p in emb.plane.lines_of[l] & emb.points) for l in lidx]
    return ProjectivePlane(rows), pidx, lidx


# -- Desargues -----------------------------------------------------------------


@dataclass(frozen=True)
class DesarguesVerdict:
    holds: bool
    axis_points: tuple[int, int, int]
    axis_line: int
    """Line through the first two axis points."""


def check_desargues_config(
    plane: ProjectivePlane, center: int, t1: Sequence[int], t2: Sequence[int]
) -> DesarguesVerdict:
    """Intersect corresponding sides of two triangles in perspective from ``center``.

    ``t1[i]`` corresponds to ``t2[i]``; side ``i`` joins vertices ``i`` and ``i+1``.
    """
    t1 = [int(v) for v in t1]
    t2 = [int(v) for v in t2]
    if len(t1) != 3 or len(t2) != 3:
        raise DegenerateConfigurationError("triangles need three vertices")
    for tri in (t1, t2):
        if len(set(tri)) != 3 or plane.collinear(tri):
            raise DegenerateConfigurationError(f"{tri} is not a triangle")
    if center in t1 or center in t2:
        raise DegenerateConfigurationError("center is a vertex")
    rays = []
    for a, b in zip(t1, t2):
        if a == b or not plane.collinear([center, a, b]):
            raise DegenerateConfigurationError(
                f"vertices {a} and {b} are not in perspective from {center}"
            )
        rays.append(int(plane.join[center, a]))
    if len(set(rays)) != 3:
        raise DegenerateConfigurationError("two vertex pairs share a ray from the center")
    axis = []
    for i in range(3):
        j = (i + 1) % 3
        s1 = int(plane.join[t1[i], t1[j]])
        s2 = int(plane.join[t2[i], t2[j]])
        if s1 == s2:
            raise DegenerateConfigurationError(f"side {i} is shared by both triangles")
        axis.append(int(plane.meet[s1, s2]))
    if axis[0] == axis[1]:
        raise DegenerateConfigurationError("axis points coincide")
    line = int(plane.join[axis[0], axis[1]])
    return DesarguesVerdict(bool(plane.incidence[axis[2], line]), tuple(axis), line)


def desargues_violations(plane: ProjectivePlane) -> Iterator[tuple[int, tuple[int, ...], tuple[int, ...], DesarguesVerdict]]:
    """Scan every perspective pair of ordered triangles; yield the failures."""
    n = plane.n
    for c in range(n):
        pencil = sorted(plane.points_of[c])
        for r1, r2, r3 in itertools.combinations(pencil, 3):
            rays = [sorted(plane.lines_of[r] - {c}) for r in (r1, r2, r3)]
            for t1 in itertools.product(*rays):
                for t2 in itertools.product(*rays):
                    if any(a == b for a, b in zip(t1, t2)):
                        continue
                    try:
                        verdict = check_desargues_config(plane, c, t1, t2)
                    except DegenerateConfigurationError:
                        continue
                    if not verdict.holds:
                        yield c, t1, t2, verdict
