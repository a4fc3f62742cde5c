"""Triangle presentations: verification, extraction from covers, restriction.

Triples are stored closed under rotation ``(x, y, z) -> (y, z, x)``.  Files
and relator lists use one representative per rotation orbit, the least
rotation in lexicographic order.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

from .correspondence import CoverResult, PointLineCorrespondence
from .incidence import ProjectivePlane, SubplaneEmbedding, restrict_to_subplane

__all__ = [
    "PresentationError",
    "Verdict",
    "VerdictKind",
    "TrianglePresentation",
    "ParityVerdict",
    "rotations",
    "orbit_representative",
    "close_under_rotation",
    "load_triples",
    "read_triples",
    "format_triples",
    "verify_presentation",
    "from_cover",
    "orbit_decomposition",
    "restrict",
    "check_parity",
    "export_group_presentation",
]

Triple = tuple[int, int, int]


class PresentationError(ValueError):
    pass


def rotations(t: Triple) -> tuple[Triple, Triple, Triple]:
    x, y, z = t
    return (x, y, z), (y, z, x), (z, x, y)


def orbit_representative(t: Triple) -> Triple:
    return min(rotations(t))


def close_under_rotation(triples: Iterable[Triple]) -> frozenset[Triple]:
    return frozenset(r for t in triples for r in rotations(tuple(int(v) for v in t)))


def _triples_of(obj) -> frozenset[Triple]:
    return obj.triples if isinstance(obj, TrianglePresentation) else frozenset(obj)


@dataclass(frozen=True)
class TrianglePresentation:
    plane: ProjectivePlane = field(repr=False, compare=False)
    lam: PointLineCorrespondence = field(repr=False)
    triples: frozenset[Triple]

    @cached_property
    def lookup(self) -> dict[tuple[int, int], int]:
        """``(x, y) -> z`` for every triple."""
        return {(x, y): z for x, y, z in self.triples}

    @property
    def size(self) -> int:
        return len(self.triples)

    @property
    def is_full(self) -> bool:
        q = self.plane.order
        return len(self.triples) == (q + 1) * self.plane.n

    def representatives(self) -> list[Triple]:
        return sorted({orbit_representative(t) for t in self.triples})

    @classmethod
    def from_orbits(
        cls, plane: ProjectivePlane, lam: PointLineCorrespondence, reps: Iterable[Triple]
    ) -> "TrianglePresentation":
        return cls(plane, lam, close_under_rotation(reps))


# -- file format ---------------------------------------------------------------

_INT = re.compile(r"-?\d+")


def load_triples(text: str) -> frozenset[Triple]:
    """Parse one orbit per line (``x y z``, commas and brackets tolerated).

    Returns the rotation closure.
    """
    reps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        vals = [int(v) for v in _INT.findall(line)]
        if not vals:
            continue
        if len(vals) != 3:
            raise ValueError(f"line {lineno}: expected 3 indices, found {len(vals)}")
        reps.append(tuple(vals))
    return close_under_rotation(reps)


def read_triples(path: str | Path) -> frozenset[Triple]:
    return load_triples(Path(path).read_text())


def format_triples(triples) -> str:
    reps = sorted({orbit_representative(t) for t in _triples_of(triples)})
    return "".join(f"{x} {y} {z}\n" for x, y, z in reps)


# -- verification --------------------------------------------------------------


class VerdictKind(str, enum.Enum):
    FULL = "FULL"
    PARTIAL = "PARTIAL"
    INVALID = "INVALID"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    size: int
    reason: str = ""
    triple: Triple | None = None

    def __bool__(self) -> bool:
        return self.kind is not VerdictKind.INVALID


def verify_presentation(
    plane: ProjectivePlane, lam: PointLineCorrespondence, triples
) -> Verdict:
    """Classify ``triples`` as a full, partial or invalid presentation for ``lam``."""
    ts = _triples_of(triples)
    n = plane.n
    seen: dict[tuple[int, int], int] = {}
    for t in sorted(ts):
        x, y, z = t
        if not all(0 <= v < n for v in t):
            return Verdict(VerdictKind.INVALID, len(ts), "index out of range", t)
        if (y, z, x) not in ts:
            return Verdict(VerdictKind.INVALID, len(ts), "not closed under rotation", t)
        if y not in lam(x):
            return Verdict(VerdictKind.INVALID, len(ts), "second point not on the line of the first", t)
        if (x, y) in seen:
            return Verdict(VerdictKind.INVALID, len(ts), f"third point not unique (also {seen[x, y]})", t)
        seen[x, y] = z
    full = len(ts) == (plane.order + 1) * n
    return Verdict(VerdictKind.FULL if full else VerdictKind.PARTIAL, len(ts))


def from_cover(lam: PointLineCorrespondence, cover: CoverResult) -> TrianglePresentation:
    """Partial presentation made of the triangles committed by a cover."""
    return TrianglePresentation(lam.plane, lam, close_under_rotation(cover.chosen))


def orbit_decomposition(triples) -> tuple[int, int]:
    """Number of rotation orbits of size 3 and of loops ``(x, x, x)``."""
    ts = _triples_of(triples)
    loops = sum(1 for x, y, z in ts if x == y == z)
    rest = len(ts) - loops
    if rest % 3:
        raise ValueError("triples are not closed under rotation")
    return rest // 3, loops


def restrict(
    tp: TrianglePresentation, emb: SubplaneEmbedding
) -> tuple[PointLineCorrespondence, TrianglePresentation]:
    """Restrict a full presentation to a subplane preserved by its correspondence."""
    lam = tp.lam
    for p in sorted(emb.points):
        if lam.image[p] not in emb.lines:
            raise PresentationError(f"point {p} is sent to line {lam.image[p]} outside the subplane")
    for x, y, z in sorted(tp.triples):
        if x in emb.points and y in emb.points and z not in emb.points:
            raise PresentationError(f"triple {(x, y, z)} leaves the subplane")
    sub, pidx, lidx = restrict_to_subplane(emb)
    ploc = {p: i for i, p in enumerate(pidx)}
    lloc = {l: i for i, l in enumerate(lidx)}
    lam0 = PointLineCorrespondence(sub, tuple(lloc[lam.image[p]] for p in pidx))
    t0 = frozenset(
        (ploc[x], ploc[y], ploc[z])
        for x, y, z in tp.triples
        if x in emb.points and y in emb.points and z in emb.points
    )
    res = TrianglePresentation(sub, lam0, t0)
    verdict = verify_presentation(sub, lam0, t0)
    if verdict.kind is not VerdictKind.FULL:
        raise PresentationError(f"restriction is {verdict.kind.value}: {verdict.reason}")
    return lam0, res


@dataclass(frozen=True)
class ParityVerdict:
    holds: bool
    marked: frozenset[int]
    counterexample: Triple | None = None


def check_parity(triples, lines: Iterable[int], plane: ProjectivePlane | None = None) -> ParityVerdict:
    """Does every triple meet the union of ``lines`` an odd number of times?

    Repeated coordinates count with multiplicity.  When true, sending the
    generator of a marked point to 0 and every other generator to 1 defines a
    homomorphism onto the group of order 2.
    """
    if plane is None:
        if not isinstance(triples, TrianglePresentation):
            raise TypeError("a plane is needed to resolve line indices")
        plane = triples.plane
    marked = frozenset().union(*(plane.lines_of[l] for l in lines)) if lines else frozenset()
    for t in sorted(_triples_of(triples)):
        if sum(v in marked for v in t) % 2 == 0:
            return ParityVerdict(False, marked, t)
    return ParityVerdict(True, marked)


def export_group_presentation(triples, n: int | None = None, fmt: str = "generic") -> str:
    """Group presentation with one generator per point and one relator per orbit.

    ``generic`` is line oriented::

        generators 3
        a0 a1 a2
        relators 1
        a0*a1*a2

    ``gap`` is a script defining the free group ``F`` and quotient ``G``.
    """
    ts = _triples_of(triples)
    if n is None:
        if not isinstance(triples, TrianglePresentation):
            raise TypeError("generator count required for a bare triple set")
        n = triples.plane.n
    reps = sorted({orbit_representative(t) for t in ts})
    if fmt == "generic":
        lines = [f"generators {n}", " ".join(f"a{i}" for i in range(n)), f"relators {len(reps)}"]
        lines += ["*".join(f"a{v}" for v in t) for t in reps]
        return "\n".join(lines) + "\n"
    if fmt == "gap":
        names = ", ".join(f'"a{i}"' for i in range(n))
        rels = ",\n  ".join("*".join(f"a[{v + 1}]" for v in t) for t in reps)
        return (
            f"F := FreeGroup([{names}]);;\n"
            "a := GeneratorsOfGroup(F);;\n"
            f"G := F / [\n  {rels}\n];;\n"
        )
    raise ValueError(f"unknown format {fmt!r}")
