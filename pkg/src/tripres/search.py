"""Local search over point-line correspondences by swapping images.

A step evaluates the estimated score of every unvisited neighbour obtained by
exchanging the lines of two points and moves to the best one, even when it is
worse than the current correspondence.  Visited correspondences are never
revisited, which keeps the walk out of local maxima.
"""

from __future__ import annotations

import csv
import enum
import logging
import statistics
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .correspondence import (
    CoverResult,
    PointLineCorrespondence,
    badness,
    correlation_ab,
    estimated_score,
    estimated_scores,
    exact_score_correlation,
    format_correspondence,
    swap,
    swap_scores,
)
from .incidence import Correlation, ProjectivePlane, enumerate_correlations
from .presentation import TrianglePresentation, from_cover

__all__ = [
    "Variant",
    "SearchConfig",
    "SearchState",
    "StepResult",
    "Exhausted",
    "EXHAUSTED",
    "Outcome",
    "SearchOutcome",
    "best_swap_step",
    "run_search",
    "search_from_correlations",
    "random_correspondence",
    "random_scores",
    "CensusRow",
    "correlation_census",
    "write_trace",
    "write_checkpoint",
]

log = logging.getLogger(__name__)


class Variant(str, enum.Enum):
    FULL_SCAN = "full"
    WORST_POINTS = "worst"


@dataclass(frozen=True)
class SearchConfig:
    target: int = 910
    variant: Variant = Variant.FULL_SCAN
    worst_points: int = 5
    max_steps: int = 1000
    restart_after_stall: int = 100
    rng_seed: int = 0
    badness_mode: str = "both"
    restart: bool = True  # greedy cover rescans from the first edge after a commit

    def __post_init__(self):
        if self.worst_points < 1:
            raise ValueError("worst_points must be at least 1")
        if self.max_steps < 0:
            raise ValueError("max_steps must be non-negative")
        if self.badness_mode not in ("both", "origin"):
            raise ValueError(f"unknown badness mode {self.badness_mode!r}")


@dataclass
class SearchState:
    current: PointLineCorrespondence
    cover: CoverResult
    visited: set[tuple[int, ...]] = field(default_factory=set)
    best_score: int = -1
    best: PointLineCorrespondence | None = None
    step: int = 0
    trace: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def start(cls, lam: PointLineCorrespondence, restart: bool = True) -> "SearchState":
        cover = estimated_score(lam, restart=restart)
        return cls(lam, cover, {lam.image}, cover.score, lam, 0, [(0, cover.score)])

    @property
    def score(self) -> int:
        return self.cover.score


@dataclass(frozen=True)
class StepResult:
    lam: PointLineCorrespondence
    score: int
    pair: tuple[int, int]
    failed: bool


class Exhausted:
    def __repr__(self) -> str:
        return "EXHAUSTED"


EXHAUSTED = Exhausted()


def _candidate_pairs(state: SearchState, config: SearchConfig) -> np.ndarray:
    n = state.current.plane.n
    if config.variant is Variant.FULL_SCAN:
        a, b = np.triu_indices(n, k=1)
        return np.stack([a, b], axis=1).astype(np.int32)
    bad = badness(state.current, state.cover.uncovered, config.badness_mode)
    worst = sorted(range(n), key=lambda p: (-bad[p], p))[: config.worst_points]
    pairs = {(min(a, b), max(a, b)) for a in worst for b in range(n) if b != a}
    return np.array(sorted(pairs), dtype=np.int32).reshape(-1, 2)


def best_swap_step(state: SearchState, config: SearchConfig) -> StepResult | Exhausted:
    """Best unvisited swapped neighbour, ties to the least pair ``(a, b)``, ``a < b``.

    Failed covers compete with their covered-edge count.
    """
    pairs = _candidate_pairs(state, config)
    if len(pairs) == 0:
        return EXHAUSTED
    scores, failed = swap_scores(state.current, pairs, restart=config.restart)
    # stable sort keeps the lexicographic pair order among equal scores
    order = np.argsort(-scores, kind="stable")
    image = state.current.image
    for i in order:
        a, b = int(pairs[i, 0]), int(pairs[i, 1])
        cand = list(image)
        cand[a], cand[b] = cand[b], cand[a]
        if tuple(cand) in state.visited:
            continue
        return StepResult(swap(state.current, a, b), int(scores[i]), (a, b), bool(failed[i]))
    return EXHAUSTED


class Outcome(str, enum.Enum):
    FOUND = "FOUND"
    STALLED = "STALLED"


@dataclass(frozen=True)
class SearchOutcome:
    outcome: Outcome
    lam: PointLineCorrespondence
    score: int
    steps: int
    trace: tuple[tuple[int, int], ...]
    presentation: TrianglePresentation | None = None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


def _found(state: SearchState, config: SearchConfig) -> bool:
    return state.cover.succeeded and state.score >= config.target


def run_search(
    plane: ProjectivePlane,
    start: PointLineCorrespondence,
    config: SearchConfig,
    state: SearchState | None = None,
) -> SearchOutcome:
    """Walk from ``start`` until the target score or a stopping rule."""
    if start.plane is not plane and start.plane.lines_of != plane.lines_of:
        raise ValueError("start correspondence lives on a different plane")
    state = state or SearchState.start(start, config.restart)
    last_gain = state.step
    reason = "max steps"
    while not _found(state, config):
        if state.step >= config.max_steps:
            break
        if state.step - last_gain >= config.restart_after_stall:
            reason = "stalled"
            break
        res = best_swap_step(state, config)
        if res is EXHAUSTED:
            reason = "exhausted"
            break
        state.step += 1
        state.current = res.lam
        state.cover = estimated_score(res.lam, restart=config.restart)
        state.visited.add(res.lam.image)
        state.trace.append((state.step, state.score))
        if state.score > state.best_score:
            state.best_score, state.best, last_gain = state.score, res.lam, state.step
        log.debug("step %d swap %s score %d", state.step, res.pair, state.score)
    if _found(state, config):
        tp = from_cover(state.current, state.cover)
        return SearchOutcome(Outcome.FOUND, state.current, state.score, state.step,
                             tuple(state.trace), tp)
    return SearchOutcome(Outcome.STALLED, state.best or state.current, state.best_score,
                         state.step, tuple(state.trace), reason=reason)


def search_from_correlations(
    plane: ProjectivePlane, config: SearchConfig, attempts: int = 1, pool: int = 1000
) -> SearchOutcome:
    """Restart the walk from correlations until one run reaches the target.

    Starting correlations are taken from the first ``pool`` ones in
    enumeration order, indices drawn from a generator seeded by ``rng_seed``.
    """
    corrs = [c.pl for c in enumerate_correlations(plane, limit=pool)]
    rng = np.random.default_rng(config.rng_seed)
    out = None
    for _ in range(attempts):
        start = PointLineCorrespondence(plane, corrs[int(rng.integers(len(corrs)))])
        out = run_search(plane, start, config)
        if out.found:
            return out
    assert out is not None
    return out


# -- baselines -----------------------------------------------------------------


def random_correspondence(
    plane: ProjectivePlane, rng: np.random.Generator | int
) -> PointLineCorrespondence:
    rng = np.random.default_rng(rng)
    return PointLineCorrespondence(plane, tuple(int(v) for v in rng.permutation(plane.n)))


def random_scores(
    plane: ProjectivePlane, samples: int, seed: int = 0, restart: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Estimated scores and FAIL flags of ``samples`` seeded random correspondences."""
    rng = np.random.default_rng(seed)
    images = np.stack([rng.permutation(plane.n) for _ in range(samples)]) if samples else \
        np.empty((0, plane.n), dtype=np.int32)
    return estimated_scores(plane, images, restart=restart)


@dataclass(frozen=True)
class CensusRow:
    a: int
    b: int
    exact: int
    count: int
    mean_estimate: float
    failures: int
    max_estimate_over_exact: int  # largest s - S among successful covers


def correlation_census(
    plane: ProjectivePlane,
    limit: int | None = None,
    correlations: Iterable[Correlation] | None = None,
    restart: bool = True,
) -> list[CensusRow]:
    """Group correlations by ``(a, b)`` with exact and estimated scores."""
    corrs = list(correlations if correlations is not None else enumerate_correlations(plane, limit))
    if not corrs:
        return []
    images = np.array([c.pl for c in corrs], dtype=np.int32)
    scores, failed = estimated_scores(plane, images, restart=restart)
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, c in enumerate(corrs):
        groups[correlation_ab(c)].append(i)
    rows = []
    for (a, b), idx in sorted(groups.items()):
        exact = exact_score_correlation(corrs[idx[0]])
        ok = [int(scores[i]) for i in idx if not failed[i]]
        rows.append(CensusRow(
            a, b, exact, len(idx),
            statistics.fmean(int(scores[i]) for i in idx),
            sum(bool(failed[i]) for i in idx),
            max((s - exact for s in ok), default=0),
        ))
    return rows


# -- output --------------------------------------------------------------------


def write_trace(path: str | Path, trace: Iterable[tuple[int, int]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["step", "score"])
        w.writerows(trace)


def write_checkpoint(path: str | Path, state: SearchState) -> None:
    """Current correspondence plus the size of the visited set (not the set itself)."""
    Path(path).write_text(format_correspondence(state.current) + f"# visited {len(state.visited)}\n")
