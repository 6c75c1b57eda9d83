"""Finite coloring search: empirical evidence for partition regularity.

For a polynomial p, r colors and an interval [1..N], the engine enumerates
every solution tuple of p inside the interval (through the witness module's
exact enumerator), then backtracks over colorings looking for one with no
monochromatic solution.  Exhausting the tree proves the finite statement
"every r-coloring of [1..N] contains a monochromatic solution" (Forced);
finding a leaf yields a checkable bad coloring.  Neither outcome is ever a
partition-regularity claim; that language stays in the classifier.

Symmetry breaking: color(1) = 0, and color c may first appear only after
colors 0..c-1 (canonical representatives only, completeness preserved).
Worker parallelism splits the tree at the first branching level with
statically divided budgets, so outcomes and node counts are identical for
every worker count; only wall-clock time varies.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional

from .poly import Polynomial
from .witness import DEFAULT_ENUM_BUDGET, brute_force_solutions

__all__ = [
    "Coloring",
    "SolutionConstraint",
    "SearchStats",
    "SearchOutcome",
    "DEFAULT_NODE_BUDGET",
    "enumerate_constraints",
    "find_bad_coloring",
    "rado_number",
    "monochromatic_solution",
]

DEFAULT_NODE_BUDGET = 5_000_000

BAD_COLORING = "bad_coloring"
FORCED = "forced"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Coloring:
    """Colors of 1..N: ``colors[i]`` is the color of the integer i+1."""

    colors: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.colors)

    def color_of(self, value: int) -> int:
        return self.colors[value - 1]

    def classes(self) -> list[list[int]]:
        count = max(self.colors) + 1 if self.colors else 0
        out: list[list[int]] = [[] for _ in range(count)]
        for value, color in enumerate(self.colors, start=1):
            out[color].append(value)
        return out


@dataclass(frozen=True)
class SolutionConstraint:
    """A solution tuple of p inside [1..N], in variable name order."""

    values: tuple[int, ...]
    injective: bool

    def __post_init__(self) -> None:
        if self.injective and len(set(self.values)) != len(self.values):
            raise ValueError("injective constraint with repeated values")


@dataclass
class SearchStats:
    nodes: int = 0
    constraints: int = 0
    ms: float = 0.0

    def to_json(self) -> dict[str, Any]:
        return {"nodes": self.nodes, "constraints": self.constraints, "ms": int(self.ms)}


@dataclass(frozen=True)
class SearchOutcome:
    kind: str  # BAD_COLORING | FORCED | INCONCLUSIVE
    coloring: Optional[Coloring]
    stats: SearchStats

    def to_json(
        self, polynomial: str, r: int, n: int, injective: bool
    ) -> dict[str, Any]:
        return {
            "schema": 1,
            "polynomial": polynomial,
            "r": r,
            "N": n,
            "injective": injective,
            "outcome": self.kind,
            "coloring": list(self.coloring.colors) if self.coloring else None,
            "stats": self.stats.to_json(),
        }


def enumerate_constraints(
    p: Polynomial,
    n_bound: int,
    injective: bool = False,
    max_candidates: int = DEFAULT_ENUM_BUDGET,
) -> list[SolutionConstraint]:
    """All solution tuples of p in [1..n_bound]^n, lexicographic, deduplicated."""
    variables = p.variables
    seen: set[tuple[int, ...]] = set()
    out: list[SolutionConstraint] = []
    for w in brute_force_solutions(
        p, n_bound, injective=injective, max_candidates=max_candidates
    ):
        tup = tuple(w.assignment[v] for v in variables)
        if tup not in seen:
            seen.add(tup)
            out.append(SolutionConstraint(tup, injective))
    return out


def _value_sets_by_max(
    constraints: list[SolutionConstraint],
) -> list[list[tuple[int, ...]]]:
    """Distinct value sets of the constraints, bucketed by their maximum."""
    sets = {tuple(sorted(set(c.values))) for c in constraints}
    top = max((s[-1] for s in sets), default=0)
    buckets: list[list[tuple[int, ...]]] = [[] for _ in range(top + 1)]
    for s in sorted(sets):
        buckets[s[-1]].append(s)
    return buckets


class _Budget:
    __slots__ = ("nodes", "limit", "exhausted")

    def __init__(self, limit: int):
        self.nodes = 0
        self.limit = limit
        self.exhausted = False


def _extend(
    colors: list[int],
    value: int,
    n: int,
    r: int,
    buckets: list[list[tuple[int, ...]]],
    budget: _Budget,
) -> Optional[list[int]]:
    """Depth-first extension of a partial coloring of 1..value-1; returns the
    first complete bad coloring in branch order, or None."""
    if value > n:
        return list(colors)
    used = max(colors, default=-1) + 1
    for color in range(min(used + 1, r)):
        if budget.nodes >= budget.limit:
            budget.exhausted = True
            return None
        budget.nodes += 1
        colors.append(color)
        ok = True
        if value < len(buckets):
            for values in buckets[value]:
                first = colors[values[0] - 1]
                if all(colors[v - 1] == first for v in values[1:]):
                    ok = False
                    break
        if ok:
            found = _extend(colors, value + 1, n, r, buckets, budget)
            if found is not None:
                return found
        colors.pop()
        if budget.exhausted:
            return None
    return None


def find_bad_coloring(
    p: Polynomial,
    r: int,
    n_bound: int,
    injective: bool = False,
    budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
    _constraints: Optional[list[SolutionConstraint]] = None,
) -> SearchOutcome:
    """Search for an r-coloring of [1..n_bound] with no monochromatic
    solution of p.  Forced is claimed only on exact exhaustion; running out
    of node budget is the Inconclusive outcome, not an error."""
    if r < 1:
        raise ValueError("need at least one color")
    started = time.perf_counter()
    constraints = (
        _constraints
        if _constraints is not None
        else enumerate_constraints(p, n_bound, injective)
    )
    buckets = _value_sets_by_max(constraints)
    stats = SearchStats(constraints=len(constraints))

    def finish(kind: str, coloring: Optional[Coloring], nodes: int) -> SearchOutcome:
        stats.nodes = nodes
        stats.ms = (time.perf_counter() - started) * 1000
        return SearchOutcome(kind, coloring, stats)

    def prefix_mono(prefix: list[int]) -> bool:
        for value in range(1, len(prefix) + 1):
            if value < len(buckets):
                for values in buckets[value]:
                    first = prefix[values[0] - 1]
                    if all(prefix[v - 1] == first for v in values[1:]):
                        return True
        return False

    # color(1) = 0 by symmetry; a singleton constraint {1} forces immediately
    if prefix_mono([0]):
        return finish(FORCED, None, 1)
    if n_bound == 1:
        return finish(BAD_COLORING, Coloring((0,)), 1)

    # split at the first branching level: the color of the integer 2
    base_nodes = 1
    branches: list[list[int]] = []
    for color in range(1 if r == 1 else 2):
        base_nodes += 1
        prefix = [0, color]
        if not prefix_mono(prefix):
            branches.append(prefix)
    if not branches:
        return finish(FORCED, None, base_nodes)

    # static budget split keeps outcomes independent of the worker count
    share = max(1, (budget - base_nodes) // len(branches))

    def run_branch(idx: int) -> tuple[Optional[list[int]], int, bool]:
        b = _Budget(share)
        prefix = list(branches[idx])
        found = _extend(prefix, len(prefix) + 1, n_bound, r, buckets, b)
        return found, b.nodes, b.exhausted

    if workers > 1 and len(branches) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(branches))) as pool:
            results = list(pool.map(run_branch, range(len(branches))))
    else:
        results = [run_branch(i) for i in range(len(branches))]

    nodes = base_nodes + sum(n for _, n, _ in results)
    for found, _, _ in results:  # branch-order-minimal result
        if found is not None:
            coloring = Coloring(tuple(found))
            if monochromatic_solution(p, coloring, injective, _constraints=constraints) is not None:
                raise AssertionError("search produced an invalid bad coloring")
            return finish(BAD_COLORING, coloring, nodes)
    if any(exhausted for _, _, exhausted in results):
        return finish(INCONCLUSIVE, None, nodes)
    return finish(FORCED, None, nodes)


def rado_number(
    p: Polynomial,
    r: int,
    max_n: int,
    injective: bool = False,
    budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> Optional[int]:
    """Smallest N <= max_n proven Forced, scanning N upward and extending the
    constraint list incrementally; None when every scanned N admits a bad
    coloring (or exhausts its budget) up to max_n."""
    constraints: list[SolutionConstraint] = []
    for n in range(1, max_n + 1):
        fresh = [
            c
            for c in enumerate_constraints(p, n, injective)
            if max(c.values) == n
        ]
        constraints = constraints + fresh
        outcome = find_bad_coloring(
            p, r, n, injective, budget, workers, _constraints=constraints
        )
        if outcome.kind == FORCED:
            return n
    return None


def monochromatic_solution(
    p: Polynomial,
    coloring: Coloring,
    injective: bool = False,
    _constraints: Optional[list[SolutionConstraint]] = None,
) -> Optional[SolutionConstraint]:
    """First (lexicographic) solution whose values all share one color."""
    constraints = (
        _constraints
        if _constraints is not None
        else enumerate_constraints(p, coloring.n, injective)
    )
    for c in constraints:
        if max(c.values) > coloring.n:
            continue
        first = coloring.color_of(c.values[0])
        if all(coloring.color_of(v) == first for v in c.values[1:]):
            return c
    return None
