"""Independent sets: verification, exact maximum by branch and bound, counting."""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, iter_bits, popcount

EXACT = "exact"
LOWER_BOUND = "lower-bound"
PARTIAL = "partial"
COVER_THRESHOLD = 64


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10_000_000
    max_seconds: float = 60.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("search budget must be positive")


@dataclass(frozen=True)
class IndependentSetCertificate:
    vertices: tuple[int, ...]

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "IndependentSetCertificate":
        return cls(tuple(sorted(vertices)))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json(self) -> str:
        return json.dumps(list(self.vertices))

    @classmethod
    def from_json(cls, text: str) -> "IndependentSetCertificate":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
            raise ValueError("certificate must be a JSON array of integers")
        return cls.of(data)


def is_independent_set(g: Graph, vertices: Sequence[int]) -> bool:
    seen = set()
    for v in vertices:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range 0..{g.n - 1}")
        if v in seen:
            raise ValueError(f"duplicate vertex {v}")
        seen.add(v)
    mask = 0
    for v in seen:
        mask |= 1 << v
    return all(not (g.adj[v] & mask) for v in seen)


def clique_cover_bound(g: Graph, candidates: int) -> int:
    """Number of cliques in a greedy clique cover of ``candidates``.

    Each clique holds at most one vertex of an independent set, so this
    bounds the independence number of the induced subgraph from above.
    """
    remaining = candidates
    cliques = 0
    adj = g.adj
    while remaining:
        low = remaining & -remaining
        v = low.bit_length() - 1
        remaining ^= low
        common = adj[v] & remaining
        while common:
            low = common & -common
            remaining ^= low
            common &= adj[low.bit_length() - 1]
        cliques += 1
    return cliques


def _bound(g: Graph, cand: int, threshold: int) -> int:
    k = popcount(cand)
    if k <= threshold:
        return clique_cover_bound(g, cand)
    return k


class _BudgetExhausted(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, budget: SearchBudget, threshold: int):
        self.g = g
        self.adj = g.adj
        self.budget = budget
        self.threshold = threshold
        self.nodes = 0
        self.deadline = time.monotonic() + budget.max_seconds
        self.best: tuple[int, ...] = ()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetExhausted
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted

    def pick(self, cand: int) -> int:
        # Maximum degree inside cand; ties go to the lowest index.
        adj = self.adj
        best_v, best_d = -1, -1
        for v in iter_bits(cand):
            d = popcount(adj[v] & cand)
            if d > best_d:
                best_v, best_d = v, d
        return best_v

    def run(self, cand: int, chosen: list[int]):
        self.tick()
        adj = self.adj
        # Vertices of degree <= 1 in cand belong to some maximum solution.
        forced = []
        changed = True
        while changed and cand:
            changed = False
            for v in iter_bits(cand):
                if popcount(adj[v] & cand) <= 1:
                    forced.append(v)
                    cand &= ~(adj[v] | (1 << v))
                    changed = True
                    break
        chosen = chosen + forced
        if len(chosen) > len(self.best):
            self.best = tuple(chosen)
        while cand:
            if len(chosen) + _bound(self.g, cand, self.threshold) <= len(self.best):
                return
            v = self.pick(cand)
            self.run(cand & ~(adj[v] | (1 << v)), chosen + [v])
            cand &= ~(1 << v)


def _root_split(g: Graph, cand: int, parts: int) -> list[tuple[int, tuple[int, ...]]]:
    """Partition the search by including each of the first few branch vertices."""
    s = _Search(g, SearchBudget(), COVER_THRESHOLD)
    jobs = []
    for _ in range(parts - 1):
        if not cand:
            break
        v = s.pick(cand)
        jobs.append((cand & ~(g.adj[v] | (1 << v)), (v,)))
        cand &= ~(1 << v)
    jobs.append((cand, ()))
    return jobs


def _solve_sub(args):
    g, cand, chosen, budget, threshold, initial = args
    s = _Search(g, budget, threshold)
    s.best = initial
    try:
        s.run(cand, list(chosen))
        status = EXACT
    except _BudgetExhausted:
        status = LOWER_BOUND
    return s.best, status, s.nodes


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("CAPAX_THREADS", "1")))
    except ValueError:
        return 1


def max_independent_set(
    g: Graph,
    budget: SearchBudget | None = None,
    initial: Iterable[int] | None = None,
    threads: int = 1,
    cover_threshold: int = COVER_THRESHOLD,
) -> tuple[int, IndependentSetCertificate, str]:
    """Maximum independent set by branch and bound.

    Returns ``(size, certificate, status)``; ``status`` is ``"exact"`` when
    the search finished and ``"lower-bound"`` when the budget ran out, in
    which case the certificate is the best set found. ``initial`` seeds the
    incumbent with a known independent set.
    """
    budget = budget or SearchBudget()
    seed: tuple[int, ...] = ()
    if initial is not None:
        seed = tuple(sorted(initial))
        if not is_independent_set(g, seed):
            raise ValueError("initial set is not independent")
    full = (1 << g.n) - 1
    if threads <= 1:
        best, status, _ = _solve_sub((g, full, (), budget, cover_threshold, seed))
    else:
        jobs = _root_split(g, full, threads * 4)
        sub_budget = SearchBudget(max(1, budget.max_nodes // len(jobs)), budget.max_seconds)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                _solve_sub,
                [(g, c, ch, sub_budget, cover_threshold, seed) for c, ch in jobs],
            ))
        best = seed
        status = EXACT
        for found, st, _ in results:
            if len(found) > len(best):
                best = found
            if st != EXACT:
                status = LOWER_BOUND
    cert = IndependentSetCertificate.of(best)
    return cert.size, cert, status


def independence_number(g: Graph, budget: SearchBudget | None = None) -> int:
    size, _, status = max_independent_set(g, budget)
    if status != EXACT:
        raise RuntimeError("search budget exhausted before the optimum was proven")
    return size


def count_maximum_independent_sets(
    g: Graph, target_size: int, budget: SearchBudget | None = None
) -> tuple[int, str]:
    """Count independent sets with exactly ``target_size`` vertices.

    When ``target_size`` is the independence number these are the maximum
    independent sets. Returns ``(count, "exact")`` or, if the budget runs
    out, the count so far with ``"partial"``.
    """
    budget = budget or SearchBudget()
    if target_size < 0:
        raise ValueError("target size must be nonnegative")
    s = _Search(g, budget, COVER_THRESHOLD)
    adj = g.adj
    count = 0

    def rec(cand: int, size: int):
        nonlocal count
        s.tick()
        if size == target_size:
            count += 1
            return
        while cand:
            if size + _bound(g, cand, COVER_THRESHOLD) < target_size:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(cand & ~adj[v], size + 1)

    try:
        rec((1 << g.n) - 1, 0)
    except _BudgetExhausted:
        return count, PARTIAL
    return count, EXACT

