"""Simple undirected graphs stored as adjacency bitsets.

Vertex ``i`` of a graph corresponds to row/column ``i`` of its adjacency
matrix (0-based here; row ``i + 1`` in 1-based matrix notation).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 1 << 20
MAX_HAMMING_DIM = 16


class GraphSizeError(ValueError):
    """Raised when a construction would exceed the configured vertex cap."""


class GraphFormatError(ValueError):
    """Raised on malformed edge-list or graph6 input."""


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(x: int):
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[u]`` is an int whose bit ``v`` is set iff ``{u, v}`` is an edge.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        limit = 1 << self.n
        for u, row in enumerate(self.adj):
            if row < 0 or row >= limit:
                raise ValueError(f"row {u} has bits outside 0..{self.n - 1}")
            if (row >> u) & 1:
                raise ValueError(f"self-loop at vertex {u}")
            for v in iter_bits(row):
                if not (self.adj[v] >> u) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        # Skips the O(|E|) symmetry scan for constructions that are symmetric by design.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(rows))
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else None."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.adj[u]))

    def closed_neighborhood(self, u: int) -> int:
        return self.adj[u] | (1 << u)


def vertex_value(bits: Sequence[int]) -> int:
    """Decimal value of a binary tuple, leftmost coordinate most significant."""
    value = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a binary tuple: {bits!r}")
        value = (value << 1) | b
    return value


def vertex_bits(value: int, m: int) -> tuple[int, ...]:
    if not 0 <= value < (1 << m):
        raise ValueError(f"{value} is not an {m}-bit label")
    return tuple((value >> (m - 1 - i)) & 1 for i in range(m))


def hamming_distance(u: int, v: int) -> int:
    return popcount(u ^ v)


def hamming_graph(m: int, distances: Iterable[int]) -> Graph:
    """Graph on ``{0,1}^m`` with ``u ~ v`` iff ``d_H(u, v)`` lies in ``distances``."""
    if not 1 <= m <= MAX_HAMMING_DIM:
        raise ValueError(f"m must be in 1..{MAX_HAMMING_DIM}, got {m}")
    dset = set(distances)
    if any(not 1 <= d <= m for d in dset):
        raise ValueError(f"distances must lie in 1..{m}, got {sorted(dset)}")
    n = 1 << m
    # XOR masks realising the allowed distances; u's neighbours are u ^ mask.
    masks = [x for x in range(n) if popcount(x) in dset]
    rows = []
    for u in range(n):
        row = 0
        for x in masks:
            row |= 1 << (u ^ x)
        rows.append(row)
    return Graph._trusted(n, rows)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, [full ^ (1 << u) for u in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph._trusted(n, [0] * n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    """Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint."""
    pairs = list(combinations(range(5), 2))
    edges = [
        (i, j)
        for i, j in combinations(range(len(pairs)), 2)
        if not set(pairs[i]) & set(pairs[j])
    ]
    return Graph.from_edges(len(pairs), edges)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph._trusted(g.n, [full ^ row ^ (1 << u) for u, row in enumerate(g.adj)])


def _spread(closed_row: int, block: int) -> int:
    # Bit g' of closed_row becomes bit g' * block.
    out = 0
    for gp in iter_bits(closed_row):
        out |= 1 << (gp * block)
    return out


def strong_product(g: Graph, h: Graph, size_cap: int = DEFAULT_SIZE_CAP) -> Graph:
    """Strong product with vertex ``(a, b)`` stored at index ``a * h.n + b``."""
    n = g.n * h.n
    if n > size_cap:
        raise GraphSizeError(f"product has {n} vertices, cap is {size_cap}")
    spread = [_spread(g.closed_neighborhood(a), h.n) for a in range(g.n)]
    closed_h = [h.closed_neighborhood(b) for b in range(h.n)]
    rows = []
    for a in range(g.n):
        for b in range(h.n):
            # closed_h[b] < 2**h.n, so the product places one copy per block without carries.
            row = spread[a] * closed_h[b]
            rows.append(row ^ (1 << (a * h.n + b)))
    return Graph._trusted(n, rows)


def strong_power(g: Graph, k: int, size_cap: int = DEFAULT_SIZE_CAP) -> Graph:
    if k < 1:
        raise ValueError("k must be a positive integer")
    if g.n ** k > size_cap:
        raise GraphSizeError(f"{g.n}^{k} vertices exceeds cap {size_cap}")
    out = g
    for _ in range(k - 1):
        out = strong_product(out, g, size_cap)
    return out


def product_index(a: int, b: int, n_right: int) -> int:
    return a * n_right + b


def adjacency_matrix(g: Graph) -> np.ndarray:
    """0/1 adjacency matrix as an ``int64`` array."""
    mat = np.zeros((g.n, g.n), dtype=np.int64)
    for u, row in enumerate(g.adj):
        for v in iter_bits(row):
            mat[u, v] = 1
    return mat


def from_adjacency_matrix(mat) -> Graph:
    a = np.asarray(mat)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("adjacency matrix must be square")
    rows = []
    for u in range(n):
        row = 0
        for v in np.flatnonzero(a[u]):
            row |= 1 << int(v)
        rows.append(row)
    return Graph(n, tuple(rows))


def expected_hamming_degree(m: int, distances: Iterable[int]) -> int:
    return sum(comb(m, d) for d in set(distances))
