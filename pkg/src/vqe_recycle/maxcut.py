"""Exact MaxCut machinery: cut values, brute-force optima, Hamming distances.

An assignment is a string of '0'/'1' characters with node 0 leftmost.  Bit
b_i maps to spin z_i = 1 - 2*b_i, so bit 0 puts a node in the first
partition.  The cut value counts edges whose endpoints carry different bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph

# 2^24 assignments is the largest enumeration the oracle will attempt.
BRUTE_FORCE_LIMIT = 24


class CapacityError(ValueError):
    """Problem size exceeds what exact enumeration supports."""


def _check_assignment(a: str, n: int) -> None:
    if len(a) != n:
        raise ValueError(f"assignment length {len(a)} does not match n={n}")
    if any(c not in "01" for c in a):
        raise ValueError(f"assignment must be a 0/1 string, got {a!r}")


def assignment_to_index(a: str) -> int:
    """Basis index of an assignment (node k is bit k, little-endian)."""
    return sum(1 << k for k, c in enumerate(a) if c == "1")


def index_to_assignment(x: int, n: int) -> str:
    return "".join("1" if (x >> k) & 1 else "0" for k in range(n))


def complement(a: str) -> str:
    return "".join("0" if c == "1" else "1" for c in a)


def cut_value(g: Graph, a: str) -> int:
    """Number of edges of ``g`` cut by assignment ``a``."""
    _check_assignment(a, g.n)
    return sum(1 for i, j in g.edges if a[i] != a[j])


def cut_table(g: Graph) -> np.ndarray:
    """Cut value for every basis index ``0..2^n-1`` (index bit k = node k)."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"n={g.n} exceeds enumeration limit {BRUTE_FORCE_LIMIT}")
    x = np.arange(1 << g.n, dtype=np.uint32)
    cuts = np.zeros(1 << g.n, dtype=np.int64)
    for i, j in g.sorted_edges:
        cuts += ((x >> i) ^ (x >> j)) & 1
    return cuts


@dataclass(frozen=True)
class OptimaSet:
    """All assignments achieving the optimal cut of one graph.

    The set is closed under bitwise complement because flipping every bit
    leaves every edge's cut status unchanged.
    """

    n: int
    opt_cut: int
    assignments: tuple[str, ...]


def brute_force_optima(g: Graph) -> OptimaSet:
    """Enumerate all ``2^n`` assignments and collect every maximizer."""
    cuts = cut_table(g)
    opt = int(cuts.max())
    maximizers = np.flatnonzero(cuts == opt)
    assignments = tuple(index_to_assignment(int(x), g.n) for x in maximizers)
    return OptimaSet(n=g.n, opt_cut=opt, assignments=assignments)


def hamming(a: str, b: str) -> int:
    """Number of differing bit positions."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(1 for x, y in zip(a, b) if x != y)


def min_hamming_distance(a: OptimaSet, b: OptimaSet) -> int:
    """Smallest Hamming distance over all pairings of optima from a and b.

    Both sets are complement-closed, so the result never exceeds floor(n/2).
    """
    if not a.assignments or not b.assignments:
        raise ValueError("optima sets must be non-empty")
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    xa = np.array([assignment_to_index(s) for s in a.assignments], dtype=np.uint32)
    xb = np.array([assignment_to_index(s) for s in b.assignments], dtype=np.uint32)
    diffs = np.bitwise_count(xa[:, None] ^ xb[None, :])
    return int(diffs.min())
