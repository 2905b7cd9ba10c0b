"""Undirected graph primitives and SNAP-style edge-list ingestion.

Two representations are used throughout the package:

* :class:`Network` keeps the raw road network with its original node ids
  (potentially millions of nodes) as an adjacency map.
* :class:`Graph` is a small working graph with nodes relabeled ``0..n-1``,
  produced by :func:`induced_subgraph`.  Every edge has implicit weight 1.
"""

from __future__ import annotations

import gzip
from collections import deque
from dataclasses import dataclass
from typing import IO, Iterable, Sequence


class EdgeListParseError(ValueError):
    """A malformed edge-list line; carries the 1-based line number."""

    def __init__(self, line_no: int, line: str, reason: str):
        super().__init__(f"line {line_no}: {reason}: {line.strip()!r}")
        self.line_no = line_no


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Edges are stored as a frozenset of ``(i, j)`` pairs with ``i < j``; the
    constructor canonicalizes pair order and rejects self-loops and
    out-of-range endpoints.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError(f"node count must be non-negative, got {n}")
        canonical = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            canonical.add((i, j) if i < j else (j, i))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(canonical))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def adjacency(self) -> list[list[int]]:
        """Neighbor lists indexed by node, each sorted ascending."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.sorted_edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Graph":
        try:
            n = data["n"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"graph JSON needs 'n' and 'edges' keys: {exc}")
        return cls(int(n), [(int(i), int(j)) for i, j in edges])


class Network:
    """Immutable symmetric adjacency over arbitrary non-negative node ids.

    Neighbor tuples are sorted, so iteration order is deterministic and
    independent of construction order.
    """

    __slots__ = ("_adj", "_nodes")

    def __init__(self, edges: Iterable[tuple[int, int]]):
        adj: dict[int, set[int]] = {}
        for u, v in edges:
            if u == v:
                continue
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj: dict[int, tuple[int, ...]] = {
            u: tuple(sorted(nbrs)) for u, nbrs in adj.items()
        }
        self._nodes: tuple[int, ...] = tuple(sorted(self._adj))

    @property
    def nodes(self) -> tuple[int, ...]:
        return self._nodes

    @property
    def num_nodes(self) -> int:
        return len(self._nodes)

    @property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def __contains__(self, node: int) -> bool:
        return node in self._adj

    def neighbors(self, node: int) -> tuple[int, ...]:
        try:
            return self._adj[node]
        except KeyError:
            raise KeyError(f"node {node} not in network") from None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edge_pairs(self) -> Iterable[tuple[int, int]]:
        """All edges as (u, v) with u < v, in sorted order."""
        for u in self._nodes:
            for v in self._adj[u]:
                if u < v:
                    yield u, v

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Network) and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Network(nodes={self.num_nodes}, edges={self.num_edges})"


def parse_edge_list(text: str | bytes | IO | Iterable[str]) -> Network:
    """Parse a SNAP-style edge list into a :class:`Network`.

    Lines starting with ``#`` are comments, blank lines are skipped, data
    lines hold exactly two whitespace-separated non-negative integers.
    Duplicate and reversed-duplicate lines collapse to one undirected edge;
    self-loop lines are dropped.
    """
    if isinstance(text, bytes):
        lines: Iterable[str] = text.decode("utf-8").splitlines()
    elif isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = text

    edges = []
    for line_no, raw in enumerate(lines, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(line_no, raw, "expected two columns")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(line_no, raw, "non-integer token") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(line_no, raw, "negative node id")
        edges.append((u, v))
    return Network(edges)


def load_network(path: str) -> Network:
    """Read an edge-list file (``.gz`` transparently decompressed)."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rt") as fh:
        return parse_edge_list(fh)


def write_edge_list(net: Network, path: str, header: str = "") -> None:
    """Write a network back out as a tab-separated edge list."""
    with open(path, "w") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for u, v in net.edge_pairs():
            fh.write(f"{u}\t{v}\n")


def induced_subgraph(net: Network, nodes: Sequence[int]) -> Graph:
    """Subgraph induced by ``nodes``, relabeled by their position in the list.

    Node ``k`` of the result is ``nodes[k]``; the supplied order is the
    labeling, so a sampler's insertion order determines the Graph exactly.
    """
    if len(set(nodes)) != len(nodes):
        raise ValueError("node list contains duplicates")
    for v in nodes:
        if v not in net:
            raise KeyError(f"node {v} not in network")
    index = {v: k for k, v in enumerate(nodes)}
    edges = []
    for k, v in enumerate(nodes):
        for w in net.neighbors(v):
            pos = index.get(w)
            if pos is not None and pos > k:
                edges.append((k, pos))
    return Graph(len(nodes), edges)


def is_connected(g: Graph) -> bool:
    """True iff every node is reachable from node 0 (n <= 1 is connected)."""
    if g.n <= 1:
        return True
    adj = g.adjacency()
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.n
