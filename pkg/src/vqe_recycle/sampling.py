"""Neighborhood-expansion sampling of small subgraphs and HD-bucketed pair datasets.

A subgraph grows from a random start node by repeatedly absorbing a uniform
random node from the frontier (neighbors of selected nodes).  Pairs of such
graphs are labeled by the minimum Hamming distance between their optimal
MaxCut solution sets and rejection-sampled into balanced buckets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, Network, induced_subgraph, is_connected
from .maxcut import brute_force_optima, min_hamming_distance

DEFAULT_RESTART_CAP = 10_000
DEFAULT_ATTEMPT_CAP = 100_000


class SamplingExhaustedError(RuntimeError):
    """No connected subgraph of the requested size found within the restart cap."""


class PartialDatasetError(RuntimeError):
    """Attempt cap hit with unfilled HD buckets; carries per-bucket fill counts."""

    def __init__(self, fill_counts: dict[int, int], pairs_per_hd: int, attempts: int):
        self.fill_counts = dict(fill_counts)
        self.pairs_per_hd = pairs_per_hd
        self.attempts = attempts
        short = {hd: c for hd, c in fill_counts.items() if c < pairs_per_hd}
        super().__init__(
            f"attempt cap {attempts} exhausted with unfilled buckets "
            f"(have/need {pairs_per_hd}): {short}"
        )


@dataclass(frozen=True)
class GraphPair:
    source: Graph
    target: Graph
    hd: int
    source_opt_cut: int
    target_opt_cut: int


@dataclass(frozen=True)
class Dataset:
    seed: int
    pairs: tuple[GraphPair, ...]
    pairs_per_hd: int
    hd_range: tuple[int, int]  # inclusive


def sample_subgraph(
    net: Network,
    size: int,
    rng: np.random.Generator,
    restart_cap: int = DEFAULT_RESTART_CAP,
) -> Graph:
    """Connected ``size``-node induced subgraph grown by neighborhood expansion.

    Restarts from a fresh start node whenever the frontier empties early
    (small component); fails after ``restart_cap`` restarts.
    """
    if size < 2:
        raise ValueError(f"size must be >= 2, got {size}")
    if net.num_nodes == 0:
        raise ValueError("network is empty")

    nodes = net.nodes
    for _ in range(restart_cap):
        start = nodes[int(rng.integers(len(nodes)))]
        selected = [start]
        selected_set = {start}
        frontier: list[int] = []
        frontier_set: set[int] = set()
        for nb in net.neighbors(start):
            frontier.append(nb)
            frontier_set.add(nb)
        while len(selected) < size and frontier:
            pick = int(rng.integers(len(frontier)))
            node = frontier[pick]
            frontier[pick] = frontier[-1]
            frontier.pop()
            frontier_set.discard(node)
            selected.append(node)
            selected_set.add(node)
            for nb in net.neighbors(node):
                if nb not in selected_set and nb not in frontier_set:
                    frontier.append(nb)
                    frontier_set.add(nb)
        if len(selected) == size:
            return induced_subgraph(net, selected)
    raise SamplingExhaustedError(
        f"no connected {size}-node subgraph found in {restart_cap} restarts"
    )


def sample_pair(
    net: Network,
    size: int,
    rng: np.random.Generator,
    restart_cap: int = DEFAULT_RESTART_CAP,
) -> GraphPair:
    """Sample source and target independently and label the pair with its HD."""
    source = sample_subgraph(net, size, rng, restart_cap)
    target = sample_subgraph(net, size, rng, restart_cap)
    source_opt = brute_force_optima(source)
    target_opt = brute_force_optima(target)
    return GraphPair(
        source=source,
        target=target,
        hd=min_hamming_distance(source_opt, target_opt),
        source_opt_cut=source_opt.opt_cut,
        target_opt_cut=target_opt.opt_cut,
    )


def build_dataset(
    net: Network,
    size: int,
    pairs_per_hd: int,
    hd_range: tuple[int, int],
    rng: np.random.Generator,
    attempt_cap: int = DEFAULT_ATTEMPT_CAP,
    seed: int = 0,
) -> Dataset:
    """Rejection-sample pairs until every HD bucket holds ``pairs_per_hd``.

    Pairs landing in a full (or out-of-range) bucket are discarded.  The
    returned dataset lists buckets in HD order, insertion-ordered within
    each bucket.
    """
    if pairs_per_hd < 1:
        raise ValueError(f"pairs_per_hd must be >= 1, got {pairs_per_hd}")
    lo, hi = hd_range
    if not 0 <= lo <= hi:
        raise ValueError(f"bad hd_range {hd_range}")

    buckets: dict[int, list[GraphPair]] = {hd: [] for hd in range(lo, hi + 1)}
    unfilled = set(buckets)
    attempts = 0
    while unfilled:
        if attempts >= attempt_cap:
            raise PartialDatasetError(
                {hd: len(b) for hd, b in buckets.items()}, pairs_per_hd, attempts
            )
        attempts += 1
        pair = sample_pair(net, size, rng)
        bucket = buckets.get(pair.hd)
        if bucket is None or len(bucket) >= pairs_per_hd:
            continue
        bucket.append(pair)
        if len(bucket) == pairs_per_hd:
            unfilled.discard(pair.hd)

    pairs = tuple(p for hd in sorted(buckets) for p in buckets[hd])
    return Dataset(seed=seed, pairs=pairs, pairs_per_hd=pairs_per_hd, hd_range=(lo, hi))


def dataset_to_json_dict(ds: Dataset) -> dict:
    return {
        "seed": ds.seed,
        "pairs_per_hd": ds.pairs_per_hd,
        "hd_range": list(ds.hd_range),
        "pairs": [
            {
                "hd": p.hd,
                "source": p.source.to_json_dict(),
                "target": p.target.to_json_dict(),
                "source_opt_cut": p.source_opt_cut,
                "target_opt_cut": p.target_opt_cut,
            }
            for p in ds.pairs
        ],
    }


def dataset_from_json_dict(data: dict) -> Dataset:
    pairs = tuple(
        GraphPair(
            source=Graph.from_json_dict(entry["source"]),
            target=Graph.from_json_dict(entry["target"]),
            hd=int(entry["hd"]),
            source_opt_cut=int(entry["source_opt_cut"]),
            target_opt_cut=int(entry["target_opt_cut"]),
        )
        for entry in data["pairs"]
    )
    return Dataset(
        seed=int(data["seed"]),
        pairs=pairs,
        pairs_per_hd=int(data["pairs_per_hd"]),
        hd_range=(int(data["hd_range"][0]), int(data["hd_range"][1])),
    )


def save_dataset(ds: Dataset, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(dataset_to_json_dict(ds), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_dataset(path: str) -> Dataset:
    with open(path) as fh:
        return dataset_from_json_dict(json.load(fh))
