"""Deterministic road-like test networks.

Real experiments ingest a SNAP edge list (e.g. a state road network).  For
tests and demos this builds a planar-ish stand-in: a grid with random
diagonal shortcuts (odd cycles, like real intersections) and random edge
deletions (dead ends, sparse blocks).  Same seed, same network.
"""

from __future__ import annotations

import numpy as np

from .graphs import Network


def road_like_network(
    rows: int = 60,
    cols: int = 60,
    diag_prob: float = 0.22,
    drop_prob: float = 0.10,
    seed: int = 0,
) -> Network:
    """Grid of ``rows * cols`` nodes with seeded chords and deletions."""
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0x6E0AD)))
    edges = []
    for r in range(rows):
        for c in range(cols):
            node = r * cols + c
            if c + 1 < cols and rng.random() >= drop_prob:
                edges.append((node, node + 1))
            if r + 1 < rows and rng.random() >= drop_prob:
                edges.append((node, node + cols))
            if c + 1 < cols and r + 1 < rows and rng.random() < diag_prob:
                edges.append((node, node + cols + 1))
    return Network(edges)
