"""Full protocol orchestration: pre-train, transfer, baselines, aggregation.

For every sampled pair and circuit, the source graph is trained from a
near-zero start at the full budget; the resulting angles seed the
post-training run on the target.  Near-zero (and optionally fully random)
target runs provide baselines, and the accelerated variants repeat
post-training and the near-zero baseline under the reduced budget.

Every run owns an RNG stream derived from (seed, pair index, circuit,
variant), so results do not depend on scheduling or worker count.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .graphs import Network
from .optimize import OptimizerConfig
from .sampling import (
    Dataset,
    GraphPair,
    PartialDatasetError,
    SamplingExhaustedError,
    build_dataset,
)
from .simulator import CIRCUITS, AnsatzSpec
from .vqe import InitStrategy, RunRecord, run_vqe

PRETRAIN = "pretrain_source"
POST_TL = "post_tl"
STANDARD = "standard"
RANDOM = "random"
ACCEL_POST_TL = "accel_post_tl"
ACCEL_STANDARD = "accel_standard"

VARIANTS = (PRETRAIN, POST_TL, STANDARD, RANDOM, ACCEL_POST_TL, ACCEL_STANDARD)

_CIRCUIT_CODE = {kind: i for i, kind in enumerate(CIRCUITS)}
_VARIANT_CODE = {name: i for i, name in enumerate(VARIANTS)}

# Stream namespaces under one experiment seed.
_NS_SAMPLER = 0
_NS_RUN = 1


@dataclass(frozen=True)
class ExperimentConfig:
    node_count: int = 12
    layers: int = 3
    circuits: tuple[str, ...] = ("base", "had")
    pairs_per_hd: int = 10
    hd_min: int = 0
    hd_max: int = 6
    seeds: tuple[int, ...] = tuple(range(10))
    maxiter_full: int = 1000
    maxiter_accel: int = 50
    include_random_baseline: bool = False
    run_full: bool = True
    run_accel: bool = True
    rhobeg: float = 1.0
    rhoend: float = 1e-4
    attempt_cap: int = 100_000
    jobs: int | None = None  # None = all available cores

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError(f"node_count must be >= 2, got {self.node_count}")
        if not self.circuits:
            raise ValueError("need at least one circuit")
        for c in self.circuits:
            if c not in CIRCUITS:
                raise ValueError(f"unknown circuit {c!r}")
        if not self.maxiter_accel < self.maxiter_full:
            raise ValueError(
                f"maxiter_accel ({self.maxiter_accel}) must be below "
                f"maxiter_full ({self.maxiter_full})"
            )
        if not (self.run_full or self.run_accel):
            raise ValueError("at least one of run_full/run_accel must be on")
        if not 0 <= self.hd_min <= self.hd_max:
            raise ValueError(f"bad HD range {self.hd_min}..{self.hd_max}")

    @property
    def hd_range(self) -> tuple[int, int]:
        return (self.hd_min, self.hd_max)

    def optimizer(self, budget: int) -> OptimizerConfig:
        return OptimizerConfig(rhobeg=self.rhobeg, rhoend=self.rhoend, max_evals=budget)


@dataclass
class PairResult:
    seed: int
    pair_index: int
    hd: int
    source_opt_cut: int
    target_opt_cut: int
    records: dict[tuple[str, str], RunRecord] = field(default_factory=dict)
    errors: dict[tuple[str, str], str] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.errors


def run_stream(seed: int, pair_index: int, circuit: str, variant: str) -> np.random.Generator:
    """Dedicated RNG stream for one run; scheduling cannot change results."""
    entropy = (seed, _NS_RUN, pair_index, _CIRCUIT_CODE[circuit], _VARIANT_CODE[variant])
    return np.random.default_rng(np.random.SeedSequence(entropy))


def sampler_stream(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, _NS_SAMPLER)))


def run_pair(
    pair: GraphPair, cfg: ExperimentConfig, seed: int, pair_index: int
) -> PairResult:
    """Execute every configured variant on one source/target pair.

    A failing variant is recorded in ``errors`` and dependent variants are
    skipped; the rest of the pair still runs.
    """
    if pair.source.n != cfg.node_count or pair.target.n != cfg.node_count:
        raise ValueError("pair graph size does not match config node_count")

    result = PairResult(
        seed=seed,
        pair_index=pair_index,
        hd=pair.hd,
        source_opt_cut=pair.source_opt_cut,
        target_opt_cut=pair.target_opt_cut,
    )
    full = cfg.optimizer(cfg.maxiter_full)
    accel = cfg.optimizer(cfg.maxiter_accel)

    def attempt(circuit: str, variant: str, graph, strategy, opt_cfg, opt_cut):
        rng = run_stream(seed, pair_index, circuit, variant)
        gid = f"{seed}/{pair_index}/" + ("source" if variant == PRETRAIN else "target")
        try:
            rec = run_vqe(graph, AnsatzSpec(circuit, cfg.node_count, cfg.layers),
                          strategy, opt_cfg, opt_cut, rng, graph_id=gid)
        except Exception as exc:  # noqa: BLE001 - variant failures must not kill the pair
            result.errors[(circuit, variant)] = f"{type(exc).__name__}: {exc}"
            return None
        result.records[(circuit, variant)] = rec
        return rec

    for circuit in cfg.circuits:
        # Pre-training always runs at the full budget; its angles feed both
        # the full and the accelerated transfer variants.
        pre = attempt(circuit, PRETRAIN, pair.source, InitStrategy.near_zero(),
                      full, pair.source_opt_cut)
        transfer = InitStrategy.transfer(pre.final_params) if pre else None
        if cfg.run_full:
            if transfer:
                attempt(circuit, POST_TL, pair.target, transfer, full, pair.target_opt_cut)
            else:
                result.errors[(circuit, POST_TL)] = "skipped: pretrain failed"
            attempt(circuit, STANDARD, pair.target, InitStrategy.near_zero(),
                    full, pair.target_opt_cut)
            if cfg.include_random_baseline:
                attempt(circuit, RANDOM, pair.target, InitStrategy.random_uniform(),
                        full, pair.target_opt_cut)
        if cfg.run_accel:
            if transfer:
                attempt(circuit, ACCEL_POST_TL, pair.target, transfer, accel,
                        pair.target_opt_cut)
            else:
                result.errors[(circuit, ACCEL_POST_TL)] = "skipped: pretrain failed"
            attempt(circuit, ACCEL_STANDARD, pair.target, InitStrategy.near_zero(),
                    accel, pair.target_opt_cut)
    return result


def _run_pair_task(args) -> PairResult:
    pair, cfg, seed, pair_index = args
    return run_pair(pair, cfg, seed, pair_index)


def run_experiment(
    net: Network,
    cfg: ExperimentConfig,
    on_result: Callable[[PairResult], None] | None = None,
    on_seed_error: Callable[[int, Exception], None] | None = None,
) -> list[PairResult]:
    """Sample one dataset per seed and run every pair.

    ``on_result`` fires as each pair finishes (streaming persistence);
    completion order depends on scheduling but the returned list is sorted
    by (seed, pair index) and its contents are schedule-independent.
    """
    tasks = []
    for seed in cfg.seeds:
        try:
            ds = build_dataset(
                net,
                cfg.node_count,
                cfg.pairs_per_hd,
                cfg.hd_range,
                sampler_stream(seed),
                attempt_cap=cfg.attempt_cap,
                seed=seed,
            )
        except (PartialDatasetError, SamplingExhaustedError) as exc:
            if on_seed_error is not None:
                on_seed_error(seed, exc)
                continue
            raise
        tasks.extend((pair, cfg, seed, idx) for idx, pair in enumerate(ds.pairs))
    return run_pairs(tasks, cfg.jobs, on_result)


def run_dataset(
    ds: Dataset,
    cfg: ExperimentConfig,
    on_result: Callable[[PairResult], None] | None = None,
) -> list[PairResult]:
    """Run every pair of a pre-built dataset (its stored seed keys the streams)."""
    tasks = [(pair, cfg, ds.seed, idx) for idx, pair in enumerate(ds.pairs)]
    return run_pairs(tasks, cfg.jobs, on_result)


def run_pairs(tasks, jobs, on_result=None) -> list[PairResult]:
    results = []
    jobs = jobs if jobs is not None else (os.cpu_count() or 1)
    if jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            res = _run_pair_task(task)
            results.append(res)
            if on_result is not None:
                on_result(res)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_pair_task, t) for t in tasks]
            for fut in as_completed(futures):
                res = fut.result()
                results.append(res)
                if on_result is not None:
                    on_result(res)
    results.sort(key=lambda r: (r.seed, r.pair_index))
    return results


# ---------------------------------------------------------------------------
# Aggregation

Selector = tuple[str, str]  # (circuit, variant)


@dataclass
class AggregateStats:
    """Comparison of two (circuit, variant) selections, A vs B."""

    count: int
    mean_ratio_a: float
    var_ratio_a: float
    mean_ratio_b: float
    var_ratio_b: float
    per_hd_a: dict[int, tuple[float, float]]  # hd -> (mean, var)
    per_hd_b: dict[int, tuple[float, float]]
    wins: int
    ties: int
    losses: int
    mean_curve_a: np.ndarray
    var_curve_a: np.ndarray
    mean_curve_b: np.ndarray
    var_curve_b: np.ndarray
    mean_evals_a: float
    mean_evals_b: float
    eval_reduction: float  # 1 - mean_evals_a / mean_evals_b
    skipped_incomplete: int


def pad_traces(traces: Sequence[np.ndarray], pad_values: Sequence[float]) -> np.ndarray:
    """Stack traces of unequal length, carrying each run's final best forward."""
    width = max(len(t) for t in traces)
    out = np.empty((len(traces), width))
    for row, (t, pad) in enumerate(zip(traces, pad_values)):
        out[row, : len(t)] = t
        out[row, len(t):] = pad
    return out


def _ratio(rec: RunRecord, metric: str) -> float:
    if metric == "argmax":
        return rec.approx_ratio_argmax
    if metric == "expect":
        return rec.approx_ratio_expect
    raise ValueError(f"unknown metric {metric!r}")


def aggregate(
    results: Iterable[PairResult],
    sel_a: Selector,
    sel_b: Selector,
    metric: str = "argmax",
) -> AggregateStats:
    """Means, variances, per-HD breakdown, win/tie/loss and mean curves for A vs B."""
    ratios_a, ratios_b, hds = [], [], []
    traces_a, traces_b, pads_a, pads_b = [], [], [], []
    evals_a, evals_b = [], []
    wins = ties = losses = skipped = 0
    for pr in results:
        if not pr.complete:
            skipped += 1
            continue
        rec_a = pr.records.get(sel_a)
        rec_b = pr.records.get(sel_b)
        if rec_a is None or rec_b is None:
            continue
        ra, rb = _ratio(rec_a, metric), _ratio(rec_b, metric)
        ratios_a.append(ra)
        ratios_b.append(rb)
        hds.append(pr.hd)
        if ra > rb:
            wins += 1
        elif ra == rb:
            ties += 1
        else:
            losses += 1
        traces_a.append(rec_a.trace)
        traces_b.append(rec_b.trace)
        pads_a.append(rec_a.best_energy)
        pads_b.append(rec_b.best_energy)
        evals_a.append(rec_a.evals_used)
        evals_b.append(rec_b.evals_used)

    if not ratios_a:
        raise ValueError(f"no complete pairs hold both {sel_a} and {sel_b}")

    ratios_a = np.array(ratios_a)
    ratios_b = np.array(ratios_b)
    hds_arr = np.array(hds)
    per_hd_a = {}
    per_hd_b = {}
    for hd in sorted(set(hds)):
        sel = hds_arr == hd
        per_hd_a[hd] = (float(ratios_a[sel].mean()), float(ratios_a[sel].var()))
        per_hd_b[hd] = (float(ratios_b[sel].mean()), float(ratios_b[sel].var()))
    stacked_a = pad_traces(traces_a, pads_a)
    stacked_b = pad_traces(traces_b, pads_b)
    mean_evals_a = float(np.mean(evals_a))
    mean_evals_b = float(np.mean(evals_b))
    return AggregateStats(
        count=len(ratios_a),
        mean_ratio_a=float(ratios_a.mean()),
        var_ratio_a=float(ratios_a.var()),
        mean_ratio_b=float(ratios_b.mean()),
        var_ratio_b=float(ratios_b.var()),
        per_hd_a=per_hd_a,
        per_hd_b=per_hd_b,
        wins=wins,
        ties=ties,
        losses=losses,
        mean_curve_a=stacked_a.mean(axis=0),
        var_curve_a=stacked_a.var(axis=0),
        mean_curve_b=stacked_b.mean(axis=0),
        var_curve_b=stacked_b.var(axis=0),
        mean_evals_a=mean_evals_a,
        mean_evals_b=mean_evals_b,
        eval_reduction=1.0 - mean_evals_a / mean_evals_b,
        skipped_incomplete=skipped,
    )


# ---------------------------------------------------------------------------
# Persistence

RESULTS_COLUMNS = [
    "seed",
    "pair_id",
    "hd",
    "circuit",
    "variant",
    "evals_used",
    "best_energy",
    "argmax_cut",
    "opt_cut",
    "approx_ratio_argmax",
    "approx_ratio_expect",
    "termination",
]


def result_rows(pr: PairResult) -> list[dict]:
    """One CSV row per run record, in deterministic (circuit, variant) order."""
    rows = []
    for (circuit, variant), rec in sorted(pr.records.items()):
        opt_cut = pr.source_opt_cut if variant == PRETRAIN else pr.target_opt_cut
        rows.append(
            {
                "seed": pr.seed,
                "pair_id": pr.pair_index,
                "hd": pr.hd,
                "circuit": circuit,
                "variant": variant,
                "evals_used": rec.evals_used,
                "best_energy": rec.best_energy,
                "argmax_cut": rec.argmax_cut,
                "opt_cut": opt_cut,
                "approx_ratio_argmax": rec.approx_ratio_argmax,
                "approx_ratio_expect": rec.approx_ratio_expect,
                "termination": rec.termination,
            }
        )
    return rows


def write_results_csv(results: Iterable[PairResult], path: str) -> None:
    rows = [row for pr in sorted(results, key=lambda r: (r.seed, r.pair_index))
            for row in result_rows(pr)]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=RESULTS_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)


def read_results_csv(path: str) -> list[dict]:
    """Rows with numeric fields restored to int/float."""
    ints = {"seed", "pair_id", "hd", "evals_used", "argmax_cut", "opt_cut"}
    floats = {"best_energy", "approx_ratio_argmax", "approx_ratio_expect"}
    rows = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            row: dict = dict(raw)
            for key in ints:
                row[key] = int(row[key])
            for key in floats:
                row[key] = float(row[key])
            rows.append(row)
    return rows


def trace_key(seed: int, pair_id: int, circuit: str, variant: str) -> str:
    return f"{seed}/{pair_id}/{circuit}/{variant}"


def traces_dict(results: Iterable[PairResult]) -> dict[str, list[float]]:
    out = {}
    for pr in sorted(results, key=lambda r: (r.seed, r.pair_index)):
        for (circuit, variant), rec in sorted(pr.records.items()):
            key = trace_key(pr.seed, pr.pair_index, circuit, variant)
            out[key] = [float(v) for v in rec.trace]
    return out


def write_traces_json(results: Iterable[PairResult], path: str) -> None:
    with open(path, "w") as fh:
        json.dump(traces_dict(results), fh, sort_keys=True)
        fh.write("\n")


def read_traces_json(path: str) -> dict[str, np.ndarray]:
    with open(path) as fh:
        raw = json.load(fh)
    return {key: np.array(vals) for key, vals in raw.items()}
