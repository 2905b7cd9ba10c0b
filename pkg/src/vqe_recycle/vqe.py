"""Single VQE runs: initialization strategies, objective wiring, run metrics.

One run minimizes the expectation of the diagonal MaxCut Hamiltonian over
the ansatz angles and records the whole energy trace plus two quality
metrics: the cut of the most probable bitstring and the expected cut of
the final state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph
from .maxcut import cut_value
from .optimize import OptimizerConfig, minimize
from .simulator import (
    AnsatzSpec,
    argmax_bitstring,
    build_ansatz_state,
    diagonal_hamiltonian,
    expectation,
)

NEAR_ZERO = "near_zero"
TRANSFER = "transfer"
RANDOM_UNIFORM = "random_uniform"

# Half-width of the near-zero initialization window, in radians.
NEAR_ZERO_SPREAD = 1e-3


@dataclass(frozen=True)
class InitStrategy:
    """How the rotation angles start: near zero, recycled, or fully random."""

    kind: str
    payload: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in (NEAR_ZERO, TRANSFER, RANDOM_UNIFORM):
            raise ValueError(f"unknown init strategy {self.kind!r}")
        if self.kind == TRANSFER:
            if self.payload is None:
                raise ValueError("transfer strategy needs pre-trained angles")
            object.__setattr__(
                self, "payload", np.array(self.payload, dtype=np.float64)
            )
        elif self.payload is not None:
            raise ValueError(f"{self.kind} strategy takes no payload")

    @classmethod
    def near_zero(cls) -> "InitStrategy":
        return cls(NEAR_ZERO)

    @classmethod
    def transfer(cls, params: np.ndarray) -> "InitStrategy":
        return cls(TRANSFER, params)

    @classmethod
    def random_uniform(cls) -> "InitStrategy":
        return cls(RANDOM_UNIFORM)


def init_params(
    strategy: InitStrategy, dim: int, rng: np.random.Generator | None = None
) -> np.ndarray:
    """Draw (or copy) the initial angle vector for a run."""
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if strategy.kind == TRANSFER:
        if strategy.payload.shape != (dim,):
            raise ValueError(
                f"transfer payload has shape {strategy.payload.shape}, expected ({dim},)"
            )
        return strategy.payload.copy()
    if rng is None:
        raise ValueError(f"{strategy.kind} initialization needs an rng")
    if strategy.kind == NEAR_ZERO:
        return rng.uniform(-NEAR_ZERO_SPREAD, NEAR_ZERO_SPREAD, size=dim)
    return rng.uniform(0.0, 2.0 * np.pi, size=dim)


@dataclass
class RunRecord:
    """Everything one VQE run produced."""

    graph_id: str
    circuit: str
    init: str
    trace: np.ndarray
    evals_used: int
    termination: str
    final_params: np.ndarray
    best_energy: float
    argmax_cut: int
    expected_cut: float
    approx_ratio_argmax: float
    approx_ratio_expect: float

    def to_json_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "circuit": self.circuit,
            "init": self.init,
            "trace": [float(v) for v in self.trace],
            "evals_used": self.evals_used,
            "termination": self.termination,
            "final_params": [float(v) for v in self.final_params],
            "best_energy": self.best_energy,
            "argmax_cut": self.argmax_cut,
            "expected_cut": self.expected_cut,
            "approx_ratio_argmax": self.approx_ratio_argmax,
            "approx_ratio_expect": self.approx_ratio_expect,
        }


def approximation_ratio(cut: float, opt_cut: int) -> float:
    """Achieved cut over optimal cut; 1.0 means optimal."""
    if opt_cut < 1:
        raise ValueError(f"opt_cut must be >= 1, got {opt_cut}")
    if cut < 0:
        raise ValueError(f"cut must be >= 0, got {cut}")
    return cut / opt_cut


def run_vqe(
    g: Graph,
    spec: AnsatzSpec,
    strategy: InitStrategy,
    cfg: OptimizerConfig,
    opt_cut: int,
    rng: np.random.Generator | None = None,
    graph_id: str = "",
) -> RunRecord:
    """Optimize the ansatz on ``g`` and score the final state.

    ``opt_cut`` must come from the exact oracle; both approximation ratios
    are computed against it.
    """
    if spec.n != g.n:
        raise ValueError(f"ansatz has {spec.n} qubits but graph has {g.n} nodes")
    if opt_cut < 1:
        raise ValueError(f"opt_cut must be >= 1, got {opt_cut}")

    energies = diagonal_hamiltonian(g)
    x0 = init_params(strategy, spec.param_dim, rng)
    buffer = np.zeros(1 << spec.n, dtype=np.complex128)

    def objective(theta: np.ndarray) -> float:
        return expectation(build_ansatz_state(spec, theta, out=buffer), energies)

    res = minimize(objective, x0, cfg)

    final_state = build_ansatz_state(spec, res.best_x)
    best_assignment = argmax_bitstring(final_state)
    argmax_cut = cut_value(g, best_assignment)
    expected_cut = -res.best_f
    return RunRecord(
        graph_id=graph_id,
        circuit=spec.kind,
        init=strategy.kind,
        trace=res.trace,
        evals_used=res.evals_used,
        termination=res.termination,
        final_params=res.best_x,
        best_energy=res.best_f,
        argmax_cut=argmax_cut,
        expected_cut=expected_cut,
        approx_ratio_argmax=approximation_ratio(argmax_cut, opt_cut),
        approx_ratio_expect=approximation_ratio(expected_cut, opt_cut),
    )
