"""Dense statevector simulation of the base/had ansatz family.

Basis indexing is little-endian: bit k of a basis index is the state of
qubit k.  A state is a plain complex ndarray of length 2^n; gate kernels
mutate it in place and return it for chaining.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

try:
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional accelerator
    _HAVE_NUMBA = False

from .graphs import Graph
from .maxcut import CapacityError, cut_table, index_to_assignment

MAX_QUBITS = 24

BASE = "base"
HAD = "had"
CIRCUITS = (BASE, HAD)

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class AnsatzSpec:
    """Circuit family: RX/RY layer pairs joined by a circular CNOT ring.

    ``had`` prefixes one Hadamard per qubit before the first layer; ``base``
    starts directly from |0...0>.  Each of the ``layers`` repetitions
    consumes n RX angles followed by n RY angles.
    """

    kind: str
    n: int
    layers: int = 3

    def __post_init__(self):
        if self.kind not in CIRCUITS:
            raise ValueError(f"unknown circuit kind {self.kind!r}")
        if not 1 <= self.n <= MAX_QUBITS:
            raise CapacityError(f"qubit count {self.n} outside 1..{MAX_QUBITS}")
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")

    @property
    def param_dim(self) -> int:
        return 2 * self.n * self.layers


def _num_qubits(state: np.ndarray) -> int:
    n = state.size.bit_length() - 1
    if state.size != 1 << n:
        raise ValueError(f"state length {state.size} is not a power of two")
    return n


def zero_state(n: int) -> np.ndarray:
    """|0...0> on n qubits."""
    if not 1 <= n <= MAX_QUBITS:
        raise CapacityError(f"qubit count {n} outside 1..{MAX_QUBITS}")
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


def _apply_1q(state: np.ndarray, qubit: int, u00, u01, u10, u11) -> np.ndarray:
    n = _num_qubits(state)
    if not 0 <= qubit < n:
        raise IndexError(f"qubit {qubit} out of range for n={n}")
    psi = state.reshape(-1, 2, 1 << qubit)
    lo = psi[:, 0, :].copy()
    hi = psi[:, 1, :]
    psi[:, 0, :] = u00 * lo + u01 * hi
    psi[:, 1, :] = u10 * lo + u11 * hi
    return state


def apply_h(state: np.ndarray, qubit: int) -> np.ndarray:
    return _apply_1q(state, qubit, _INV_SQRT2, _INV_SQRT2, _INV_SQRT2, -_INV_SQRT2)


def apply_rx(state: np.ndarray, qubit: int, theta: float) -> np.ndarray:
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    return _apply_1q(state, qubit, c, -1j * s, -1j * s, c)


def apply_ry(state: np.ndarray, qubit: int, theta: float) -> np.ndarray:
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    return _apply_1q(state, qubit, c, -s, s, c)


def apply_cnot(state: np.ndarray, control: int, target: int) -> np.ndarray:
    """Flip ``target`` wherever ``control`` is 1."""
    n = _num_qubits(state)
    if control == target:
        raise ValueError("control and target must differ")
    for q in (control, target):
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for n={n}")
    idx = np.arange(state.size)
    # CNOT permutes basis states by an involution, so gathering from the
    # image indices applies the gate.
    state[:] = state[idx ^ (((idx >> control) & 1) << target)]
    return state


@lru_cache(maxsize=None)
def _ring_gather(n: int) -> np.ndarray:
    """Gather indices applying CNOT(i -> i+1 mod n) for i = 0..n-1 in order."""
    idx = np.arange(1 << n)
    gather = idx
    for control in range(n):
        target = (control + 1) % n
        step = idx ^ (((idx >> control) & 1) << target)
        gather = gather[step]
    gather.setflags(write=False)
    return gather


def build_ansatz_state(
    spec: AnsatzSpec, params: np.ndarray, out: np.ndarray | None = None
) -> np.ndarray:
    """Run the ansatz on |0...0> and return the prepared state.

    ``out`` may supply a reusable complex buffer of length 2^n to avoid
    per-call allocation in optimization loops.
    """
    params = np.asarray(params, dtype=np.float64)
    if params.shape != (spec.param_dim,):
        raise ValueError(
            f"expected {spec.param_dim} angles for {spec.kind}/n={spec.n}/"
            f"L={spec.layers}, got shape {params.shape}"
        )
    size = 1 << spec.n
    if out is None:
        state = np.zeros(size, dtype=np.complex128)
    else:
        if out.shape != (size,) or out.dtype != np.complex128:
            raise ValueError("out buffer must be complex128 of length 2^n")
        state = out
        state[:] = 0.0
    state[0] = 1.0

    if spec.kind == HAD:
        for q in range(spec.n):
            apply_h(state, q)
    ring = _ring_gather(spec.n)
    for layer in range(spec.layers):
        off = 2 * spec.n * layer
        for q in range(spec.n):
            apply_rx(state, q, params[off + q])
        for q in range(spec.n):
            apply_ry(state, q, params[off + spec.n + q])
        state[:] = state[ring]
    return state


def diagonal_hamiltonian(g: Graph) -> np.ndarray:
    """Diagonal energies E(x) = -cut(x): the ground state encodes MaxCut."""
    return -cut_table(g).astype(np.float64)


def expectation(state: np.ndarray, energies: np.ndarray) -> float:
    """<state| H |state> for a diagonal H given by its energy table."""
    if state.shape != energies.shape:
        raise ValueError(
            f"state/energies length mismatch: {state.shape} vs {energies.shape}"
        )
    probs = state.real**2 + state.imag**2
    return float(np.dot(probs, energies))


def argmax_bitstring(state: np.ndarray) -> str:
    """Most probable assignment; ties break toward the smallest basis index."""
    n = _num_qubits(state)
    probs = state.real**2 + state.imag**2
    return index_to_assignment(int(np.argmax(probs)), n)
