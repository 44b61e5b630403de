"""Dense statevector simulation of phase-oracle circuits.

Amplitude indexing is little-endian: qubit i is bit i of the state
index, so a graph-register basis state IS the vertex-subset mask.
Gates are applied in place through reshaped views; only H needs a
temporary copy of half the array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import HARD_MAX_QUBITS, Circuit, Gate
from .errors import InputError, InternalCheckError, ResourceLimitError

# Default runtime ceiling; callers may raise it up to HARD_MAX_QUBITS.
DEFAULT_MAX_QUBITS = 24

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass
class Statevector:
    """2^n_qubits complex amplitudes, owned mutably by the simulator."""

    n_qubits: int
    amps: np.ndarray

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def copy(self) -> Statevector:
        return Statevector(self.n_qubits, self.amps.copy())


@dataclass(frozen=True)
class MarginalDistribution:
    """Probability of each outcome of a measured register, outcome bit
    p taken from register[p]."""

    register: tuple[int, ...]
    probs: np.ndarray

    def as_list(self) -> list[float]:
        return [float(x) for x in self.probs]


@dataclass(frozen=True)
class ShotResult:
    """Counted outcomes of repeated measurement, reproducible per seed."""

    shots: int
    seed: int
    counts: dict[int, int]


def init_state(n_qubits: int) -> Statevector:
    """|0...0> on n_qubits qubits."""
    if not 1 <= n_qubits <= HARD_MAX_QUBITS:
        raise ResourceLimitError(
            f"qubit count {n_qubits} outside 1..{HARD_MAX_QUBITS}"
        )
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(n_qubits, amps)


def _check_qubit(state: Statevector, q: int) -> None:
    if not 0 <= q < state.n_qubits:
        raise InputError(f"qubit {q} out of range for {state.n_qubits}-qubit state")


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Apply one gate in place and return the same Statevector."""
    for q in gate.qubits:
        _check_qubit(state, q)
    amps = state.amps
    kind = gate.kind
    if kind == "h":
        (q,) = gate.qubits
        v = amps.reshape(-1, 2, 1 << q)
        lo = v[:, 0, :].copy()
        hi = v[:, 1, :]
        v[:, 0, :] = (lo + hi) * _INV_SQRT2
        v[:, 1, :] = (lo - hi) * _INV_SQRT2
    elif kind == "p":
        (q,) = gate.qubits
        v = amps.reshape(-1, 2, 1 << q)
        v[:, 1, :] *= np.exp(1j * gate.phase)
    elif kind == "cp":
        a, b = sorted(gate.qubits)
        v = amps.reshape(-1, 2, 1 << (b - a - 1), 2, 1 << a)
        v[:, 1, :, 1, :] *= np.exp(1j * gate.phase)
    elif kind == "ccp":
        a, b, c = sorted(gate.qubits)
        v = amps.reshape(-1, 2, 1 << (c - b - 1), 2, 1 << (b - a - 1), 2, 1 << a)
        v[:, 1, :, 1, :, 1, :] *= np.exp(1j * gate.phase)
    elif kind == "swap":
        a, b = sorted(gate.qubits)
        v = amps.reshape(-1, 2, 1 << (b - a - 1), 2, 1 << a)
        tmp = v[:, 0, :, 1, :].copy()
        v[:, 0, :, 1, :] = v[:, 1, :, 0, :]
        v[:, 1, :, 0, :] = tmp
    else:  # unreachable: Gate validates kind
        raise InputError(f"unknown gate kind {kind!r}")
    return state


def run(circuit: Circuit, max_qubits: int = DEFAULT_MAX_QUBITS) -> Statevector:
    """Simulate from |0...0>, returning the final statevector."""
    if max_qubits > HARD_MAX_QUBITS:
        raise ResourceLimitError(
            f"max_qubits {max_qubits} exceeds hard limit {HARD_MAX_QUBITS}"
        )
    if circuit.width > max_qubits:
        raise ResourceLimitError(
            f"circuit width {circuit.width} exceeds limit {max_qubits}"
        )
    state = init_state(circuit.width)
    for gate in circuit.gates:
        apply_gate(state, gate)
    norm = state.norm_sq()
    if abs(norm - 1.0) > 1e-9:
        raise InternalCheckError(f"norm drifted to {norm!r} after {len(circuit.gates)} gates")
    return state


def marginal(state: Statevector, register: tuple[int, ...]) -> MarginalDistribution:
    """Measurement distribution of the given qubits, all others traced
    out.  Outcome bit p comes from register[p].  Probabilities below
    1e-12 are clamped to zero."""
    k = len(register)
    if k == 0:
        raise InputError("empty measurement register")
    if len(set(register)) != k:
        raise InputError(f"duplicate qubits in register {register}")
    for q in register:
        _check_qubit(state, q)
    n = state.n_qubits
    probs = (np.abs(state.amps) ** 2).reshape((2,) * n)
    # ndarray axis a holds qubit n-1-a (C order, row-major).
    keep = {n - 1 - q for q in register}
    drop = tuple(a for a in range(n) if a not in keep)
    if drop:
        probs = probs.sum(axis=drop)
    # Remaining axes are sorted by original axis number; transpose so
    # axis 0 is register[k-1] (MSB) down to register[0] (LSB).
    kept_sorted = sorted(keep)
    pos = {a: i for i, a in enumerate(kept_sorted)}
    perm = [pos[n - 1 - register[bit]] for bit in range(k - 1, -1, -1)]
    out = probs.transpose(perm).reshape(-1).copy()
    out[out < 1e-12] = 0.0
    return MarginalDistribution(register=tuple(register), probs=out)


def sample(
    state: Statevector, register: tuple[int, ...], shots: int, seed: int
) -> ShotResult:
    """Draw measurement shots by inverse-CDF lookup on the marginal.

    PCG64 with an explicit seed; identical (state, register, shots,
    seed) give identical counts on any platform.
    """
    if shots < 1:
        raise InputError(f"shots must be positive, got {shots}")
    dist = marginal(state, register)
    cdf = np.cumsum(dist.probs)
    total = cdf[-1]
    if abs(total - 1.0) > 1e-9:
        raise InternalCheckError(f"marginal mass {total!r} is not 1")
    cdf /= total
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(shots)
    outcomes = np.searchsorted(cdf, draws, side="right")
    tallies = np.bincount(outcomes, minlength=len(dist.probs))
    counts = {int(x): int(c) for x, c in enumerate(tallies) if c}
    return ShotResult(shots=shots, seed=seed, counts=counts)


def phase_table(state: Statevector, theta: float, atol: float = 1e-6) -> dict[int, int]:
    """Rotation counts of a diagonal-evolution state.

    For each nonzero amplitude, returns the integer k with
    arg(amp) = k * theta (mod 2*pi).  Raises InternalCheckError if any
    amplitude's phase is farther than atol from every such multiple.
    """
    if theta <= 0:
        raise InputError(f"theta must be positive, got {theta}")
    idx = np.nonzero(np.abs(state.amps) > 1e-12)[0]
    angles = np.mod(np.angle(state.amps[idx]), math.tau)
    # rint picks the nearest multiple, so the residual is <= theta/2;
    # k == 2*pi/theta is folded back to 0 below.
    ks = np.rint(angles / theta).astype(np.int64)
    bad = np.abs(angles - ks * theta) > atol
    if np.any(bad):
        first = int(idx[bad][0])
        raise InternalCheckError(
            f"amplitude {first} phase {float(angles[bad][0])!r} is not a "
            f"multiple of theta={theta!r} within {atol}"
        )
    table: dict[int, int] = {}
    full = round(math.tau / theta) if abs(math.tau / theta - round(math.tau / theta)) < 1e-9 else 0
    for i, k in zip(idx, ks):
        kk = int(k)
        if full and kk == full:
            kk = 0
        table[int(i)] = kk
    return table


def dump_amplitudes(state: Statevector) -> dict:
    """JSON-ready nonzero amplitudes as [index, real, imag] triples."""
    idx = np.nonzero(state.amps)[0]
    return {
        "qubits": state.n_qubits,
        "amplitudes": [
            [int(i), float(state.amps[i].real), float(state.amps[i].imag)] for i in idx
        ],
    }
