"""The edge-count histogram invariant and its classical companions.

The invariant of a graph is the vector counts[0..m] where counts[k] is
the number of vertex subsets inducing exactly k edges.  It can be read
off a phase-estimation circuit (quantum_histogram) or computed by a
brute-force subset sweep (classical_histogram); both must agree
exactly.  char_poly provides the classical spectral invariant used for
comparison.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .circuit import PrecisionPlan, build_qpe, plan_precision
from .errors import InputError, InternalCheckError, ResourceLimitError
from .graphs import Graph, Permutation
from .simulator import DEFAULT_MAX_QUBITS, marginal, run, sample

# char_poly and prop1_check sweep 2^n subsets / n x n integer matrices.
CHAR_POLY_MAX_VERTICES = 16
SUBSET_CHECK_MAX_VERTICES = 16

_CHUNK = 1 << 20


@dataclass(frozen=True)
class EdgeHistogram:
    """counts[k] = number of vertex subsets inducing exactly k edges."""

    n: int
    m: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.m + 1:
            raise InternalCheckError(
                f"histogram length {len(self.counts)} != m+1 = {self.m + 1}"
            )
        if any(c < 0 for c in self.counts):
            raise InternalCheckError("negative histogram entry")
        if sum(self.counts) != 1 << self.n:
            raise InternalCheckError(
                f"histogram sums to {sum(self.counts)}, expected {1 << self.n}"
            )
        # Subsets inducing all m edges are the full set plus any subset
        # of the isolated vertices, so this is 2^(isolated count) >= 1.
        if self.counts[self.m] < 1:
            raise InternalCheckError("the full vertex set induces all m edges")
        if self.counts[0] < self.n + 1:
            raise InternalCheckError("empty and singleton subsets all induce 0 edges")

    @property
    def probabilities(self) -> tuple[float, ...]:
        scale = 1.0 / (1 << self.n)
        return tuple(c * scale for c in self.counts)


@dataclass(frozen=True)
class CharPoly:
    """Characteristic polynomial of the adjacency matrix, exact integer
    coefficients, leading first: coeffs[k] multiplies x^(n-k)."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] != 1:
            raise InternalCheckError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class QpeOutcome:
    """Result of the quantum path: exact histogram, or raw shot data.

    probabilities are the estimation-register outcome probabilities for
    edge counts 0..m (exact mode: pre-rounding values; shot mode:
    empirical frequencies).
    """

    source: str
    plan: PrecisionPlan
    histogram: EdgeHistogram | None
    probabilities: tuple[float, ...]
    shots: int | None = None
    seed: int | None = None
    shot_counts: tuple[int, ...] | None = None


def _edge_counts(g: Graph, masks: np.ndarray) -> np.ndarray:
    """Induced edge count of every subset mask, vectorized (fits uint16)."""
    acc = np.zeros(masks.shape, dtype=np.uint16)
    for i, j in g.edges():
        acc += ((masks >> i) & (masks >> j) & 1).astype(np.uint16)
    return acc


def _chunks(n: int) -> list[tuple[int, int]]:
    total = 1 << n
    return [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]


def classical_histogram(g: Graph, threads: int = 1) -> EdgeHistogram:
    """Brute-force oracle: sweep all 2^n subsets and tally edge counts.

    The sweep is chunked; chunks may run on a thread pool but are
    merged by summation, so the result is independent of threads.
    """
    m = g.m

    def tally(span: tuple[int, int]) -> np.ndarray:
        idx = np.arange(span[0], span[1], dtype=np.uint32)
        return np.bincount(_edge_counts(g, idx), minlength=m + 1)

    spans = _chunks(g.n)
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(tally, spans))
    else:
        parts = [tally(s) for s in spans]
    counts = np.sum(parts, axis=0)
    return EdgeHistogram(n=g.n, m=m, counts=tuple(int(c) for c in counts))


def quantum_histogram(
    g: Graph,
    shots: int | None = None,
    seed: int = 0,
    fuse: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> QpeOutcome:
    """Read the invariant off the phase-estimation circuit.

    Exact mode (shots=None) converts outcome probabilities p(x) to
    integer subset counts p(x) * 2^n, verifying each is within 1e-6 of
    an integer and that outcomes above m have zero mass.  Shot mode
    reports sampled per-outcome counts without conversion.  An edgeless
    graph short-circuits to the trivial histogram [2^n].
    """
    plan = plan_precision(g.m)
    if g.m == 0:
        hist = EdgeHistogram(n=g.n, m=0, counts=(1 << g.n,))
        if shots is None:
            return QpeOutcome("qpe-exact", plan, hist, (1.0,))
        return QpeOutcome(
            "qpe-shots", plan, hist, (1.0,), shots=shots, seed=seed, shot_counts=(shots,)
        )
    circuit = build_qpe(g, fuse=fuse)
    state = run(circuit, max_qubits=max_qubits)
    if shots is None:
        dist = marginal(state, circuit.est_register)
        scaled = dist.probs * (1 << g.n)
        rounded = np.rint(scaled)
        off = np.abs(scaled - rounded)
        if np.any(off > 1e-6):
            x = int(np.argmax(off))
            raise InternalCheckError(
                f"outcome {x} mass {scaled[x]!r}/2^n is not an integer count"
            )
        counts = rounded.astype(np.int64)
        if np.any(counts[g.m + 1 :] != 0):
            raise InternalCheckError("nonzero probability beyond m edges")
        hist = EdgeHistogram(n=g.n, m=g.m, counts=tuple(int(c) for c in counts[: g.m + 1]))
        return QpeOutcome(
            "qpe-exact", plan, hist, tuple(float(x) for x in dist.probs[: g.m + 1])
        )
    result = sample(state, circuit.est_register, shots=shots, seed=seed)
    tallies = [0] * (1 << plan.t)
    for outcome, c in result.counts.items():
        tallies[outcome] = c
    if any(tallies[g.m + 1 :]):
        raise InternalCheckError("sampled an outcome beyond m edges")
    freqs = tuple(c / shots for c in tallies[: g.m + 1])
    return QpeOutcome(
        "qpe-shots",
        plan,
        None,
        freqs,
        shots=shots,
        seed=seed,
        shot_counts=tuple(tallies[: g.m + 1]),
    )


def fingerprint(g: Graph, threads: int = 1) -> str:
    """Canonical text form of the invariant: "n=..;m=..;h=c0,c1,..."."""
    hist = classical_histogram(g, threads=threads)
    return f"n={g.n};m={g.m};h=" + ",".join(str(c) for c in hist.counts)


def invariant_equal(g1: Graph, g2: Graph, threads: int = 1) -> bool:
    """True iff both graphs have identical edge-count histograms."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    h1 = classical_histogram(g1, threads=threads)
    h2 = classical_histogram(g2, threads=threads)
    return h1.counts == h2.counts


def char_poly(g: Graph) -> CharPoly:
    """Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier
    recurrence in exact integer arithmetic."""
    n = g.n
    if n > CHAR_POLY_MAX_VERTICES:
        raise ResourceLimitError(
            f"char_poly supports n <= {CHAR_POLY_MAX_VERTICES}, got {n}"
        )
    a = [[(g.adj[i] >> j) & 1 for j in range(n)] for i in range(n)]
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs = [1]
    for k in range(1, n + 1):
        am = [
            [sum(a[i][l] * mat[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
        trace = sum(am[i][i] for i in range(n))
        if trace % k:
            raise InternalCheckError(f"trace {trace} not divisible by {k}")
        c = -(trace // k)
        coeffs.append(c)
        mat = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    if coeffs[1] != 0:
        raise InternalCheckError("adjacency trace must vanish")
    return CharPoly(coeffs=tuple(coeffs))


def spectra_equal(g1: Graph, g2: Graph) -> bool:
    """True iff both adjacency matrices are cospectral."""
    if g1.n != g2.n:
        return False
    return char_poly(g1).coeffs == char_poly(g2).coeffs


def prop1_check(g1: Graph, g2: Graph, perm: Permutation) -> bool:
    """Verify that perm preserves induced edge counts on every subset:
    e_G1(s) == e_G2(perm(s)) for all 2^n subsets s."""
    if g1.n != g2.n:
        raise InputError("graphs must have equal vertex counts")
    n = g1.n
    if n > SUBSET_CHECK_MAX_VERTICES:
        raise ResourceLimitError(
            f"prop1_check supports n <= {SUBSET_CHECK_MAX_VERTICES}, got {n}"
        )
    if sorted(perm) != list(range(n)):
        raise InputError(f"not a permutation of 0..{n - 1}: {perm}")
    for lo, hi in _chunks(n):
        masks = np.arange(lo, hi, dtype=np.uint32)
        mapped = np.zeros_like(masks)
        for i in range(n):
            mapped |= ((masks >> i) & 1) << perm[i]
        if not np.array_equal(_edge_counts(g1, masks), _edge_counts(g2, mapped)):
            return False
    return True


def max_independent_set(g: Graph) -> tuple[int, int]:
    """Largest subset inducing zero edges, via the same subset sweep.

    Returns (size, mask); ties broken by the numerically smallest mask.
    """
    best_size = -1
    best_mask = 0
    for lo, hi in _chunks(g.n):
        masks = np.arange(lo, hi, dtype=np.uint32)
        zero = _edge_counts(g, masks) == 0
        if not np.any(zero):
            continue
        cand = masks[zero]
        sizes = np.bitwise_count(cand)
        top = int(sizes.max())
        if top > best_size:
            best_size = top
            best_mask = int(cand[sizes == top].min())
        elif top == best_size:
            best_mask = min(best_mask, int(cand[sizes == top].min()))
    return best_size, best_mask


def invariant_json(
    n: int,
    m: int,
    counts: tuple[int, ...] | None,
    probabilities: tuple[float, ...],
    source: str,
) -> dict:
    """The shared result schema emitted by the CLI in JSON mode."""
    return {
        "n": n,
        "m": m,
        "counts": None if counts is None else list(counts),
        "probabilities": list(probabilities),
        "source": source,
    }
