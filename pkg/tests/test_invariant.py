from __future__ import annotations

import itertools
import random

import pytest
from conftest import random_graph, random_permutation, slow_char_poly, slow_histogram

from qgi import (
    CharPoly,
    EdgeHistogram,
    Graph,
    InputError,
    InternalCheckError,
    ResourceLimitError,
    are_isomorphic,
    char_poly,
    classical_histogram,
    fingerprint,
    induced_edge_count,
    invariant_equal,
    invariant_json,
    max_independent_set,
    named_graph,
    parse_edge_list,
    prop1_check,
    quantum_histogram,
    spectra_equal,
)

FROZEN_COUNTS = {
    "c4": [7, 4, 4, 0, 1],
    "m1": [7, 4, 4, 0, 1],
    "m2": [7, 4, 4, 0, 1],
    "m3": [8, 5, 2, 1],
    "petersen": [76, 135, 165, 135, 180, 87, 100, 60, 30, 30, 15, 0, 10, 0, 0, 1],
    "prism5": [81, 125, 155, 180, 125, 127, 80, 65, 30, 30, 15, 0, 10, 0, 0, 1],
    "g1": [26, 33, 27, 18, 13, 5, 5, 0, 1],
    "g2": [26, 33, 27, 18, 13, 5, 5, 0, 1],
}

STAR4 = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
C4_PLUS_K1 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3)])


# --- classical histogram ---

def test_classical_histogram_fixture_values():
    for name, counts in FROZEN_COUNTS.items():
        hist = classical_histogram(named_graph(name))
        assert list(hist.counts) == counts, name
        assert sum(hist.counts) == 1 << hist.n


def test_classical_histogram_matches_subset_enumeration():
    rng = random.Random(301)
    for _ in range(15):
        g = random_graph(rng, rng.randint(1, 6))
        assert list(classical_histogram(g).counts) == slow_histogram(g), g.adj


def test_histogram_is_isomorphism_invariant():
    rng = random.Random(302)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 7))
        perm = random_permutation(rng, g.n)
        assert classical_histogram(g).counts == classical_histogram(g.permuted(perm)).counts


def test_histogram_moment_identity():
    # each edge is induced by exactly 2^(n-2) subsets
    rng = random.Random(303)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 8))
        hist = classical_histogram(g)
        assert sum(k * c for k, c in enumerate(hist.counts)) == g.m << (g.n - 2)


def test_histogram_top_bin_counts_isolated_vertices():
    # subsets inducing all m edges: the non-isolated core plus any
    # subset of isolated vertices
    base = parse_edge_list("6; 0 1; 1 2; 0 2")  # triangle plus 3 isolated
    assert classical_histogram(base).counts[3] == 8
    assert classical_histogram(C4_PLUS_K1).counts[4] == 2


def test_classical_histogram_threads_equal():
    g = named_graph("petersen")
    assert classical_histogram(g, threads=4).counts == classical_histogram(g).counts


def test_classical_histogram_multichunk_threads_equal():
    # n = 21 spans two sweep chunks
    path = Graph.from_edges(21, [(i, i + 1) for i in range(20)])
    a = classical_histogram(path, threads=2)
    b = classical_histogram(path, threads=1)
    assert a.counts == b.counts
    assert sum(a.counts) == 1 << 21


# --- quantum histogram ---

def test_quantum_matches_classical_on_fixtures():
    for name in ("c4", "m3", "g1", "prism5"):
        g = named_graph(name)
        outcome = quantum_histogram(g)
        assert outcome.source == "qpe-exact"
        assert outcome.histogram.counts == classical_histogram(g).counts
        scale = 1 << g.n
        for prob, count in zip(outcome.probabilities, outcome.histogram.counts):
            assert prob == pytest.approx(count / scale, abs=1e-9)


def test_quantum_matches_classical_random():
    rng = random.Random(304)
    for _ in range(12):
        g = random_graph(rng, rng.randint(2, 7))
        assert quantum_histogram(g).histogram.counts == classical_histogram(g).counts


def test_quantum_fuse_equivalent():
    for name in ("m3", "g2"):
        g = named_graph(name)
        assert (
            quantum_histogram(g, fuse=True).histogram.counts
            == quantum_histogram(g, fuse=False).histogram.counts
        )


def test_quantum_edgeless_short_circuit():
    g = parse_edge_list("3;")
    outcome = quantum_histogram(g)
    assert outcome.histogram.counts == (8,)
    assert outcome.probabilities == (1.0,)
    assert outcome.plan.t == 1
    shot = quantum_histogram(g, shots=100, seed=3)
    assert shot.shot_counts == (100,) and shot.source == "qpe-shots"


def test_quantum_shots_mode():
    g = named_graph("m3")
    outcome = quantum_histogram(g, shots=50_000, seed=9)
    assert outcome.source == "qpe-shots"
    assert outcome.histogram is None
    assert sum(outcome.shot_counts) == 50_000
    assert outcome.probabilities == tuple(c / 50_000 for c in outcome.shot_counts)
    again = quantum_histogram(g, shots=50_000, seed=9)
    assert again.shot_counts == outcome.shot_counts
    # frequencies land near the exact masses at this sample size
    for freq, prob in zip(outcome.probabilities, (0.5, 0.3125, 0.125, 0.0625)):
        assert freq == pytest.approx(prob, abs=0.02)


def test_quantum_respects_qubit_budget():
    with pytest.raises(ResourceLimitError):
        quantum_histogram(named_graph("petersen"), max_qubits=10)


def test_quantum_plan_metadata():
    outcome = quantum_histogram(named_graph("petersen"))
    assert (outcome.plan.t, outcome.plan.oracle_calls) == (4, 15)


# --- equality and fingerprints ---

def test_fingerprint_c4():
    assert fingerprint(named_graph("c4")) == "n=4;m=4;h=7,4,4,0,1"


def test_invariant_equal():
    assert invariant_equal(named_graph("m1"), named_graph("m2"))
    assert not invariant_equal(named_graph("m1"), named_graph("m3"))
    assert not invariant_equal(named_graph("c4"), STAR4)  # different n
    assert invariant_equal(named_graph("g1"), named_graph("g2"))  # collision
    assert not invariant_equal(named_graph("petersen"), named_graph("prism5"))


# --- characteristic polynomial ---

def test_char_poly_small_frozen():
    assert char_poly(Graph.from_edges(2, [(0, 1)])).coeffs == (1, 0, -1)
    assert char_poly(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])).coeffs == (1, 0, -3, -2)
    assert char_poly(named_graph("c4")).coeffs == (1, 0, -4, 0, 0)
    assert char_poly(named_graph("petersen")).coeffs == (
        1, 0, -15, 0, 75, -24, -165, 120, 120, -160, 48,
    )


def test_char_poly_matches_expansion_oracle():
    rng = random.Random(305)
    for _ in range(12):
        g = random_graph(rng, rng.randint(1, 5))
        assert list(char_poly(g).coeffs) == slow_char_poly(g), g.adj


def test_char_poly_structure():
    rng = random.Random(306)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 7))
        coeffs = char_poly(g).coeffs
        assert coeffs[0] == 1 and coeffs[1] == 0
        assert coeffs[2] == -g.m  # second symmetric function counts edges
        perm = random_permutation(rng, g.n)
        assert char_poly(g.permuted(perm)).coeffs == coeffs


def test_char_poly_cap():
    big = Graph.from_edges(17, [(0, 1)])
    with pytest.raises(ResourceLimitError):
        char_poly(big)


def test_spectra_equal():
    assert spectra_equal(named_graph("m1"), named_graph("m2"))
    assert spectra_equal(STAR4, C4_PLUS_K1)  # cospectral non-isomorphic pair
    assert not spectra_equal(named_graph("c4"), named_graph("m3"))
    assert not spectra_equal(named_graph("c4"), STAR4)


def test_cospectral_pair_separated_by_histogram():
    assert are_isomorphic(STAR4, C4_PLUS_K1) is None
    assert spectra_equal(STAR4, C4_PLUS_K1)
    assert not invariant_equal(STAR4, C4_PLUS_K1)
    assert classical_histogram(STAR4).counts == (17, 4, 6, 4, 1)
    assert classical_histogram(C4_PLUS_K1).counts == (14, 8, 8, 0, 2)


# --- subset-preservation check ---

def test_prop1_identity_and_witness():
    m1, m2 = named_graph("m1"), named_graph("m2")
    assert prop1_check(m1, m1, (0, 1, 2, 3))
    witness = are_isomorphic(m1, m2)
    assert witness is not None
    assert prop1_check(m1, m2, witness)


def test_prop1_matches_isomorphism_over_all_perms():
    rng = random.Random(307)
    for _ in range(6):
        n = rng.randint(2, 5)
        g1 = random_graph(rng, n)
        g2 = random_graph(rng, n)
        by_perms = any(
            prop1_check(g1, g2, perm) for perm in itertools.permutations(range(n))
        )
        assert by_perms == (are_isomorphic(g1, g2) is not None)


def test_prop1_rejects_relabeling_that_moves_edges():
    g1 = named_graph("g1")
    g2 = named_graph("g2")
    assert not prop1_check(g1, g2, tuple(range(7)))


def test_prop1_validation():
    c4 = named_graph("c4")
    with pytest.raises(InputError, match="equal vertex counts"):
        prop1_check(c4, STAR4, (0, 1, 2, 3))
    with pytest.raises(InputError, match="not a permutation"):
        prop1_check(c4, c4, (0, 1, 2, 2))
    big = Graph.from_edges(17, [(0, 1)])
    with pytest.raises(ResourceLimitError):
        prop1_check(big, big, tuple(range(17)))


# --- independent sets ---

def test_max_independent_set_fixtures():
    size, mask = max_independent_set(named_graph("prism5"))
    assert size == 4 and mask == 0b0010101010  # vertices {1, 3, 5, 7}
    assert max_independent_set(named_graph("petersen")) == (4, 116)


def test_max_independent_set_is_valid_and_maximal():
    for name in ("prism5", "petersen", "g1"):
        g = named_graph(name)
        size, mask = max_independent_set(g)
        assert bin(mask).count("1") == size
        assert induced_edge_count(g, mask) == 0
        for other in range(1 << g.n):
            if induced_edge_count(g, other) == 0:
                pop = bin(other).count("1")
                assert pop <= size
                if pop == size:
                    assert mask <= other  # smallest-mask tie break


def test_max_independent_set_small():
    assert max_independent_set(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])) == (1, 1)
    assert max_independent_set(parse_edge_list("3; 0 1; 1 2")) == (2, 0b101)
    assert max_independent_set(parse_edge_list("3;")) == (3, 0b111)


# --- result types ---

def test_edge_histogram_validation():
    EdgeHistogram(n=2, m=1, counts=(3, 1))  # valid
    with pytest.raises(InternalCheckError, match="length"):
        EdgeHistogram(n=2, m=1, counts=(4,))
    with pytest.raises(InternalCheckError, match="negative"):
        EdgeHistogram(n=2, m=1, counts=(5, -1))
    with pytest.raises(InternalCheckError, match="sums to"):
        EdgeHistogram(n=2, m=1, counts=(3, 2))
    with pytest.raises(InternalCheckError, match="full vertex set"):
        EdgeHistogram(n=2, m=1, counts=(4, 0))
    with pytest.raises(InternalCheckError, match="singleton"):
        EdgeHistogram(n=2, m=1, counts=(2, 2))


def test_edge_histogram_probabilities():
    hist = EdgeHistogram(n=2, m=1, counts=(3, 1))
    assert hist.probabilities == (0.75, 0.25)


def test_char_poly_type_requires_monic():
    with pytest.raises(InternalCheckError, match="monic"):
        CharPoly(coeffs=(2, 0))
    with pytest.raises(InternalCheckError, match="monic"):
        CharPoly(coeffs=())


def test_invariant_json_schema():
    doc = invariant_json(4, 4, (7, 4, 4, 0, 1), (0.4375, 0.25, 0.25, 0.0, 0.0625), "classical")
    assert doc == {
        "n": 4,
        "m": 4,
        "counts": [7, 4, 4, 0, 1],
        "probabilities": [0.4375, 0.25, 0.25, 0.0, 0.0625],
        "source": "classical",
    }
    assert invariant_json(2, 1, None, (0.5, 0.5), "qpe-shots")["counts"] is None
