"""Census of small graphs: does the histogram invariant separate
isomorphism classes, and where does it collide?

Classes are enumerated by extending each (n-1)-vertex representative
with one new vertex over all 2^(n-1) neighborhoods, deduplicating by
canonical code.  Representatives are rebuilt from sorted codes, so the
output is deterministic regardless of thread count.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import CacheError, InputError, InternalCheckError, ResourceLimitError
from .graphs import Graph, are_isomorphic, canonical_code, encode_graph6, from_canonical_code
from .invariant import char_poly, classical_histogram, quantum_histogram

# Enumeration is limited by the factorial canonical-code step.
SURVEY_MAX_CLASSICAL = 8
SURVEY_MAX_QPE = 7

CACHE_VERSION = 1


@dataclass(frozen=True)
class GraphClassSet:
    """All isomorphism classes on n vertices, one representative each,
    sorted by canonical code."""

    n: int
    representatives: tuple[Graph, ...]


@dataclass(frozen=True)
class SurveyReport:
    n: int
    source: str
    class_count: int
    distinct_quantum: int
    distinct_spectra: int
    collisions: tuple[tuple[str, str], ...]
    elapsed_seconds: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classes": self.class_count,
            "distinct_quantum": self.distinct_quantum,
            "distinct_spectra": self.distinct_spectra,
            "collisions": [list(pair) for pair in self.collisions],
        }


def _map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def enumerate_classes(n: int, threads: int = 1) -> GraphClassSet:
    """All isomorphism classes on exactly n vertices (n <= 8)."""
    if not 1 <= n <= SURVEY_MAX_CLASSICAL:
        raise ResourceLimitError(
            f"class enumeration supports 1 <= n <= {SURVEY_MAX_CLASSICAL}, got {n}"
        )
    reps = [Graph(1, (0,))]
    for k in range(2, n + 1):
        candidates = []
        for g in reps:
            base = g.adj
            for nb in range(1 << (k - 1)):
                rows = [base[i] | (((nb >> i) & 1) << (k - 1)) for i in range(k - 1)]
                rows.append(nb)
                candidates.append(Graph(k, tuple(rows)))
        codes = set(_map(canonical_code, candidates, threads))
        reps = [from_canonical_code(k, c) for c in sorted(codes)]
    return GraphClassSet(n=n, representatives=tuple(reps))


def run_survey(n: int, source: str = "classical", threads: int = 1) -> SurveyReport:
    """Histogram and spectrum statistics over all classes on n vertices.

    Every pair of representatives sharing a histogram is re-checked to
    be non-isomorphic; a failure indicates an enumeration bug.
    """
    if source == "classical":
        cap = SURVEY_MAX_CLASSICAL
    elif source == "qpe-exact":
        cap = SURVEY_MAX_QPE
    else:
        raise InputError(f"unknown survey source {source!r}")
    if not 1 <= n <= cap:
        raise ResourceLimitError(f"survey source {source} supports n <= {cap}, got {n}")
    start = time.perf_counter()
    classes = enumerate_classes(n, threads=threads)
    reps = classes.representatives

    if source == "classical":
        fingerprints = _map(
            lambda g: classical_histogram(g).counts, reps, threads
        )
    else:
        # Fused controlled powers: identical outcome, far fewer gates.
        fingerprints = _map(
            lambda g: quantum_histogram(g, fuse=True).histogram.counts, reps, threads
        )
    spectra = _map(lambda g: char_poly(g).coeffs, reps, threads)

    groups: dict[tuple[int, ...], list[int]] = {}
    for idx, fp in enumerate(fingerprints):
        groups.setdefault(fp, []).append(idx)
    collisions: list[tuple[str, str]] = []
    for members in groups.values():
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                if are_isomorphic(reps[a], reps[b]) is not None:
                    raise InternalCheckError(
                        f"representatives {a} and {b} on n={n} are isomorphic"
                    )
                collisions.append((encode_graph6(reps[a]), encode_graph6(reps[b])))
    collisions.sort()
    return SurveyReport(
        n=n,
        source=source,
        class_count=len(reps),
        distinct_quantum=len(set(fingerprints)),
        distinct_spectra=len(set(spectra)),
        collisions=tuple(collisions),
        elapsed_seconds=time.perf_counter() - start,
    )


def _report_digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def save_report(report: SurveyReport, path: str) -> None:
    """Append/replace this report's line in a JSON-lines cache file."""
    entries = _read_cache_lines(path, missing_ok=True)
    payload = report.to_json()
    line = {
        "version": CACHE_VERSION,
        "n": report.n,
        "source": report.source,
        "sha256": _report_digest(payload),
        "report": payload,
    }
    key = (report.n, report.source, CACHE_VERSION)
    kept = [
        e
        for e in entries
        if (e.get("n"), e.get("source"), e.get("version")) != key
    ]
    kept.append(line)
    with open(path, "w", encoding="utf-8") as fh:
        for e in kept:
            fh.write(json.dumps(e, sort_keys=True) + "\n")


def load_report(path: str, n: int, source: str) -> SurveyReport | None:
    """Fetch a cached report.  Returns None when absent or written by a
    different cache version; raises CacheError on corrupt content."""
    try:
        entries = _read_cache_lines(path, missing_ok=False)
    except FileNotFoundError:
        return None
    for e in entries:
        if e.get("n") != n or e.get("source") != source:
            continue
        if e.get("version") != CACHE_VERSION:
            continue
        payload = e.get("report")
        if not isinstance(payload, dict):
            raise CacheError(f"cache entry for n={n} has no report object")
        if _report_digest(payload) != e.get("sha256"):
            raise CacheError(f"cache checksum mismatch for n={n} source={source}")
        try:
            return SurveyReport(
                n=payload["n"],
                source=source,
                class_count=payload["classes"],
                distinct_quantum=payload["distinct_quantum"],
                distinct_spectra=payload["distinct_spectra"],
                collisions=tuple((a, b) for a, b in payload["collisions"]),
                elapsed_seconds=0.0,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CacheError(f"cache entry for n={n} is malformed: {exc}") from None
    return None


def _read_cache_lines(path: str, missing_ok: bool) -> list[dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except FileNotFoundError:
        if missing_ok:
            return []
        raise
    entries = []
    for ln, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CacheError(f"{path}:{ln}: not valid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise CacheError(f"{path}:{ln}: expected a JSON object")
        entries.append(obj)
    return entries


def verify_counterexample() -> dict:
    """Re-derive the order-7 pair witnessing that the invariant is not
    complete: non-isomorphic graphs with identical histograms."""
    from .fixtures import named_graph

    g1 = named_graph("g1")
    g2 = named_graph("g2")
    if are_isomorphic(g1, g2) is not None:
        raise InternalCheckError("counterexample graphs must be non-isomorphic")
    h1 = classical_histogram(g1)
    h2 = classical_histogram(g2)
    if h1.counts != h2.counts:
        raise InternalCheckError("counterexample graphs must share a histogram")
    return {
        "isomorphic": False,
        "histograms_equal": True,
        "counts": list(h1.counts),
        "probabilities": list(h1.probabilities),
    }
