"""Simple undirected graphs as adjacency bitmasks.

Vertices are 0-indexed internally; vertex i corresponds to bit i (LSB
first) both in adjacency rows and in vertex-subset masks, so subset
masks double directly as basis-state indices on the graph register.
Graphs are immutable; every mutating-style operation returns a new
Graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

import numpy as np

from .errors import GraphParseError, InputError, ResourceLimitError

# Hard limit on vertices: subset sweeps enumerate all 2^n masks.
MAX_VERTICES = 24
# Canonical codes minimize over all n! labelings.
CANONICAL_MAX_VERTICES = 8
# Exact isomorphism search is intended for small inputs.
ISOMORPHISM_MAX_VERTICES = 10

# A vertex subset is a plain bitmask: bit i set <=> vertex i included.
VertexSubset = int
# A permutation maps vertex i to p[i].
Permutation = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on n vertices.

    adj[i] is the neighborhood bitmask of vertex i.  No loops, and
    bit j of adj[i] always equals bit i of adj[j].
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise InputError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise InputError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise InputError(f"adjacency row {i} references vertices >= {self.n}")
            if (row >> i) & 1:
                raise InputError(f"loop at vertex {i}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.adj[i] >> j) & 1 != (self.adj[j] >> i) & 1:
                    raise InputError(f"asymmetric adjacency between {i} and {j}")

    @cached_property
    def m(self) -> int:
        """Number of edges."""
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges (i, j) with i < j, sorted lexicographically."""
        return tuple(
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if (self.adj[i] >> j) & 1
        )

    def permuted(self, p: Permutation) -> Graph:
        """Relabel: vertex i becomes p[i]."""
        if sorted(p) != list(range(self.n)):
            raise InputError(f"not a permutation of 0..{self.n - 1}: {p}")
        adj = [0] * self.n
        for i, j in self.edges():
            adj[p[i]] |= 1 << p[j]
            adj[p[j]] |= 1 << p[i]
        return Graph(self.n, tuple(adj))

    @staticmethod
    def from_edges(n: int, edges) -> Graph:
        adj = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise InputError(f"loop at vertex {i}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return Graph(n, tuple(adj))


def _pair_order(n: int) -> list[tuple[int, int]]:
    # Column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    return [(i, j) for j in range(1, n) for i in range(j)]


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string (short form, n <= 24).

    Accepts an optional ">>graph6<<" prefix.  Errors report the byte
    offset of the offending character within the stripped payload.
    """
    s = text.strip()
    if s.startswith(">>"):
        header = ">>graph6<<"
        if not s.startswith(header):
            raise GraphParseError(f"malformed header at byte 0: {s[:12]!r}")
        s = s[len(header):]
    if not s:
        raise GraphParseError("empty graph6 string (byte 0)")
    c0 = ord(s[0])
    if c0 == 126:
        # Long-form count prefix implies n >= 63.
        raise GraphParseError(
            f"byte 0: long-form vertex count not supported (n > {MAX_VERTICES})"
        )
    if not 63 <= c0 <= 125:
        raise GraphParseError(f"byte 0: character {s[0]!r} outside graph6 alphabet")
    n = c0 - 63
    if n < 1:
        raise GraphParseError("byte 0: vertex count must be at least 1")
    if n > MAX_VERTICES:
        raise GraphParseError(f"byte 0: vertex count {n} exceeds cap {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = s[1:]
    if len(body) < nchars:
        raise GraphParseError(
            f"byte {1 + len(body)}: truncated bit section "
            f"(need {nchars} characters, got {len(body)})"
        )
    if len(body) > nchars:
        raise GraphParseError(f"byte {1 + nchars}: unexpected trailing characters")
    bits = 0
    for k, ch in enumerate(body):
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise GraphParseError(f"byte {1 + k}: character {ch!r} outside graph6 alphabet")
        bits = (bits << 6) | v
    pad = 6 * nchars - nbits
    if pad and bits & ((1 << pad) - 1):
        raise GraphParseError(f"byte {nchars}: nonzero padding bits")
    bits >>= pad
    adj = [0] * n
    for k, (i, j) in enumerate(_pair_order(n)):
        if (bits >> (nbits - 1 - k)) & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def encode_graph6(g: Graph) -> str:
    """Encode as canonical short-form graph6."""
    nbits = g.n * (g.n - 1) // 2
    bits = 0
    for i, j in _pair_order(g.n):
        bits = (bits << 1) | ((g.adj[i] >> j) & 1)
    nchars = (nbits + 5) // 6
    bits <<= 6 * nchars - nbits
    chars = [chr(63 + g.n)]
    for k in range(nchars - 1, -1, -1):
        chars.append(chr(63 + ((bits >> (6 * k)) & 63)))
    return "".join(chars)


def parse_adjacency(text: str) -> Graph:
    """Parse a whitespace-separated 0/1 adjacency matrix, one row per line."""
    rows = []
    for line in text.splitlines():
        toks = line.split()
        if toks:
            rows.append(toks)
    if not rows:
        raise GraphParseError("empty adjacency matrix")
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise GraphParseError(f"row {i} has {len(row)} entries, expected {n}")
    entries = [[0] * n for _ in range(n)]
    for i, row in enumerate(rows):
        for j, tok in enumerate(row):
            if tok not in ("0", "1"):
                raise GraphParseError(f"entry ({i}, {j}) is {tok!r}, expected 0 or 1")
            entries[i][j] = int(tok)
    for i in range(n):
        if entries[i][i]:
            raise GraphParseError(f"nonzero diagonal at ({i}, {i})")
        for j in range(i + 1, n):
            if entries[i][j] != entries[j][i]:
                raise GraphParseError(f"asymmetric entries at ({i}, {j}) and ({j}, {i})")
    adj = tuple(
        sum((entries[i][j] << j) for j in range(n)) for i in range(n)
    )
    return Graph(n, adj)


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text: "n; i j; i j; ...".

    Fields are separated by ';' or newlines.  "3;" denotes the empty
    graph on 3 vertices.  Endpoint order within a pair is free; loops
    and duplicate edges are rejected.
    """
    fields = [f.strip() for f in text.replace("\n", ";").split(";")]
    fields = [f for f in fields if f]
    if not fields:
        raise GraphParseError("empty edge list")
    try:
        n = int(fields[0])
    except ValueError:
        raise GraphParseError(f"vertex count {fields[0]!r} is not an integer") from None
    if not 1 <= n <= MAX_VERTICES:
        raise GraphParseError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for f in fields[1:]:
        toks = f.split()
        if len(toks) != 2:
            raise GraphParseError(f"edge field {f!r} is not two integers")
        try:
            a, b = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphParseError(f"edge field {f!r} is not two integers") from None
        if not (0 <= a < n and 0 <= b < n):
            raise GraphParseError(f"edge ({a}, {b}) out of range for n={n}")
        if a == b:
            raise GraphParseError(f"loop at vertex {a}")
        e = (min(a, b), max(a, b))
        if e in seen:
            raise GraphParseError(f"duplicate edge ({e[0]}, {e[1]})")
        seen.add(e)
        edges.append(e)
    return Graph.from_edges(n, edges)


def induced_edge_count(g: Graph, subset: VertexSubset) -> int:
    """Number of edges of g with both endpoints in the subset mask."""
    if subset < 0 or subset >> g.n:
        raise InputError(f"subset mask {subset:#x} out of range for n={g.n}")
    total = 0
    s = subset
    while s:
        i = (s & -s).bit_length() - 1
        s &= s - 1
        total += (g.adj[i] & subset).bit_count()
    return total // 2


def are_isomorphic(g1: Graph, g2: Graph) -> Permutation | None:
    """Exact isomorphism test by backtracking search.

    Returns a permutation p with (i, j) in E1 <=> (p[i], p[j]) in E2,
    or None.  Exponential in the worst case; intended for n <= 10.
    """
    if g1.n != g2.n or g1.m != g2.m:
        return None
    n = g1.n
    d1, d2 = g1.degrees(), g2.degrees()
    if sorted(d1) != sorted(d2):
        return None
    # Most-constrained-first: map high-degree vertices early.
    order = sorted(range(n), key=lambda v: -d1[v])
    mapping = [-1] * n
    used = 0

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == n:
            return True
        u = order[depth]
        # Image of u must match degree and edges to already-mapped vertices.
        required = 0
        placed = 0
        for w in order[:depth]:
            placed |= 1 << mapping[w]
            if (g1.adj[u] >> w) & 1:
                required |= 1 << mapping[w]
        for v in range(n):
            if (used >> v) & 1 or d2[v] != d1[u]:
                continue
            if g2.adj[v] & placed != required:
                continue
            mapping[u] = v
            used |= 1 << v
            if extend(depth + 1):
                return True
            used &= ~(1 << v)
            mapping[u] = -1
        return False

    if not extend(0):
        return None
    return tuple(mapping)


# Lazily built per-n tables for canonical codes: all n! permutations as
# flattened gather indices into an n*n adjacency array, one row per
# upper-triangle pair in column-major order.
_CANON_TABLES: dict[int, tuple[np.ndarray, list[int]]] = {}


def _canon_tables(n: int) -> tuple[np.ndarray, list[int]]:
    cached = _CANON_TABLES.get(n)
    if cached is not None:
        return cached
    perms = np.array(list(permutations(range(n))), dtype=np.intp)
    pairs = _pair_order(n)
    flat = np.stack([perms[:, i] * n + perms[:, j] for i, j in pairs])
    shifts = [len(pairs) - 1 - k for k in range(len(pairs))]
    _CANON_TABLES[n] = (flat, shifts)
    return _CANON_TABLES[n]


def canonical_code(g: Graph) -> str:
    """Canonical form: lexicographically smallest upper-triangle bit
    string over all relabelings.  Equal codes <=> isomorphic graphs.

    Brute force over n! permutations, so capped at n <= 8.
    """
    if g.n > CANONICAL_MAX_VERTICES:
        raise ResourceLimitError(
            f"canonical_code supports n <= {CANONICAL_MAX_VERTICES}, got {g.n}"
        )
    n = g.n
    nbits = n * (n - 1) // 2
    if nbits == 0:
        return ""
    flat, shifts = _canon_tables(n)
    a = np.zeros(n * n, dtype=np.uint32)
    for i, j in g.edges():
        a[i * n + j] = 1
        a[j * n + i] = 1
    bits = a[flat]
    codes = np.zeros(bits.shape[1], dtype=np.uint32)
    for k, sh in enumerate(shifts):
        codes |= bits[k] << sh
    best = int(codes.min())
    return format(best, f"0{nbits}b")


def from_canonical_code(n: int, code: str) -> Graph:
    """Rebuild a graph from an upper-triangle bit string (inverse of
    canonical_code's rendering for any fixed labeling)."""
    nbits = n * (n - 1) // 2
    if len(code) != nbits:
        raise InputError(f"code length {len(code)} != {nbits} for n={n}")
    adj = [0] * n
    for k, (i, j) in enumerate(_pair_order(n)):
        if code[k] == "1":
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(n, tuple(adj))
