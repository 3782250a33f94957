"""Finite simple graphs, named generators, BFS distances and graph6 I/O.

Vertices are the integers ``0..n-1``. Every generator fixes its labeling
(documented per function) so that serialized outputs are byte-stable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from wlcert import kernels

UNREACHABLE = -1


class GraphError(ValueError):
    """Invalid graph construction input."""


class Graph6Error(ValueError):
    """Malformed graph6 text."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``; ``edges`` holds pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {(u, v)} is not normalized for n={self.n}")

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)}, g6={write_graph6(self)!r})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def _nbrs(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self._nbrs[x]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, x: int) -> int:
        return len(self._nbrs[x])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self._nbrs]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of 0..n-1")
        return make_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self._nbrs[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def bipartition(self) -> Optional[list[int]]:
        """Side (0/1) of each vertex, or None if the graph has an odd cycle.

        Within each component the smallest vertex is put on side 0.
        """
        side = [-1] * self.n
        for root in range(self.n):
            if side[root] >= 0:
                continue
            side[root] = 0
            stack = [root]
            while stack:
                u = stack.pop()
                for v in self._nbrs[u]:
                    if side[v] < 0:
                        side[v] = 1 - side[u]
                        stack.append(v)
                    elif side[v] == side[u]:
                        return None
        return side


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from an edge list; pairs may come in either order and repeat."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    norm = set()
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} does not have two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        norm.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(norm))


def from_adjacency(a) -> Graph:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphError("adjacency matrix must be square")
    if not np.array_equal(a, a.T):
        raise GraphError("adjacency matrix must be symmetric")
    if np.any(np.diag(a)):
        raise GraphError("adjacency matrix has a nonzero diagonal")
    n = a.shape[0]
    return make_graph(n, [(u, v) for u, v in zip(*np.nonzero(np.triu(a))) if u < v])


# ---------------------------------------------------------------- generators

def path(n: int) -> Graph:
    """P_n: edges ``(i, i+1)``."""
    if n < 1:
        raise GraphError("path needs n >= 1")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """C_n: edges ``(i, i+1 mod n)``."""
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return make_graph(n, combinations(range(n), 2))


def complete_bipartite(p: int, q: int) -> Graph:
    """K_{p,q}: parts ``0..p-1`` and ``p..p+q-1``."""
    if p < 1 or q < 1:
        raise GraphError("complete bipartite graph needs p, q >= 1")
    return make_graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return complete_bipartite(1, k)


def petersen() -> Graph:
    """Outer 5-cycle 0..4, spokes ``i -- i+5``, inner pentagram ``i+5 -- (i+2 mod 5)+5``."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((i + 5, (i + 2) % 5 + 5))
    return make_graph(10, edges)


def rook(m: int) -> Graph:
    """m x m rook's graph K_m x K_m; cell ``(r, c)`` is vertex ``m*r + c``."""
    if m < 1:
        raise GraphError("rook graph needs m >= 1")
    edges = []
    for a, b in combinations(range(m * m), 2):
        if a // m == b // m or a % m == b % m:
            edges.append((a, b))
    return make_graph(m * m, edges)


def shrikhande() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.

    Element ``(a, b)`` is vertex ``4*a + b``.
    """
    gens = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    edges = []
    for a in range(4):
        for b in range(4):
            for da, db in gens:
                edges.append((4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4))
    return make_graph(16, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Vertices of ``h`` are shifted by ``g.n``."""
    shifted = [(u + g.n, v + g.n) for u, v in h.edges]
    return make_graph(g.n + h.n, list(g.edges) + shifted)


def subdivision(g: Graph) -> Graph:
    """Replace every edge by a path of length 2.

    Original vertices keep their labels; the t-th edge in sorted order
    becomes the middle vertex ``g.n + t``.
    """
    edges = []
    for t, (u, v) in enumerate(g.edge_list()):
        w = g.n + t
        edges += [(u, w), (w, v)]
    return make_graph(g.n + g.m, edges)


def complement(g: Graph) -> Graph:
    return make_graph(g.n, [e for e in combinations(range(g.n), 2) if e not in g.edges])


GENERATORS = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "star": star,
    "petersen": petersen,
    "rook": rook,
    "shrikhande": shrikhande,
}


def from_spec(text: str) -> Graph:
    """Build a graph from ``name:arg:arg`` (e.g. ``cycle:8``, ``complete_bipartite:1:4``).

    ``subdivision(...)``, ``complement(...)`` and ``union(..., ...)`` wrap
    other specs, e.g. ``union(cycle:4,complete:1)``.
    """
    text = text.strip()
    for wrapper, fn in (("subdivision(", subdivision), ("complement(", complement)):
        if text.startswith(wrapper) and text.endswith(")"):
            return fn(from_spec(text[len(wrapper):-1]))
    if text.startswith("union(") and text.endswith(")"):
        inner = text[len("union("):-1]
        depth = 0
        for pos, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                return disjoint_union(from_spec(inner[:pos]), from_spec(inner[pos + 1:]))
        raise GraphError(f"union needs two arguments: {text!r}")
    name, *args = text.split(":")
    if name not in GENERATORS:
        raise GraphError(f"unknown generator {name!r}")
    try:
        return GENERATORS[name](*(int(a) for a in args))
    except TypeError as exc:
        raise GraphError(f"bad arguments for {name}: {args}") from exc


# ---------------------------------------------------------------- distances

@dataclass(frozen=True)
class DistanceTable:
    """All-pairs BFS distances. ``matrix`` holds :data:`UNREACHABLE` for pairs in different components."""

    matrix: np.ndarray

    def __call__(self, x: int, y: int) -> Optional[int]:
        d = int(self.matrix[x, y])
        return None if d == UNREACHABLE else d

    @property
    def connected(self) -> bool:
        return bool(np.all(self.matrix != UNREACHABLE))

    def eccentricity(self, x: int) -> Optional[int]:
        """Largest distance from ``x``; None when some vertex is unreachable."""
        row = self.matrix[x]
        if np.any(row == UNREACHABLE):
            return None
        return int(row.max())

    @property
    def diameter(self) -> Optional[int]:
        if self.matrix.shape[0] == 0 or not self.connected:
            return None
        return int(self.matrix.max())

    def layer(self, x: int, i: int) -> list[int]:
        """Vertices at distance exactly ``i`` from ``x``."""
        return [int(v) for v in np.flatnonzero(self.matrix[x] == i)]


def distances(g: Graph) -> DistanceTable:
    m = kernels.bfs_distances(g.adjacency)
    m.setflags(write=False)
    return DistanceTable(m)


# ---------------------------------------------------------------- isomorphism oracle

def find_isomorphism(g: Graph, h: Graph) -> Optional[list[int]]:
    """Plain backtracking search; returns ``phi`` with ``g.relabel(phi) == h`` or None.

    Candidates are restricted by degree and by the sorted degrees of the
    neighbours. Meant as an independent check on small graphs.
    """
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    n = g.n

    def inv(x, gr):
        return (gr.degree(x), tuple(sorted(gr.degree(y) for y in gr.neighbors(x))))

    gi = [inv(x, g) for x in range(n)]
    hi = [inv(x, h) for x in range(n)]
    if sorted(gi) != sorted(hi):
        return None
    # visit vertices so that each one has as many already-mapped neighbours as possible
    order: list[int] = []
    placed = set()
    while len(order) < n:
        best = max(
            (x for x in range(n) if x not in placed),
            key=lambda x: (sum(y in placed for y in g.neighbors(x)), g.degree(x), -x),
        )
        order.append(best)
        placed.add(best)
    phi = [-1] * n
    used = [False] * n

    def extend(t: int) -> bool:
        if t == n:
            return True
        x = order[t]
        for y in range(n):
            if used[y] or hi[y] != gi[x]:
                continue
            ok = True
            for z in order[:t]:
                if g.has_edge(x, z) != h.has_edge(y, phi[z]):
                    ok = False
                    break
            if ok:
                phi[x] = y
                used[y] = True
                if extend(t + 1):
                    return True
                used[y] = False
                phi[x] = -1
        return False

    return list(phi) if extend(0) else None


# ---------------------------------------------------------------- graph6

def _size_header(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph) -> str:
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    data = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _size_header(g.n) + data


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    if any(not (63 <= ord(ch) <= 126) for ch in s):
        raise Graph6Error(f"graph6 bytes must lie in 63..126: {text!r}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] == 63:
        if len(vals) >= 2 and vals[1] == 63:
            if len(vals) < 8:
                raise Graph6Error("truncated 8-byte size header")
            n = 0
            for v in vals[2:8]:
                n = (n << 6) | v
            body = vals[8:]
        else:
            if len(vals) < 4:
                raise Graph6Error("truncated 4-byte size header")
            n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
            body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    nbits = n * (n - 1) // 2
    if len(body) != -(-nbits // 6):
        raise Graph6Error(f"expected {-(-nbits // 6)} data bytes for n={n}, got {len(body)}")
    bits = [(v >> (5 - k)) & 1 for v in body for k in range(6)]
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    edges = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                edges.append((i, j))
            t += 1
    return make_graph(n, edges)


def read_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


# ---------------------------------------------------------------- JSON edge list

def to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list()]}


def from_json_obj(obj) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphError('JSON graph must be an object {"n": int, "edges": [[u, v], ...]}')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError("JSON graph field 'n' must be an integer")
    return make_graph(n, obj["edges"])


def parse_json_graph(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    return from_json_obj(obj)
