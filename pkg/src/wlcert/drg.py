"""Distance-regularized graphs: local arrays, classification, intersection numbers.

Conventions
-----------
* ``classify`` rejects disconnected graphs and the empty graph. ``K_1`` is
  distance-regular with the empty array ``{;}`` (diameter 0).
* For a distance-biregular graph the part called ``X'`` is the one with the
  larger valency; on equal valencies the lexicographically larger
  ``(b; c)`` array wins. Pair comparisons treat ``{iota', iota''}`` as an
  unordered pair anyway.
* Recurrences index ``p[i, j, k]`` with ``k`` the distance between the two
  base vertices; out-of-range terms contribute 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from wlcert import kernels
from wlcert.graph import DistanceTable, Graph, distances
from wlcert.spectral import adjacency_char_poly, cospectral

DISTANCE_REGULAR = "distance-regular"
DISTANCE_BIREGULAR = "distance-biregular"
OTHER = "distance-regularized-other"
NOT_REGULARIZED = "not-distance-regularized"


class DisconnectedGraphError(ValueError):
    pass


class InvalidArrayError(ValueError):
    """An intersection array whose recurrence produces non-integral or negative numbers."""


class ClassificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class LocalArray:
    vertex: int
    eccentricity: int
    regularized: bool
    c: tuple[int, ...] = ()
    a: tuple[int, ...] = ()
    b: tuple[int, ...] = ()

    def key(self) -> tuple:
        return (self.c, self.a, self.b)


@dataclass(frozen=True)
class IntersectionArray:
    """``{b_0, ..., b_{d-1}; c_1, ..., c_d}``."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.b) != len(self.c):
            raise InvalidArrayError("b and c parts must have the same length")
        if any(v < 0 for v in self.b + self.c):
            raise InvalidArrayError("array entries must be non-negative")

    @property
    def d(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0] if self.b else 0

    def b_(self, i: int) -> int:
        return self.b[i] if 0 <= i < self.d else 0

    def c_(self, i: int) -> int:
        return self.c[i - 1] if 1 <= i <= self.d else 0

    def a_(self, i: int) -> int:
        if not 0 <= i <= self.d:
            return 0
        return self.k - self.b_(i) - self.c_(i)

    def to_json(self) -> dict:
        return {"b": list(self.b), "c": list(self.c)}

    def __str__(self):
        return "{" + ",".join(map(str, self.b)) + "; " + ",".join(map(str, self.c)) + "}"

    @classmethod
    def from_local(cls, la: LocalArray) -> IntersectionArray:
        d = la.eccentricity
        return cls(tuple(la.b[:d]), tuple(la.c[1:d + 1]))


@dataclass(frozen=True)
class BiregularArrays:
    iota1: IntersectionArray
    iota2: IntersectionArray
    p: int
    q: int

    @property
    def k(self) -> int:
        return self.iota1.k

    @property
    def l(self) -> int:  # noqa: E743
        return self.iota2.k

    def parity_rule_holds(self) -> bool:
        k, l = self.k, self.l
        ok1 = all(self.iota1.b_(i) + self.iota1.c_(i) == (k if i % 2 == 0 else l)
                  for i in range(self.iota1.d))
        ok2 = all(self.iota2.b_(i) + self.iota2.c_(i) == (l if i % 2 == 0 else k)
                  for i in range(self.iota2.d))
        return ok1 and ok2

    def unordered(self) -> frozenset:
        return frozenset([self.iota1, self.iota2])

    def to_json(self) -> dict:
        return {"iota1": self.iota1.to_json(), "iota2": self.iota2.to_json(),
                "k": self.k, "l": self.l}


@dataclass(frozen=True)
class Classification:
    kind: str
    payload: Union[IntersectionArray, BiregularArrays, None] = None
    parts: Optional[tuple[int, ...]] = None  # vertex -> 0 (X') / 1 (X'') for biregular graphs

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if isinstance(self.payload, IntersectionArray):
            out["array"] = self.payload.to_json()
        elif isinstance(self.payload, BiregularArrays):
            out["arrays"] = self.payload.to_json()
        return out


def _require_connected(g: Graph, dist: DistanceTable):
    if g.n == 0 or not dist.connected:
        raise DisconnectedGraphError("distance-regularity needs a connected, non-empty graph")


def local_array(g: Graph, x: int, dist: Optional[DistanceTable] = None) -> LocalArray:
    """Count ``c_i(x,y), a_i(x,y), b_i(x,y)`` over every ``y`` by BFS layers."""
    dist = dist or distances(g)
    _require_connected(g, dist)
    row = dist.matrix[x]
    ecc = int(row.max())
    c, a, b = [], [], []
    regular = True
    for i in range(ecc + 1):
        triples = set()
        for y in np.flatnonzero(row == i):
            nb = [row[z] for z in g.neighbors(int(y))]
            triples.add((nb.count(i - 1), nb.count(i), nb.count(i + 1)))
        if len(triples) != 1:
            regular = False
            break
        (ci, ai, bi), = triples
        c.append(ci)
        a.append(ai)
        b.append(bi)
    if not regular:
        return LocalArray(x, ecc, False)
    return LocalArray(x, ecc, True, tuple(c), tuple(a), tuple(b))


def classify(g: Graph) -> Classification:
    dist = distances(g)
    _require_connected(g, dist)
    arrays = [local_array(g, x, dist) for x in range(g.n)]
    if not all(la.regularized for la in arrays):
        return Classification(NOT_REGULARIZED)
    keys = {la.key() for la in arrays}
    if len(keys) == 1:
        return Classification(DISTANCE_REGULAR, IntersectionArray.from_local(arrays[0]))
    side = g.bipartition()
    if side is None:
        return Classification(OTHER)
    per_side = [{arrays[x].key() for x in range(g.n) if side[x] == s} for s in (0, 1)]
    if any(len(ks) != 1 for ks in per_side):
        return Classification(OTHER)
    reps = [next(arrays[x] for x in range(g.n) if side[x] == s) for s in (0, 1)]
    iotas = [IntersectionArray.from_local(la) for la in reps]
    if (iotas[1].k, iotas[1].b, iotas[1].c) > (iotas[0].k, iotas[0].b, iotas[0].c):
        iotas.reverse()
        side = [1 - s for s in side]
    if any(any(la.a) for la in reps):
        raise ClassificationError("bipartite graph with a nonzero a_i")
    arr = BiregularArrays(iotas[0], iotas[1], p=side.count(0), q=side.count(1))
    if not arr.parity_rule_holds() or arr.k * arr.p != arr.l * arr.q:
        raise ClassificationError(f"biregular arrays violate the parity/edge-count rules: {arr}")
    return Classification(DISTANCE_BIREGULAR, arr, tuple(side))


# ------------------------------------------------------------ recurrences

def _exact(value: Fraction, where: str) -> int:
    if value.denominator != 1 or value < 0:
        raise InvalidArrayError(f"{where} = {value} is not a non-negative integer")
    return int(value)


def _fill(x_arr: IntersectionArray, y_arr_of_k, size: int, with_a: bool) -> np.ndarray:
    """Intersection numbers seen from a base vertex with array ``x_arr``.

    ``y_arr_of_k(k)`` gives the array of a vertex at distance k from the base.
    """
    dx = x_arr.d
    p = np.zeros((size, size, size), dtype=np.int64)
    for k in range(dx + 1):
        ya = y_arr_of_k(k)
        dy = ya.d
        for i in range(dx + 1):
            p[i, 0, k] = int(i == k)
        for j in range(dy + 1):
            p[0, j, k] = int(j == k)
        if dy >= 1:
            for i in range(dx + 1):
                if k == i + 1:
                    p[i, 1, k] = x_arr.c_(k)
                elif k == i and with_a:
                    p[i, 1, k] = x_arr.a_(k)
                elif k == i - 1:
                    p[i, 1, k] = x_arr.b_(k)
        for j in range(1, dy):
            cy = ya.c_(j + 1)
            if cy == 0:
                raise InvalidArrayError(f"c_{j + 1} = 0 in {ya}")
            for i in range(dx + 1):
                total = Fraction(0)
                if i >= 1:
                    total += int(p[i - 1, j, k]) * x_arr.b_(i - 1)
                if with_a:
                    total += int(p[i, j, k]) * (x_arr.a_(i) - ya.a_(j))
                if i + 1 <= dx:
                    total += int(p[i + 1, j, k]) * x_arr.c_(i + 1)
                total -= int(p[i, j - 1, k]) * ya.b_(j - 1)
                p[i, j + 1, k] = _exact(total / cy, f"p[{i},{j + 1},{k}]")
    return p


def drg_pnums(iota: IntersectionArray) -> np.ndarray:
    """``p[i, j, k]`` for a distance-regular graph with array ``iota`` (shape ``(d+1,)*3``)."""
    bad = [i for i in range(iota.d + 1) if iota.a_(i) < 0]
    if bad:
        raise InvalidArrayError(f"a_{bad[0]} < 0 in {iota}")
    return _fill(iota, lambda k: iota, iota.d + 1, with_a=True)


def dbrg_pnums(arrays: BiregularArrays) -> tuple[np.ndarray, np.ndarray]:
    """``(p', p'')``: numbers for base vertices in ``X'`` and in ``X''``.

    A vertex at even distance lies in the base vertex's part, at odd distance
    in the other part; that decides which array feeds the ``j`` side of the
    recurrence. Both tensors have shape ``(D+1,)*3`` with ``D = max(d', d'')``.
    """
    if not arrays.parity_rule_holds():
        raise InvalidArrayError(f"b_i + c_i does not alternate between k and l in {arrays}")
    one, two = arrays.iota1, arrays.iota2
    size = max(one.d, two.d) + 1
    p1 = _fill(one, lambda k: one if k % 2 == 0 else two, size, with_a=False)
    p2 = _fill(two, lambda k: two if k % 2 == 0 else one, size, with_a=False)
    return p1, p2


def recurrence_pnums(cl: Classification) -> list[np.ndarray]:
    if cl.kind == DISTANCE_REGULAR:
        return [drg_pnums(cl.payload)]
    if cl.kind == DISTANCE_BIREGULAR:
        return list(dbrg_pnums(cl.payload))
    raise ValueError(f"no intersection numbers for kind {cl.kind!r}")


def count_pnums(g: Graph, cl: Optional[Classification] = None) -> list[np.ndarray]:
    """Brute-force ``|G_i(x) & G_j(y)|`` per distance ``k = d(x, y)``, checked constant.

    One tensor for a distance-regular graph; ``[p', p'']`` (base vertex in
    ``X'`` / ``X''``) for a distance-biregular one, shaped like the
    recurrence output.
    """
    cl = cl or classify(g)
    dist = distances(g)
    if cl.kind == DISTANCE_REGULAR:
        size = cl.payload.d + 1
        groups = [np.ones(g.n, dtype=bool)]
    elif cl.kind == DISTANCE_BIREGULAR:
        size = max(cl.payload.iota1.d, cl.payload.iota2.d) + 1
        parts = np.array(cl.parts)
        groups = [parts == 0, parts == 1]
    else:
        raise ValueError(f"no intersection numbers for kind {cl.kind!r}")
    counts = kernels.layer_counts(dist.matrix, size - 1)
    out = []
    for mask in groups:
        p = np.zeros((size, size, size), dtype=np.int64)
        seen = np.zeros(size, dtype=bool)
        for x in np.flatnonzero(mask):
            for y in range(g.n):
                k = dist.matrix[x, y]
                if not seen[k]:
                    p[:, :, k] = counts[x, y]
                    seen[k] = True
                elif not np.array_equal(p[:, :, k], counts[x, y]):
                    raise ClassificationError(f"|G_i(x) & G_j(y)| not constant at distance {k}")
        out.append(p)
    return out


# ------------------------------------------------------------ spectral relations

def semiregular_degrees(g: Graph, side=None) -> tuple[int, int, int, int]:
    """``(k, l, p, q)`` for a bipartite semiregular graph with parts ``side == 0`` / ``side == 1``."""
    side = list(side) if side is not None else g.bipartition()
    if side is None or len(side) != g.n:
        raise ValueError("graph is not bipartite")
    for u, v in g.edges:
        if side[u] == side[v]:
            raise ValueError("given sides are not a bipartition")
    degs = g.degrees()
    part = [[degs[x] for x in range(g.n) if side[x] == s] for s in (0, 1)]
    if not part[0] or not part[1] or len(set(part[0])) != 1 or len(set(part[1])) != 1:
        raise ValueError("graph is not bipartite semiregular for this bipartition")
    return part[0][0], part[1][0], len(part[0]), len(part[1])


def _even_odd(coeffs: tuple[int, ...]):
    """Split ``f(x) = E(x^2) + x O(x^2)`` and return evaluators for E and O."""
    n = len(coeffs) - 1
    even = {}
    odd = {}
    for i, c in enumerate(coeffs):
        p = n - i
        (even if p % 2 == 0 else odd)[p // 2] = c

    def ev(poly, t):
        return sum(c * t ** e for e, c in poly.items())

    return (lambda t: ev(even, t)), (lambda t: ev(odd, t))


def semiregular_spectral_check(g: Graph, h: Graph, side_g=None, side_h=None) -> dict:
    """Degree relations between two cospectral bipartite semiregular graphs.

    Checks exactly: equal order, equal edge count (from the ``x^{n-2}``
    coefficient), ``kp = lq = |E|`` on both sides, and that ``+-sqrt(kl)`` is
    a root of the common characteristic polynomial, i.e. ``E(kl) = O(kl) = 0``
    for the even/odd split. Equal largest roots give ``kl = k'l'``; then the
    degrees agree or are swapped.
    """
    k, l, p, q = semiregular_degrees(g, side_g)
    kb, lb, pb, qb = semiregular_degrees(h, side_h)
    cp_g, cp_h = adjacency_char_poly(g), adjacency_char_poly(h)
    is_cospectral = cp_g == cp_h
    if not is_cospectral:
        raise ValueError("semiregular spectral check needs cospectral graphs")
    even, odd = _even_odd(cp_g.coeffs)
    edges = -cp_g.coeffs[2] if len(cp_g.coeffs) > 2 else 0
    checks = {
        "orders_equal": p + q == pb + qb,
        "edge_count_from_charpoly": edges == g.m == h.m,
        "kp=lq=|E|": k * p == l * q == g.m and kb * pb == lb * qb == h.m,
        "sqrt(kl)_is_root": even(k * l) == 0 and odd(k * l) == 0,
        "sqrt(kl)_is_root_other": even(kb * lb) == 0 and odd(kb * lb) == 0,
        "kl=k'l'": k * l == kb * lb,
    }
    same = (k, l) == (kb, lb)
    swapped = k == lb and l == kb
    return {
        "k": k, "l": l, "p": p, "q": q,
        "k_bar": kb, "l_bar": lb, "p_bar": pb, "q_bar": qb,
        "checks": checks,
        "degrees_equal": same,
        "degrees_swapped": swapped and not same,
        "vacuous": same,
        "holds": all(checks.values()) and (same or swapped),
    }


def dbrg_cospectral_iff_arrays(g: Graph, h: Graph) -> tuple[bool, bool]:
    """``(cospectral, same unordered pair of arrays)`` for two distance-biregular graphs."""
    cg, ch = classify(g), classify(h)
    if cg.kind != DISTANCE_BIREGULAR or ch.kind != DISTANCE_BIREGULAR:
        raise ValueError("both graphs must be distance-biregular")
    return cospectral(g, h), cg.payload.unordered() == ch.payload.unordered()
