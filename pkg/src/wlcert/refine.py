"""Colour refinement (1-WL), C2-equivalence and fractional-isomorphism witnesses."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from wlcert import kernels
from wlcert.graph import Graph, disjoint_union
from wlcert.kernels import PAD


class WitnessError(RuntimeError):
    """A constructed doubly stochastic witness failed verification."""


@dataclass(frozen=True)
class StableColoring:
    """Fixed point of colour refinement.

    ``color[v]`` is a canonical id: ids are ranks of refinement encodings,
    which never mention vertex labels. ``history[c]`` is the encoding
    that produced colour ``c`` in the final round: ``(previous colour,
    sorted neighbour colours)``; in round 0 it is ``(degree,)``.
    ``trace`` lists, per round, the sorted encodings with multiplicities;
    two graphs are C2-equivalent iff their traces coincide.
    """

    color: tuple[int, ...]
    class_sizes: dict
    rounds: int
    history: dict
    trace: tuple

    @property
    def num_colors(self) -> int:
        return len(self.class_sizes)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.color):
            out[c].append(v)
        return out

    def size_multiset(self) -> list[int]:
        return sorted(self.class_sizes.values())


def _encodings(uniq: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(int(v) for v in row if v != PAD) for row in uniq]


def color_refine(g: Graph) -> StableColoring:
    n = g.n
    if n == 0:
        return StableColoring((), {}, 0, {}, ())
    degrees = np.array(g.degrees(), dtype=np.int64)
    colors, uniq, counts = kernels.rank_rows(degrees.reshape(-1, 1))
    encodings = _encodings(uniq)
    trace = [tuple(zip(encodings, counts.tolist()))]
    rounds = 0
    adj = g.adjacency
    while True:
        sig = kernels.wl1_signatures(adj, colors)
        new, uniq, counts = kernels.rank_rows(sig)
        if len(uniq) == len(encodings):
            break
        colors = new
        encodings = _encodings(uniq)
        trace.append(tuple(zip(encodings, counts.tolist())))
        rounds += 1
    color = tuple(int(c) for c in colors)
    sizes = dict(sorted(Counter(color).items()))
    return StableColoring(
        color=color,
        class_sizes=sizes,
        rounds=rounds,
        history=dict(enumerate(encodings)),
        trace=tuple(trace),
    )


def joint_refine(g: Graph, h: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Stable colours of ``g`` and ``h`` under one shared naming (refinement of the disjoint union)."""
    col = color_refine(disjoint_union(g, h)).color
    return col[:g.n], col[g.n:]


def c2_equivalent(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    cg, ch = joint_refine(g, h)
    return Counter(cg) == Counter(ch)


def verify_witness(s: np.ndarray, g: Graph, h: Graph) -> bool:
    """Exact check that ``s`` is doubly stochastic with ``S A = B S``.

    Entries are scaled by the lcm ``L`` of their denominators, so the test
    runs on the integer matrix ``T = L S``: non-negative, row and column sums
    ``L``, and ``T A = B T``.
    """
    n = g.n
    if s.shape != (n, n) or h.n != n:
        return False
    vals = [Fraction(v) for v in s.flat]
    if any(v < 0 for v in vals):
        return False
    scale = math.lcm(*(v.denominator for v in vals)) if vals else 1
    t = np.array([int(v * scale) for v in vals], dtype=object).reshape(n, n)
    if any(r != scale for r in t.sum(axis=1)) or any(c != scale for c in t.sum(axis=0)):
        return False
    if scale * n < 2 ** 62:
        t = t.astype(np.int64)
    a = g.adjacency.astype(t.dtype)
    b = h.adjacency.astype(t.dtype)
    return bool(np.all(t @ a == b @ t))


def fractional_witness(g: Graph, h: Graph) -> Optional[np.ndarray]:
    """Doubly stochastic ``S`` with ``S A = B S`` (rows indexed by ``h``, columns by ``g``), or None.

    ``S[u, w] = 1/m`` when ``u`` and ``w`` carry the same stable colour of
    class size ``m`` in the joint refinement.
    """
    if g.n != h.n:
        return None
    cg, ch = joint_refine(g, h)
    size_g, size_h = Counter(cg), Counter(ch)
    if size_g != size_h:
        return None
    n = g.n
    s = np.empty((n, n), dtype=object)
    for u in range(n):
        for w in range(n):
            s[u, w] = Fraction(1, size_g[cg[w]]) if ch[u] == cg[w] else Fraction(0)
    if not verify_witness(s, g, h):
        raise WitnessError("block witness from colour refinement does not satisfy SA = BS")
    return s
