"""Exact spectral comparisons: characteristic polynomials and walk counts."""
from __future__ import annotations

from functools import lru_cache

from wlcert.graph import Graph, complement
from wlcert.linalg import CharPoly, char_poly


@lru_cache(maxsize=8192)
def adjacency_char_poly(g: Graph) -> CharPoly:
    if g.n == 0:
        return CharPoly((1,))
    return char_poly(g.adjacency)


def cospectral(g: Graph, h: Graph) -> bool:
    # equal coefficient sequences force equal order
    return adjacency_char_poly(g) == adjacency_char_poly(h)


def generalized_cospectral(g: Graph, h: Graph) -> bool:
    return cospectral(g, h) and cospectral(complement(g), complement(h))


def walk_vectors(g: Graph, length: int) -> list[list[int]]:
    """``A^i 1`` for ``i = 0..length`` as Python-int lists (iterated matrix-vector products)."""
    vec = [1] * g.n
    out = [vec]
    nbrs = [g.neighbors(x) for x in range(g.n)]
    for _ in range(length):
        vec = [sum(vec[y] for y in nb) for nb in nbrs]
        out.append(vec)
    return out


def walk_counts(g: Graph, length: int) -> tuple[int, ...]:
    """Total walk counts ``w_i = 1^T A^i 1`` for ``i = 0..length``."""
    if length < 0:
        raise ValueError("length must be non-negative")
    return tuple(sum(v) for v in walk_vectors(g, length))


def walk_equivalent(g: Graph, h: Graph) -> bool:
    """Equal walk counts for every length.

    Each sequence satisfies a linear recurrence given by its characteristic
    polynomial, so the generating functions are rational with denominators of
    degree at most ``n_g`` and ``n_h``. Agreement on the first ``n_g + n_h``
    terms therefore forces agreement everywhere.
    """
    window = g.n + h.n
    return walk_counts(g, window - 1) == walk_counts(h, window - 1) if window else True
