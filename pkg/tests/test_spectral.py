import random
from itertools import product

import pytest

from wlcert import graph as G
from wlcert import spectral as S
from wlcert.corpus import labeled_graphs
from wlcert.linalg import det, from_rows

from conftest import random_graph, random_perm


def enumerate_walks(g, length):
    """Walk count by listing vertex sequences; exponential, tiny n only."""
    if g.n == 0:
        return 0
    total = 0
    for seq in product(range(g.n), repeat=length + 1):
        if all(g.has_edge(seq[t], seq[t + 1]) for t in range(length)):
            total += 1
    return total


def test_walk_counts_examples(named):
    assert S.walk_counts(named["C6"], 3) == (6, 12, 24, 48)
    assert S.walk_counts(named["K14"], 2) == (5, 8, 20)
    assert S.walk_counts(named["C4+K1"], 2) == (5, 8, 16)
    assert S.walk_counts(G.Graph(0), 3) == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        S.walk_counts(named["C6"], -1)


def test_walk_counts_match_enumeration():
    rng = random.Random(11)
    for n in range(1, 6):
        for _ in range(6):
            g = random_graph(n, 0.5, rng)
            counts = S.walk_counts(g, 4)
            for i in range(5):
                assert counts[i] == enumerate_walks(g, i)


def test_char_poly_examples(named):
    assert str(S.adjacency_char_poly(named["K14"])) == "x^5 - 4x^3"
    assert str(S.adjacency_char_poly(named["C4+K1"])) == "x^5 - 4x^3"
    assert S.cospectral(named["K14"], named["C4+K1"])
    assert not S.generalized_cospectral(named["K14"], named["C4+K1"])
    assert S.cospectral(named["shrikhande"], named["rook4"])
    assert S.generalized_cospectral(named["shrikhande"], named["rook4"])
    assert S.adjacency_char_poly(G.Graph(0)).coeffs == (1,)


def test_char_poly_matches_determinant_at_integers(rng):
    for _ in range(20):
        g = random_graph(rng.randint(1, 7), 0.5, rng)
        poly = S.adjacency_char_poly(g)
        for t in (-2, 0, 3):
            m = from_rows([[(t if i == j else 0) - int(g.adjacency[i, j]) for j in range(g.n)]
                           for i in range(g.n)])
            assert poly(t) == det(m)


def test_walk_equivalence_examples(named):
    assert not S.walk_equivalent(named["K14"], named["C4+K1"])
    assert S.walk_equivalent(named["C6"], named["2K3"])
    assert S.walk_equivalent(named["shrikhande"], named["rook4"])
    assert not S.walk_equivalent(named["P3"], named["P4"])
    assert S.walk_equivalent(G.Graph(0), G.Graph(0))


def test_walk_window_is_long_enough():
    # checking agreement far past the window never flips a verdict
    rng = random.Random(3)
    gs = list(labeled_graphs(4))
    for _ in range(300):
        g, h = rng.sample(gs, 2)
        long = S.walk_counts(g, 20) == S.walk_counts(h, 20)
        assert S.walk_equivalent(g, h) == long


def test_invariance_under_relabelling(rng):
    for _ in range(20):
        g = random_graph(rng.randint(1, 8), 0.4, rng)
        h = g.relabel(random_perm(g.n, rng))
        assert S.cospectral(g, h) and S.generalized_cospectral(g, h) and S.walk_equivalent(g, h)


def test_generalized_cospectral_implies_walk_equivalent():
    gs = list(labeled_graphs(5))
    by_poly = {}
    for g in gs:
        by_poly.setdefault(S.adjacency_char_poly(g).coeffs, []).append(g)
    rng = random.Random(8)
    seen = 0
    for group in by_poly.values():
        if len(group) < 2:
            continue
        for _ in range(5):
            g, h = rng.sample(group, 2)
            if S.generalized_cospectral(g, h):
                seen += 1
                assert S.walk_equivalent(g, h)
    assert seen > 0
