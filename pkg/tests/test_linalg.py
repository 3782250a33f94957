import random
from fractions import Fraction

import numpy as np
import pytest

from wlcert import graph as G
from wlcert import linalg as L
from wlcert.control import walk_matrix

from conftest import random_graph


def cofactor_det(m):
    """Laplace expansion along the first row; independent of elimination."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def test_det_examples():
    assert L.det(L.identity(3)) == 1
    assert L.det(walk_matrix(G.path(3))) == 0
    assert L.det([[3, 7], [2, 5]]) == 1
    assert L.det([[0, 1], [1, 0]]) == -1


def test_det_matches_cofactor_oracle():
    rng = random.Random(7)
    for trial in range(10_000):
        n = rng.randint(1, 5)
        m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        assert L.det(m) == cofactor_det(m), m


def test_det_rejects_non_square():
    with pytest.raises(L.DimensionError):
        L.det([[1, 2, 3], [4, 5, 6]])


def test_char_poly_examples():
    assert L.char_poly(G.star(4).adjacency).coeffs == (1, 0, -4, 0, 0, 0)
    assert L.char_poly(G.complete(1).adjacency).coeffs == (1, 0)
    assert L.char_poly(G.cycle(4).adjacency).coeffs == (1, 0, -4, 0, 0)
    c4k1 = G.disjoint_union(G.cycle(4), G.complete(1))
    assert L.char_poly(c4k1.adjacency) == L.char_poly(G.star(4).adjacency)
    assert str(L.char_poly(G.star(4).adjacency)) == "x^5 - 4x^3"


def test_char_poly_matches_determinant_at_integers():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 7)
        g = random_graph(n, 0.5, rng)
        a = g.adjacency.astype(np.int64)
        t = rng.randint(-6, 6)
        cp = L.char_poly(a)
        assert cp.degree == n and cp.coeffs[0] == 1 and cp.coeffs[1] == 0
        assert cp(t) == L.det(t * np.eye(n, dtype=np.int64) - a)
        if n >= 2:
            assert cp.coeffs[2] == -g.m


def test_char_poly_general_integer_matrices():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 5)
        m = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        t = rng.randint(-4, 4)
        assert L.char_poly(m)(t) == cofactor_det((t * np.eye(n, dtype=np.int64) - m).tolist())


def test_rat_inverse_examples():
    inv = L.rat_inverse([[2, 0], [0, 2]])
    assert inv.tolist() == [[Fraction(1, 2), 0], [0, Fraction(1, 2)]]
    assert L.rat_inverse([[1, 1], [0, 1]]).tolist() == [[1, -1], [0, 1]]
    with pytest.raises(L.SingularMatrixError):
        L.rat_inverse([[1, 2], [2, 4]])


def test_rat_inverse_is_exact():
    rng = random.Random(3)
    checked = 0
    while checked < 200:
        n = rng.randint(1, 6)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        if L.det(m) == 0:
            continue
        inv = L.rat_inverse(m)
        prod = L.mat_mul(inv, L.int_matrix(m))
        assert np.all(prod == L.identity(n))
        assert all(Fraction(v).denominator > 0 for v in inv.flat)
        checked += 1


def test_products_and_powers():
    a = L.int_matrix(G.cycle(6).adjacency)
    ones = L.all_ones_vector(6)
    assert L.mat_mul(L.mat_pow(a, 3), ones).ravel().tolist() == [8] * 6
    assert np.all(L.mat_pow(a, 0) == L.identity(6))
    k3 = L.int_matrix(G.complete(3).adjacency)
    one = L.all_ones_vector(3)
    assert L.mat_mul(L.transpose(one), L.mat_mul(L.mat_pow(k3, 2), one))[0, 0] == 12
    with pytest.raises(L.DimensionError):
        L.mat_mul(L.int_matrix([[1, 2]]), L.int_matrix([[1, 2]]))


def test_big_integer_entries_do_not_overflow():
    a = L.int_matrix(G.complete(40).adjacency)
    p = L.mat_pow(a, 30)
    assert p[0, 1] == (39 ** 30 - (-1) ** 30) // 40
    assert L.mat_mul(L.mat_mul(a, a), a).tolist() == L.mat_mul(a, L.mat_mul(a, a)).tolist()


def test_scaled_solve_matches_rational_inverse():
    rng = random.Random(17)
    for _ in range(400):
        n, m = rng.randint(1, 6), rng.randint(1, 3)
        a = L.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        b = L.from_rows([[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)])
        if L.det(a) == 0:
            with pytest.raises(L.SingularMatrixError):
                L.scaled_solve(a, b)
            continue
        d, x = L.scaled_solve(a, b)
        assert abs(d) == abs(L.det(a))
        assert np.all(a @ x == d * b)
        want = L.rat_inverse(a) @ b
        assert all(Fraction(int(u), d) == v for u, v in zip(x.flat, want.flat))


def test_scaled_solve_on_walk_matrices():
    rng = random.Random(5)
    done = 0
    while done < 5:
        g = random_graph(9, 0.45, rng)
        w = walk_matrix(g)
        if L.det(w) == 0:
            continue
        d, x = L.scaled_solve(w, L.identity(9))
        assert np.all(w @ x == d * L.identity(9))
        done += 1
