"""Walk matrices, controllability and isomorphism certificates for controllable graphs."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from wlcert.graph import Graph
from wlcert.linalg import SingularMatrixError, det, from_rows, scaled_solve
from wlcert.spectral import walk_vectors

ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not-isomorphic"
INAPPLICABLE = "inapplicable"


class CertificateError(RuntimeError):
    """Internal inconsistency while building an isomorphism certificate."""


def walk_matrix(g: Graph) -> np.ndarray:
    """``n x n`` object matrix whose column j is ``A^j 1``; entry (i, j) counts j-walks from i."""
    if g.n < 1:
        raise ValueError("walk matrix needs at least one vertex")
    cols = walk_vectors(g, g.n - 1)
    return from_rows([[cols[j][i] for j in range(g.n)] for i in range(g.n)])


def is_controllable(g: Graph) -> bool:
    return g.n >= 1 and det(walk_matrix(g)) != 0


def walk_row_matching(g: Graph, h: Graph) -> Optional[list[int]]:
    """Vertex map ``phi`` with ``W_h[phi(x)] == W_g[x]`` for all x, or None.

    Rows are the length-n walk-count prefixes; by Cayley-Hamilton later
    columns are combinations of these, so the prefix fixes the full row.
    Equal rows are matched in increasing vertex order.
    """
    if g.n != h.n:
        raise ValueError(f"walk row matching needs equal orders ({g.n} vs {h.n})")
    if g.n == 0:
        return []
    wg, wh = walk_matrix(g), walk_matrix(h)
    buckets = defaultdict(list)
    for y in range(h.n):
        buckets[tuple(wh[y])].append(y)
    phi = [-1] * g.n
    for x in range(g.n):
        pool = buckets.get(tuple(wg[x]))
        if not pool:
            return None
        phi[x] = pool.pop(0)
    return phi


def permutation_matrix(phi) -> np.ndarray:
    """``P[phi(x), x] = 1``, so ``P A P^T`` is the adjacency of the relabelled graph."""
    n = len(phi)
    p = np.zeros((n, n), dtype=object)
    for x, y in enumerate(phi):
        p[y, x] = 1
    return p


def _as_permutation(dq: np.ndarray, d: int) -> Optional[list[int]]:
    """Read ``phi`` off ``d * Q`` when ``Q`` is a permutation matrix."""
    n = dq.shape[0]
    phi = [-1] * n
    for y in range(n):
        for x in range(n):
            v = dq[y, x]
            if v == d:
                if phi[x] >= 0:
                    return None
                phi[x] = y
            elif v != 0:
                return None
    return phi if all(v >= 0 for v in phi) and sorted(phi) == list(range(n)) else None


@dataclass
class IsoCertificate:
    verdict: str
    permutation: Optional[list[int]] = None
    checks: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "permutation": self.permutation,
                "checks": dict(sorted(self.checks.items()))}


def controllable_iso(g: Graph, h: Graph) -> IsoCertificate:
    """Decide isomorphism of two controllable graphs through ``Q = W_h W_g^{-1}``.

    ``Q`` is computed exactly as the integer matrix ``d Q`` with
    ``d = +-det(W_g)``, so every identity below is checked in integers.

    If an isomorphism ``P`` exists then ``P W_g = W_h`` forces ``P = Q``, so
    ``Q`` is the only candidate and a failed check is a proof of
    non-isomorphism.
    """
    cg, ch = is_controllable(g), is_controllable(h)
    if not (cg and ch):
        return IsoCertificate(INAPPLICABLE, checks={"controllable_a": cg, "controllable_b": ch})
    if g.n != h.n:
        return IsoCertificate(NOT_ISOMORPHIC, checks={"orders_equal": False},
                              note="orders differ")
    wg, wh = walk_matrix(g), walk_matrix(h)
    # Q W_g = W_h, solved as W_g^T Q^T = W_h^T; dq = d * Q stays integral
    try:
        d, dqt = scaled_solve(wg.T, wh.T)
    except SingularMatrixError as exc:
        raise CertificateError("walk matrix singular although det != 0") from exc
    dq = dqt.T
    a = g.adjacency.astype(object)
    b = h.adjacency.astype(object)
    ones = np.ones((g.n, 1), dtype=object)
    checks = {
        "QAQt=B": bool(np.all(dq @ a @ dq.T == d * d * b)),
        "Q1=1": bool(np.all(dq @ ones == d * ones)),
    }
    phi = _as_permutation(dq, d)
    checks["Q_is_permutation"] = phi is not None

    matched = walk_row_matching(g, h)
    if matched is not None:
        if phi is None or matched != phi:
            raise CertificateError("walk rows match but Q is not the matching permutation")
    if phi is None:
        checks["PW=W'"] = False
        return IsoCertificate(NOT_ISOMORPHIC, checks=checks,
                              note="Q = W_h W_g^-1 is the unique candidate and is not a permutation")
    p = permutation_matrix(phi)
    checks["PW=W'"] = bool(np.all(p @ wg == wh))
    checks["Q=P"] = bool(np.all(dq == d * p))
    checks["PAPt=B"] = bool(np.all(p @ a @ p.T == b))
    if all(checks.values()):
        return IsoCertificate(ISOMORPHIC, permutation=phi, checks=checks)
    return IsoCertificate(NOT_ISOMORPHIC, checks=checks,
                          note="Q is a permutation but does not carry A onto B")
