"""2-WL stabilisation, coherent configurations and intersection equivalence."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from wlcert import kernels
from wlcert.graph import Graph


class CoherenceError(RuntimeError):
    """A computed pair partition violates the coherent-configuration axioms."""


DENSE_LIMIT = 1 << 24  # largest s**3 materialised as a dense tensor
JSON_DENSE_RANK = 64  # to_json writes the dense "p" up to this rank, sparse "pEntries" above


@dataclass(frozen=True, eq=False)
class CoherentConfiguration:
    """Partition of ``X x X`` into ``rank`` relations.

    ``rel[x, y]`` is the relation index of the ordered pair. The intersection
    number ``p[i, j, k]`` counts ``z`` with ``(x, z)`` in relation i and
    ``(z, y)`` in relation j for any ``(x, y)`` in relation k. The nonzero
    numbers are held in ``entries``, an ``(m, 4)`` array of rows
    ``(i, j, k, value)`` sorted lexicographically; at most ``rank * n`` rows
    exist, whereas the dense tensor has ``rank ** 3`` cells. ``diagonal`` and
    ``edge_rels`` are the index sets whose unions give the diagonal and the
    edge set.
    """

    n: int
    rank: int
    rel: np.ndarray
    entries: np.ndarray
    diagonal: tuple[int, ...]
    edge_rels: tuple[int, ...]
    converse: tuple[int, ...]
    history: Optional[tuple] = field(default=None, repr=False)

    @cached_property
    def p(self) -> np.ndarray:
        """Dense ``(rank, rank, rank)`` view of the intersection numbers."""
        s = self.rank
        if s ** 3 > DENSE_LIMIT:
            raise CoherenceError(f"rank {s} is too large for a dense intersection tensor")
        p = np.zeros((s, s, s), dtype=np.int64)
        e = self.entries
        p[e[:, 0], e[:, 1], e[:, 2]] = e[:, 3]
        p.setflags(write=False)
        return p

    @cached_property
    def numbers(self) -> dict:
        """``{(i, j, k): value}`` for the nonzero intersection numbers."""
        return {(i, j, k): v for i, j, k, v in self.entries.tolist()}

    def sizes(self) -> list[int]:
        return np.bincount(self.rel.ravel(), minlength=self.rank).tolist()

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "rank": self.rank,
            "relColor": self.rel.tolist(),
            "H": list(self.diagonal),
            "G": list(self.edge_rels),
            "converse": list(self.converse),
        }
        if self.rank <= JSON_DENSE_RANK:
            out["p"] = self.p.tolist()
        else:
            out["pEntries"] = self.entries.tolist()
        return out


def _sorted_entries(rows) -> np.ndarray:
    e = np.asarray(rows, dtype=np.int64).reshape(-1, 4)
    e = e[e[:, 3] != 0]
    order = np.lexsort((e[:, 2], e[:, 1], e[:, 0]))
    out = np.ascontiguousarray(e[order])
    out.setflags(write=False)
    return out


def from_json(obj: dict) -> CoherentConfiguration:
    """Rebuild a configuration from :meth:`CoherentConfiguration.to_json` output (no history)."""
    s, n = int(obj["rank"]), int(obj["n"])
    if "pEntries" in obj:
        entries = _sorted_entries(obj["pEntries"])
    else:
        dense = np.array(obj["p"], dtype=np.int64).reshape((s,) * 3)
        idx = np.argwhere(dense)
        entries = _sorted_entries(np.column_stack([idx, dense[tuple(idx.T)]]))
    return CoherentConfiguration(
        n=n,
        rank=s,
        rel=np.array(obj["relColor"], dtype=np.int64).reshape(n, n),
        entries=entries,
        diagonal=tuple(obj["H"]),
        edge_rels=tuple(obj["G"]),
        converse=tuple(obj["converse"]),
    )


def _initial_colors(g: Graph) -> np.ndarray:
    f0 = np.where(g.adjacency != 0, 1, 2).astype(np.int64)
    np.fill_diagonal(f0, 0)
    return f0


def _count_entries(rel: np.ndarray, s: int) -> np.ndarray:
    """Intersection numbers read off one witness pair per relation, then checked on every pair.

    For every pair the sorted codes ``rel(x,z) * s + rel(z,y)`` are its
    counts in compressed form, so the numbers are constant on each relation
    exactly when each relation carries a single signature row.
    """
    n = rel.shape[0]
    if n == 0:
        return _sorted_entries([])
    sig = kernels.wl2_signatures(rel, s)
    _, uniq, _ = kernels.rank_rows(sig)
    if len(uniq) != s:
        raise CoherenceError("intersection numbers are not constant on some relation")
    _, witness = np.unique(rel.ravel(), return_index=True)
    rows = []
    for k, w in enumerate(witness.tolist()):
        x, y = divmod(w, n)
        codes, counts = np.unique(rel[x, :] * s + rel[:, y], return_counts=True)
        rows.append(np.column_stack([codes // s, codes % s, np.full(len(codes), k), counts]))
    return _sorted_entries(np.concatenate(rows))


def _check_axioms(rel: np.ndarray, g: Graph, s: int):
    n = rel.shape[0]
    if n and set(np.unique(rel).tolist()) != set(range(s)):
        raise CoherenceError("relation ids are not 0..s-1")
    diag = set(np.diag(rel).tolist())
    off = set(rel[~np.eye(n, dtype=bool)].tolist())
    if diag & off:
        raise CoherenceError("a relation mixes diagonal and off-diagonal pairs")
    adj = g.adjacency != 0
    edge = set(rel[adj].tolist())
    if edge & set(rel[~adj].tolist()):
        raise CoherenceError("the edge set is not a union of relations")
    conv = {}
    for k, t in zip(rel.ravel().tolist(), rel.T.ravel().tolist()):
        if conv.setdefault(k, t) != t:
            raise CoherenceError(f"relation {k} has no converse relation")
    converse = tuple(conv[k] for k in range(s))
    return tuple(sorted(diag)), tuple(sorted(edge)), converse


def wl2_refine(g: Graph) -> CoherentConfiguration:
    """Coherent configuration of ``g`` by 2-dimensional Weisfeiler-Leman.

    Pair colours start as 0 (diagonal), 1 (edge), 2 (non-edge) and are
    refined by the multiset of colour pairs along all two-step paths until
    the partition stops splitting. Relation indices are ranks of the
    encodings, so they are independent of vertex labels.
    """
    n = g.n
    f0 = _initial_colors(g)
    ids, uniq, counts = kernels.rank_rows(f0.reshape(-1, 1))
    colors = ids.reshape(n, n)
    s = len(uniq)
    history = [(tuple(uniq.ravel().tolist()), tuple(counts.tolist()))]
    while n:
        sig = kernels.wl2_signatures(colors, s)
        ids, uniq, counts = kernels.rank_rows(sig)
        if len(uniq) == s:
            break
        colors = ids.reshape(n, n)
        s = len(uniq)
        history.append((uniq.shape, uniq.tobytes(), tuple(counts.tolist())))
    colors = np.ascontiguousarray(colors)
    diagonal, edge_rels, converse = _check_axioms(colors, g, s)
    entries = _count_entries(colors, s)
    colors.setflags(write=False)
    return CoherentConfiguration(
        n=n,
        rank=s if n else 0,
        rel=colors,
        entries=entries,
        diagonal=diagonal,
        edge_rels=edge_rels,
        converse=converse,
        history=tuple(history),
    )


# ------------------------------------------------------------ intersection equivalence

def _by_index(c: CoherentConfiguration) -> list[list[tuple]]:
    """For every relation index, the nonzero entries ``(i, j, k, v)`` it takes part in."""
    out: list[list[tuple]] = [[] for _ in range(c.rank)]
    for row in c.entries.tolist():
        i, j, k, _ = row
        for t in {i, j, k}:
            out[t].append(tuple(row))
    return out


def _index_colors(confs: list[CoherentConfiguration]) -> list[list[int]]:
    """Jointly refine relation indices of several configurations by their tensor entries.

    An index is described by the multisets of nonzero entries in which it
    appears as first, second and third index, each entry recorded together
    with the current colours of the other two indices.
    """
    cols = [[(k in c.diagonal, k in c.edge_rels) for k in range(c.rank)] for c in confs]
    rows = [c.entries.tolist() for c in confs]
    while True:
        sigs = []
        for c, col, ents in zip(confs, cols, rows):
            first = [[] for _ in range(c.rank)]
            second = [[] for _ in range(c.rank)]
            third = [[] for _ in range(c.rank)]
            for i, j, k, v in ents:
                first[i].append((v, col[j], col[k]))
                second[j].append((v, col[i], col[k]))
                third[k].append((v, col[i], col[j]))
            sigs.append([(col[t], tuple(sorted(first[t])), tuple(sorted(second[t])),
                          tuple(sorted(third[t]))) for t in range(c.rank)])
        names = {sig: r for r, sig in enumerate(sorted({x for row in sigs for x in row}))}
        new = [[names[x] for x in row] for row in sigs]
        if all(len(set(nc)) == len(set(oc)) for nc, oc in zip(new, cols)):
            return new
        cols = new


def find_index_map(a: CoherentConfiguration, b: CoherentConfiguration) -> Optional[list[int]]:
    """Bijection ``sigma`` on relation indices with ``a.p[i,j,k] == b.p[sigma i, sigma j, sigma k]``.

    ``sigma`` must also carry diagonal relations onto diagonal relations and
    edge relations onto edge relations. Iterative backtracking over joint
    index classes; each assignment is checked against the entries that
    become fully assigned, on both sides. Returns None when no map exists.
    """
    s = a.rank
    if b.rank != s or len(a.diagonal) != len(b.diagonal) or len(a.edge_rels) != len(b.edge_rels):
        return None
    if len(a.entries) != len(b.entries):
        return None
    ca, cb = _index_colors([a, b])
    if sorted(ca) != sorted(cb):
        return None
    candidates = [[t for t in range(s) if cb[t] == ca[i]] for i in range(s)]
    order = sorted(range(s), key=lambda i: (len(candidates[i]), i))
    sigma = [-1] * s
    inv = [-1] * s
    na, nb = a.numbers, b.numbers
    ea, eb = _by_index(a), _by_index(b)

    def consistent(i: int) -> bool:
        for x, y, z, v in ea[i]:
            sx, sy, sz = sigma[x], sigma[y], sigma[z]
            if sx >= 0 and sy >= 0 and sz >= 0 and nb.get((sx, sy, sz), 0) != v:
                return False
        for x, y, z, v in eb[sigma[i]]:
            px, py, pz = inv[x], inv[y], inv[z]
            if px >= 0 and py >= 0 and pz >= 0 and na.get((px, py, pz), 0) != v:
                return False
        return True

    tried = [0] * s
    pos = 0
    while 0 <= pos < s:
        i = order[pos]
        if sigma[i] >= 0:
            inv[sigma[i]] = -1
            sigma[i] = -1
        placed = False
        while tried[pos] < len(candidates[i]):
            cand = candidates[i][tried[pos]]
            tried[pos] += 1
            if inv[cand] >= 0:
                continue
            sigma[i], inv[cand] = cand, i
            if consistent(i):
                placed = True
                break
            sigma[i], inv[cand] = -1, -1
        if placed:
            pos += 1
        else:
            tried[pos] = 0
            pos -= 1
    return sigma if pos == s else None


def _maps_structure(a: CoherentConfiguration, b: CoherentConfiguration, sigma) -> bool:
    if a.rank != b.rank or len(a.entries) != len(b.entries):
        return False
    sig = np.asarray(sigma, dtype=np.int64)
    moved = a.entries.copy()
    if len(moved):
        moved[:, :3] = sig[moved[:, :3]]
    return (
        np.array_equal(_sorted_entries(moved), b.entries)
        and sorted(sig[list(a.diagonal)].tolist()) == list(b.diagonal)
        and sorted(sig[list(a.edge_rels)].tolist()) == list(b.edge_rels)
    )


def intersection_equivalent(a: CoherentConfiguration, b: CoherentConfiguration) -> bool:
    if a.rank != b.rank:
        return False
    if a.history is not None and a.history == b.history:
        if _maps_structure(a, b, list(range(a.rank))):
            return True
    sigma = find_index_map(a, b)
    return sigma is not None and _maps_structure(a, b, sigma)


def c3_equivalent(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    return intersection_equivalent(wl2_refine(g), wl2_refine(h))
