"""Exhaustive small-graph verification of the implication suite.

Every graph gets the unary checks. Graphs are then deduplicated by
(characteristic polynomial, colour-refinement trace, 2-WL history), keeping
a few labelled representatives per key, and representatives are compared
pairwise inside two bucketings: equal degree sequence (catches every C2 and
C3 pair) and equal characteristic polynomial (catches every cospectral
pair).
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from wlcert import coherent, control, drg, refine, spectral
from wlcert.graph import Graph, find_isomorphism, write_graph6
from wlcert.report import REGULARIZED_KINDS, pair_report, safe_classify

log = logging.getLogger(__name__)

SUITES = ("all", "logic", "control", "drg")

UNARY_CHECKS = (
    "connected => classification in {DRG, DBRG, not-regularized}",
    "recurrence tensors == counted tensors",
)

PAIR_CHECKS = {
    "logic": (
        "c3 => c2",
        "c3 => cospectral",
        "c2 => walk-equivalent",
        "c2 <=> fractional witness verifies",
        "generalized cospectral => walk-equivalent",
    ),
    "control": ("(controllable & c2) <=> isomorphic",),
    "drg": (
        "distance-regularized: cospectral <=> c3",
        "distance-biregular: cospectral <=> same arrays",
    ),
}

EXTRA_CHECKS = {
    "control": ("controllable certificate agrees with isomorphism search",),
    "drg": UNARY_CHECKS + ("bipartite semiregular cospectral => degrees equal or swapped",),
}


@dataclass
class Record:
    index: int
    graph: Graph
    charpoly: tuple
    c1_trace: tuple
    wl2: coherent.CoherentConfiguration
    controllable: bool
    classification: Optional[drg.Classification]
    unary_violations: list

    @property
    def key(self):
        return (self.graph.n, self.charpoly, self.c1_trace, self.wl2.history)

    @property
    def degree_key(self):
        return (self.graph.n, tuple(sorted(self.graph.degrees())))


def labeled_graphs(n: int) -> Iterable[Graph]:
    """All ``2^(n(n-1)/2)`` labelled graphs on ``n`` vertices, by edge bitmask."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = frozenset(pairs[t] for t in range(len(pairs)) if mask >> t & 1)
        yield Graph(n, edges)


def analyse_graph(index: int, g: Graph, suite: str = "all") -> Record:
    violations = []
    cl = None
    if suite in ("all", "drg") and g.n > 0 and g.is_connected():
        cl = drg.classify(g)
        if cl.kind == drg.OTHER:
            violations.append(UNARY_CHECKS[0])
        elif cl.kind in REGULARIZED_KINDS:
            counted = drg.count_pnums(g, cl)
            derived = drg.recurrence_pnums(cl)
            if not all(np.array_equal(a, b) for a, b in zip(counted, derived)):
                violations.append(UNARY_CHECKS[1])
    elif g.n > 0 and g.is_connected():
        cl = safe_classify(g)
    return Record(
        index=index,
        graph=g,
        charpoly=spectral.adjacency_char_poly(g).coeffs,
        c1_trace=refine.color_refine(g).trace,
        wl2=coherent.wl2_refine(g),
        controllable=control.is_controllable(g),
        classification=cl,
        unary_violations=violations,
    )


def _analyse_chunk(args):
    items, suite = args
    return [analyse_graph(i, g, suite) for i, g in items]


def _records(graphs: list[Graph], suite: str, jobs: int) -> list[Record]:
    items = list(enumerate(graphs))
    if jobs <= 1 or len(items) < 256:
        return [analyse_graph(i, g, suite) for i, g in items]
    size = -(-len(items) // (jobs * 8))
    chunks = [(items[k:k + size], suite) for k in range(0, len(items), size)]
    out: list[Record] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_analyse_chunk, chunks):
            out.extend(part)
    out.sort(key=lambda r: r.index)
    return out


def _active_checks(suite: str) -> set:
    if suite == "all":
        return {c for cs in PAIR_CHECKS.values() for c in cs}
    return set(PAIR_CHECKS[suite])


def _reported_checks(suite: str) -> list:
    names = [s for s in PAIR_CHECKS if suite in ("all", s)]
    return [c for s in names for c in PAIR_CHECKS[s] + EXTRA_CHECKS.get(s, ())]


def verify(
    graphs: list[Graph],
    suite: str = "all",
    jobs: int = 1,
    reps_per_key: int = 2,
    max_interesting: int = 200,
) -> dict:
    """Run the implication suite over ``graphs``; returns a JSON-ready summary."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    records = _records(graphs, suite, jobs)
    active = _active_checks(suite)
    violations = []
    check_counts: dict = defaultdict(lambda: {"checked": 0, "violations": 0})
    for name in _reported_checks(suite):
        # listed even when nothing in the corpus makes the check applicable
        check_counts[name] = {"checked": 0, "violations": 0}

    for r in records:
        if suite in ("all", "drg") and r.classification is not None:
            check_counts[UNARY_CHECKS[0]]["checked"] += 1
            if r.classification.kind in REGULARIZED_KINDS:
                check_counts[UNARY_CHECKS[1]]["checked"] += 1
        for name in r.unary_violations:
            check_counts[name]["violations"] += 1
            violations.append({"check": name, "graphs": [write_graph6(r.graph)]})

    census: dict = defaultdict(lambda: {"graphs": 0, "controllable": 0})
    for r in records:
        census[str(r.graph.n)]["graphs"] += 1
        census[str(r.graph.n)]["controllable"] += int(r.controllable)

    reps: dict = {}
    for r in records:
        bucket = reps.setdefault(r.key, [])
        if len(bucket) < reps_per_key and all(x.graph != r.graph for x in bucket):
            bucket.append(r)
    rep_list = sorted((r for rs in reps.values() for r in rs), key=lambda r: r.index)
    log.info("%d graphs, %d representatives", len(records), len(rep_list))

    by_degree = defaultdict(list)
    by_poly = defaultdict(list)
    for r in rep_list:
        by_degree[r.degree_key].append(r)
        by_poly[(r.graph.n, r.charpoly)].append(r)
    pairs = set()
    for bucket in list(by_degree.values()) + list(by_poly.values()):
        for a, b in combinations(bucket, 2):
            pairs.add((a.index, b.index) if a.index < b.index else (b.index, a.index))
    by_index = {r.index: r for r in rep_list}

    interesting = []
    swap_pairs = 0
    semiregular_checked = 0
    for ia, ib in sorted(pairs):
        a, b = by_index[ia], by_index[ib]
        rep = pair_report(a.graph, b.graph, a.wl2, b.wl2, a.classification, b.classification)
        for chk in rep["theoremConsistency"]:
            if chk["check"] not in active or not chk["applicable"]:
                continue
            check_counts[chk["check"]]["checked"] += 1
            if not chk["pass"]:
                check_counts[chk["check"]]["violations"] += 1
                violations.append({"check": chk["check"], "graphs": [rep["a"], rep["b"]]})
        need_iso = ("control" in suite or suite == "all") or rep["cospectral"] or rep["c2"]
        iso = find_isomorphism(a.graph, b.graph) is not None if need_iso else False
        if suite in ("all", "control") and rep["isoVerdict"] != control.INAPPLICABLE:
            name = "controllable certificate agrees with isomorphism search"
            check_counts[name]["checked"] += 1
            if (rep["isoVerdict"] == control.ISOMORPHIC) != iso:
                check_counts[name]["violations"] += 1
                violations.append({"check": name, "graphs": [rep["a"], rep["b"]]})
        if suite in ("all", "drg") and rep["cospectral"]:
            res = _semiregular(a.graph, b.graph)
            if res is not None:
                semiregular_checked += 1
                name = "bipartite semiregular cospectral => degrees equal or swapped"
                check_counts[name]["checked"] += 1
                swap_pairs += int(res["degrees_swapped"])
                if not res["holds"]:
                    check_counts[name]["violations"] += 1
                    violations.append({"check": name, "graphs": [rep["a"], rep["b"]]})
        if not iso and (rep["c2"] or rep["c3"] or rep["cospectral"] or rep["walkEquivalent"]):
            interesting.append({k: rep[k] for k in
                                ("a", "b", "c2", "c3", "cospectral", "generalizedCospectral",
                                 "walkEquivalent", "isoVerdict")})

    interesting.sort(key=lambda d: (d["a"], d["b"]))
    violations.sort(key=lambda d: (d["check"], d["graphs"]))
    return {
        "suite": suite,
        "graphs": len(records),
        "representatives": len(rep_list),
        "pairsCompared": len(pairs),
        "checks": {k: check_counts[k] for k in sorted(check_counts)},
        "violationCount": len(violations),
        "violations": violations,
        "interestingPairCount": len(interesting),
        "interestingPairs": interesting[:max_interesting],
        "controllableCensus": dict(sorted(census.items(), key=lambda kv: int(kv[0]))),
        "semiregularCospectralPairs": {"checked": semiregular_checked, "degreeSwaps": swap_pairs},
    }


def _semiregular(g: Graph, h: Graph) -> Optional[dict]:
    if not (g.is_connected() and h.is_connected()) or g.n < 2:
        return None
    try:
        return drg.semiregular_spectral_check(g, h)
    except ValueError:
        return None


def builtin_corpus(n_max: int, n_min: int = 1) -> list[Graph]:
    if n_max > 7:
        raise ValueError("built-in labelled enumeration is limited to n <= 7")
    out: list[Graph] = []
    for n in range(n_min, n_max + 1):
        out.extend(labeled_graphs(n))
    return out
