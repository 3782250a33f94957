"""JSON-ready single-graph and pair reports."""
from __future__ import annotations

from typing import Optional

from wlcert import coherent, control, drg, refine, spectral
from wlcert.graph import Graph, write_graph6

REGULARIZED_KINDS = (drg.DISTANCE_REGULAR, drg.DISTANCE_BIREGULAR)


def safe_classify(g: Graph) -> Optional[drg.Classification]:
    if g.n == 0 or not g.is_connected():
        return None
    return drg.classify(g)


def analysis_report(g: Graph, with_config: bool = False) -> dict:
    col = refine.color_refine(g)
    cc = coherent.wl2_refine(g)
    cl = safe_classify(g)
    out = {
        "graph6": write_graph6(g),
        "order": g.n,
        "size": g.m,
        "connected": g.n > 0 and g.is_connected(),
        "colorRefine": {"classSizes": col.size_multiset(), "rounds": col.rounds},
        "wl2": {"rank": cc.rank, "relationSizes": sorted(cc.sizes())},
        "charPoly": list(spectral.adjacency_char_poly(g).coeffs),
        "controllable": control.is_controllable(g),
        "classification": cl.to_json() if cl else {"kind": "disconnected"},
    }
    if with_config:
        out["wl2"]["configuration"] = cc.to_json()
    return out


def _check(name: str, applicable: bool, ok: bool) -> dict:
    return {"check": name, "applicable": applicable, "pass": (not applicable) or ok}


def pair_report(
    g: Graph,
    h: Graph,
    cc_g: Optional[coherent.CoherentConfiguration] = None,
    cc_h: Optional[coherent.CoherentConfiguration] = None,
    cl_g=False,
    cl_h=False,
) -> dict:
    """All equivalences between two graphs plus the implication checks they must satisfy.

    Precomputed configurations / classifications may be passed in; ``False``
    means "not supplied".
    """
    same_order = g.n == h.n
    c2 = refine.c2_equivalent(g, h)
    if same_order:
        cc_g = cc_g or coherent.wl2_refine(g)
        cc_h = cc_h or coherent.wl2_refine(h)
        c3 = coherent.intersection_equivalent(cc_g, cc_h)
    else:
        c3 = False
    cos = spectral.cospectral(g, h)
    gen = spectral.generalized_cospectral(g, h)
    walk = spectral.walk_equivalent(g, h)
    witness = refine.fractional_witness(g, h)
    witness_ok = witness is not None and refine.verify_witness(witness, g, h)
    cert = control.controllable_iso(g, h)

    cl_g = safe_classify(g) if cl_g is False else cl_g
    cl_h = safe_classify(h) if cl_h is False else cl_h
    reg = bool(cl_g and cl_h and cl_g.kind in REGULARIZED_KINDS and cl_h.kind in REGULARIZED_KINDS)
    bireg = bool(reg and cl_g.kind == cl_h.kind == drg.DISTANCE_BIREGULAR)
    same_arrays = bireg and cl_g.payload.unordered() == cl_h.payload.unordered()
    controllable_pair = cert.verdict != control.INAPPLICABLE
    iso_cert = cert.verdict == control.ISOMORPHIC

    checks = [
        _check("c3 => c2", c3, c2),
        _check("c3 => cospectral", c3, cos),
        _check("c2 => walk-equivalent", c2, walk),
        _check("c2 <=> fractional witness verifies", True, c2 == witness_ok),
        _check("generalized cospectral => walk-equivalent", gen, walk),
        _check("(controllable & c2) <=> isomorphic", controllable_pair, c2 == iso_cert),
        _check("distance-regularized: cospectral <=> c3", reg, cos == c3),
        _check("distance-biregular: cospectral <=> same arrays", bireg, cos == same_arrays),
    ]
    return {
        "a": write_graph6(g),
        "b": write_graph6(h),
        "c2": c2,
        "c3": c3,
        "cospectral": cos,
        "generalizedCospectral": gen,
        "walkEquivalent": walk,
        "fractionalWitnessFound": witness_ok,
        "isoVerdict": cert.verdict,
        "isoCertificate": cert.to_json(),
        "theoremConsistency": checks,
    }


def consistent(report: dict) -> bool:
    return all(c["pass"] for c in report["theoremConsistency"])
