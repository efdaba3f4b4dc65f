"""Worked example: m-stable plane cubics, m = 0..3.

For each m the report lists the irreducible components of the space of
m-stable genus-one maps of degree 3 to the plane, and reduces the three
boundary shapes (a contracted elliptic curve with tails of degrees (3),
(2, 1) and (1, 1, 1)) to their m-stable limits.
"""
from __future__ import annotations

import json

from .components import PRINCIPAL, component_rows, is_smoothable
from .graph import DualGraph, Vertex, to_dict
from .reduction import reduce, trace_to_json
from .stability import StabilityParams, core_kind

N, R, D = 0, 2, 3
M_VALUES = (0, 1, 2, 3)


def boundary_shape(degrees) -> DualGraph:
    """A contracted smooth elliptic curve Z with one rational tail per degree."""
    vs = [Vertex("Z", 1, 0)] + [Vertex(f"R{i}", 0, di) for i, di in enumerate(degrees, start=1)]
    es = [("Z", f"R{i}") for i in range(1, len(degrees) + 1)]
    return DualGraph(tuple(vs), tuple(es), None, R)


U1 = boundary_shape([3])
U2 = boundary_shape([2, 1])
T0 = boundary_shape([1, 1, 1])
SHAPES = {"U1": U1, "U2": U2, "T0": T0}


def _section(m: int) -> dict:
    params = StabilityParams(m, N, R, D)
    rows = component_rows(params)
    reductions = {}
    for name, g in SHAPES.items():
        tr = reduce(g, params)
        reductions[name] = {
            "cause": tr.cause,
            "contractions": tr.contractions,
            "final": to_dict(tr.final),
            "final_core": core_kind(tr.final),
            "steps": json.loads(trace_to_json(tr)),
        }
    return {"m": m, "components": rows, "reductions": reductions}


def plane_cubics() -> dict:
    return {
        "n": N,
        "r": R,
        "d": D,
        "sections": [_section(m) for m in M_VALUES],
        "smoothable": {
            "T0_generic": is_smoothable(T0),
            "U2_generic": is_smoothable(U2),
        },
    }


SINGULARITY = {
    "smooth-elliptic": "contracted smooth elliptic curve",
    "elliptic-l-fold(1)": "cusp",
    "elliptic-l-fold(2)": "tacnode",
    "elliptic-l-fold(3)": "planar triple point",
}


def _name(row: dict) -> str:
    if row["kind"] == PRINCIPAL:
        return "S_0"
    return "S_" + str(len(row["partition"]))


def summary(report: dict) -> str:
    lines = [f"m-stable genus-one maps of degree {report['d']} to P^{report['r']}", ""]
    for sec in report["sections"]:
        rows = sec["components"]
        comps = ", ".join(f"{_name(r)} (dim {r['dimension']})" for r in rows)
        word = "component" if len(rows) == 1 else "components"
        lines.append(f"m={sec['m']}: {len(rows)} {word}: {comps}")
        for name, red in sec["reductions"].items():
            lines.append(f"  {name} -> {SINGULARITY[red['final_core']]} after {red['contractions']} contraction(s), cause {red['cause']}")
    sm = report["smoothable"]
    lines.append("")
    lines.append(f"generic T0 (three line tails) smoothable: {'yes' if sm['T0_generic'] else 'no'}")
    lines.append(f"generic U2 (tails of degrees 2 and 1) smoothable: {'yes' if sm['U2_generic'] else 'no'}")
    return "\n".join(lines) + "\n"


def report_json(report: dict | None = None) -> str:
    return json.dumps(plane_cubics() if report is None else report, indent=2, sort_keys=True) + "\n"
