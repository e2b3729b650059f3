"""Canonical JSON encodings for every value the CLI reads or writes.

Rationals are strings "p/q" (or "p" when the denominator is 1); all lists
are emitted in canonical (sorted) order so identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cones import Cone
from .groups import FiniteAbelianGroup
from .linalg import Matrix, frac
from .polyhedra import LatticePolyhedron
from .stabilizers import CycleConfiguration, PointRecord, UnitValue


def rational_str(x) -> str:
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def matrix_to_json(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[rational_str(x) for x in row] for row in m.entries]}


def matrix_from_json(obj: dict) -> Matrix:
    m = Matrix([[parse_rational(x) for x in row] for row in obj["entries"]])
    if m.rows != obj["rows"] or m.cols != obj["cols"]:
        raise ValueError("matrix shape does not match the declared size")
    return m


def cone_to_json(c: Cone, with_facets: bool = True) -> dict:
    out = {"ambient_rank": c.ambient_rank,
           "rays": [[str(x) for x in r] for r in c.rays],
           "lineality": [[str(x) for x in l] for l in c.lineality_basis]}
    if with_facets:
        out["facets"] = [[str(x) for x in f] for f in c.facets]
    return out


def cone_from_json(obj: dict) -> Cone:
    rank = int(obj["ambient_rank"])
    gens = [tuple(int(x) for x in r) for r in obj.get("rays", [])]
    for l in obj.get("lineality", []):
        v = tuple(int(x) for x in l)
        gens.append(v)
        gens.append(tuple(-x for x in v))
    return Cone(rank, gens)


def polyhedron_to_json(p: LatticePolyhedron, with_facets: bool = True) -> dict:
    q = p.canonicalize()
    out = {"ambient_rank": q.ambient_rank,
           "vertices": [[rational_str(x) for x in v] for v in q.vertex_candidates],
           "recession": cone_to_json(q.recession, with_facets=False)}
    if with_facets and not q.is_empty():
        facets = [{"normal": [str(x) for x in n], "offset": rational_str(o)}
                  for n, o in q.facet_rep]
        for n, o in q.hull_equations:
            facets.append({"normal": [str(x) for x in n], "offset": rational_str(o)})
            facets.append({"normal": [str(-x) for x in n], "offset": rational_str(-o)})
        out["facets"] = facets
    return out


def polyhedron_from_json(obj: dict) -> LatticePolyhedron:
    rank = int(obj["ambient_rank"])
    verts = [tuple(parse_rational(x) for x in v) for v in obj.get("vertices", [])]
    rec = cone_from_json(obj["recession"]) if "recession" in obj else None
    return LatticePolyhedron(rank, verts, rec)


def group_to_json(g: FiniteAbelianGroup) -> dict:
    return {"invariant_factors": list(g.invariant_factors)}


def configuration_to_json(c: CycleConfiguration) -> dict:
    pts = []
    for p in c.points:
        pts.append({"component": p.component,
                    "root": rational_str(p.position.root),
                    "generic": list(p.position.generic),
                    "a1": p.a1_label,
                    "mult": p.multiplicity})
    return {"n": c.n, "I_t": list(c.I_t), "points": pts}


def configuration_from_json(obj: dict) -> CycleConfiguration:
    n = int(obj["n"])
    I_t = tuple(int(i) for i in obj.get("I_t", []))
    pts = []
    m = 0
    for p in obj["points"]:
        m = max(m, len(p.get("generic", [])))
    for p in obj["points"]:
        g = tuple(int(x) for x in p.get("generic", []))
        g = g + (0,) * (m - len(g))
        pts.append(PointRecord(
            component=int(p["component"]),
            position=UnitValue(root=parse_rational(p.get("root", "0")), generic=g),
            a1_label=str(p.get("a1", "")),
            multiplicity=int(p.get("mult", 1))))
    return CycleConfiguration(n=n, I_t=I_t, points=tuple(pts))


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "))
