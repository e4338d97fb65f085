"""JSON schemas for every object the command line reads or writes.

Rationals are serialized as strings "p/q" (or plain integer strings) to
avoid lossy number encodings; points of P^1 are rational strings or "inf";
ray vectors are integer lists.  Emission is canonical: keys sorted, lists
in the library's canonical order, so identical inputs produce byte-identical
reports.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .decompose import SliceDecomposition
from .divisors import DivisorialFan, P1Point, PolyDivisor, build_dfan
from .errors import InputError
from .fans import Fan
from .geometry import Cone, Polyhedron


def parse_fraction(value) -> Fraction:
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return Fraction(value)
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {value!r}") from exc


def fmt_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x)


def parse_vector(data) -> tuple:
    if not isinstance(data, (list, tuple)):
        raise InputError(f"vector expected, got {data!r}")
    return tuple(parse_fraction(x) for x in data)


def fmt_vector(v):
    return [fmt_fraction(x) for x in v]


def fmt_int_vector(v):
    return [int(x) for x in v]


def parse_point(data) -> P1Point:
    return P1Point.parse(data)


def fmt_point(p: P1Point) -> str:
    return str(p)


def parse_polyhedron(data, rank) -> Polyhedron:
    if not isinstance(data, dict):
        raise InputError(f"polyhedron object expected, got {data!r}")
    if data.get("empty"):
        return Polyhedron.make_empty(rank)
    vertices = [parse_vector(v) for v in data.get("vertices", [])]
    rays = [parse_vector(r) for r in data.get("rays", [])]
    for v in vertices + rays:
        if len(v) != rank:
            raise InputError(f"vector of rank {len(v)}, expected {rank}")
    if not vertices:
        raise InputError("nonempty polyhedron needs at least one vertex")
    return Polyhedron.from_generators(rank, vertices, Cone.from_rays(rank, rays))


def fmt_polyhedron(p: Polyhedron) -> dict:
    if p.empty:
        return {"empty": True}
    return {
        "vertices": [fmt_vector(v) for v in p.vertices],
        "rays": [fmt_int_vector(r) for r in p.tail.rays],
    }


def parse_cone(data) -> Cone:
    if not isinstance(data, dict) or "rays" not in data or "rank" not in data:
        raise InputError("cone object needs 'rank' and 'rays'")
    rank = int(data["rank"])
    rays = [parse_vector(r) for r in data["rays"]]
    return Cone.from_rays(rank, rays)


def fmt_cone(c: Cone) -> dict:
    return {"rank": c.rank, "rays": [fmt_int_vector(r) for r in c.rays]}


def parse_fan(data) -> Fan:
    try:
        rank = int(data["rank"])
        rays = [tuple(int(x) for x in r) for r in data["rays"]]
        cones = [tuple(int(i) for i in c) for c in data["max_cones"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad fan object: {exc}") from exc
    return Fan(rank, rays, cones)


def fmt_fan(f: Fan) -> dict:
    return {
        "rank": f.rank,
        "rays": [fmt_int_vector(r) for r in f.rays],
        "max_cones": [list(c) for c in f.max_cones],
    }


def parse_pdiv(data, rank) -> PolyDivisor:
    tail = Cone.from_rays(rank, [parse_vector(r) for r in data.get("tail_rays", [])])
    coeffs = {}
    for key, value in data.get("coeffs", {}).items():
        coeffs[parse_point(key)] = parse_polyhedron(value, rank)
    return PolyDivisor(rank, tail, coeffs)


def fmt_pdiv(d: PolyDivisor) -> dict:
    return {
        "tail_rays": [fmt_int_vector(r) for r in d.tail.rays],
        "coeffs": {fmt_point(p): fmt_polyhedron(d.coeffs[p]) for p in d.points()},
    }


def parse_dfan(data) -> DivisorialFan:
    try:
        rank = int(data["rank_N"])
        pdivs = [parse_pdiv(obj, rank) for obj in data["pdivs"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad divisorial fan object: {exc}") from exc
    return build_dfan(pdivs, rank=rank)


def fmt_dfan(xi: DivisorialFan) -> dict:
    return {
        "rank_N": xi.rank,
        "pdivs": [fmt_pdiv(d) for d in xi.pdivs],
        "maximal": [bool(m) for m in xi.maximal],
    }


def _parse_summand(token, rank, tail):
    if token == "tail":
        return Polyhedron.trivial(tail)
    if isinstance(token, dict) and "translate" in token:
        return Polyhedron.trivial(tail).translate(parse_vector(token["translate"]))
    return parse_polyhedron(token, rank)


def parse_slice_decomposition(data, xi: DivisorialFan) -> SliceDecomposition:
    """Rows may omit divisors; omitted rows default to the trivial split
    (full coefficient in column 0, tails elsewhere)."""
    try:
        point = parse_point(data["point"])
        columns = int(data["columns"])
        row_objs = data["rows"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad decomposition object: {exc}") from exc
    exponents = tuple(int(k) for k in data.get("exponents", [1] * columns))
    rows = {}
    for obj in row_objs:
        i = int(obj["pdiv"])
        if not 0 <= i < len(xi.pdivs):
            raise InputError(f"row references unknown divisor {i}")
        tail = xi.pdivs[i].tail
        rows[i] = tuple(_parse_summand(tok, xi.rank, tail) for tok in obj["summands"])
    trivial = SliceDecomposition.trivial(xi, point, columns)
    for i in range(len(xi.pdivs)):
        rows.setdefault(i, trivial.rows[i])
    return SliceDecomposition(point, rows, columns, exponents)


def fmt_slice_decomposition(sd: SliceDecomposition) -> dict:
    return {
        "point": str(sd.point),
        "columns": sd.columns,
        "exponents": list(sd.exponents),
        "rows": [
            {"pdiv": i, "summands": [fmt_polyhedron(p) for p in sd.rows[i]]}
            for i in sorted(sd.rows)
        ],
    }


def fmt_constraint(c) -> dict:
    def rec(r):
        return [str(r.point), r.column, r.exponent]

    return {
        "kind": c.kind,
        "left": rec(c.left),
        "right": rec(c.right),
        "shift": fmt_fraction(c.shift),
    }


def fmt_family(fd) -> dict:
    return {
        "points": [str(p) for p in sorted(fd.decomps, key=P1Point.sort_key)],
        "params": [[str(p), s] for p, s in fd.params],
        "records": [[str(r.point), r.column, r.exponent] for r in fd.records],
        "constraints": [fmt_constraint(c) for c in fd.constraints],
    }


def parse_lambda(data) -> dict:
    """{"P,s": "value"} -> {(point label, column): Fraction}."""
    if not isinstance(data, dict):
        raise InputError("parameter assignment must be an object")
    out = {}
    source = data.get("lambda", data)
    for key, value in source.items():
        try:
            label, s = key.rsplit(",", 1)
        except ValueError as exc:
            raise InputError(f"bad parameter key {key!r}, expected 'point,column'") from exc
        out[(label, int(s))] = parse_fraction(value)
    return out


def fmt_cocycle(cc) -> dict:
    out = {
        "kind": cc.kind,
        "charts": list(range(len(cc.charts))),
        "entries": [],
    }
    if cc.kind == "toric":
        out["degree"] = fmt_int_vector(cc.degree)
        out["frame"] = [fmt_int_vector(v) for v in cc.frame]
        for (i, j), c in sorted(cc.entries.items()):
            out["entries"].append({"i": i, "j": j, "c": fmt_vector(c)})
    else:
        out["point"] = str(cc.point)
        out["chart_tags"] = [[ch.pdiv, ch.tag] for ch in cc.charts]
        for (i, j), (b, c) in sorted(cc.entries.items()):
            out["entries"].append({"i": i, "j": j, "b": fmt_fraction(b), "c": fmt_vector(c)})
    return out


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
