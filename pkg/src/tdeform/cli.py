"""Command line front end.

Exit codes: 0 success, 1 domain refusal (improper divisor, inadmissible
decomposition, negative verdict of a check command), 2 parse error.
Reports are deterministic; --format json emits canonical JSON.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .decompose import CoeffDecomposition, check_admissible, check_slice_decomposition
from .divisors import P1Point, downgrade, halfspace_slice, upgrade_total_space
from .errors import DomainError, InputError
from .families import build_family, fiber, general_fiber_singularities, in_base
from .fans import is_complete, is_smooth, validate_fan
from .kodaira import ks_cocycle_toric, ks_cocycle_tvar
from .t1 import build_graph, omega, span_report, t1_dimension


def _parse_degree(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad degree {text!r}") from exc


def _emit(args, obj, text_lines):
    if args.format == "json":
        print(io.dumps(obj))
    else:
        for line in text_lines:
            print(line)


def cmd_fan_check(args):
    fan = io.parse_fan(io.load_json(args.fan))
    report = validate_fan(fan)
    result = {"valid": report.valid}
    if report.valid:
        result["smooth"] = is_smooth(fan)
        result["complete"] = is_complete(fan)
    else:
        result["issues"] = [list(i) for i in report.issues]
    lines = [f"valid: {result['valid']}"]
    if report.valid:
        lines += [f"smooth: {result['smooth']}", f"complete: {result['complete']}"]
    else:
        lines += [f"issue: {i}" for i in report.issues]
    _emit(args, result, lines)
    return 0 if report.valid else 1


def cmd_downgrade(args):
    fan = io.parse_fan(io.load_json(args.fan))
    z = tuple(int(x) for x in args.section.split(",")) if args.section else None
    dg = downgrade(fan, _parse_degree(args.degree), z=z)
    result = {
        "dfan": io.fmt_dfan(dg.dfan),
        "section": {"z": io.fmt_int_vector(dg.z), "basis": [io.fmt_int_vector(b) for b in dg.basis]},
        "cone_pdivs": list(dg.cone_pdivs),
    }
    lines = [f"section z = {list(dg.z)}, kernel basis = {[list(b) for b in dg.basis]}"]
    for k, i in enumerate(dg.cone_pdivs):
        lines.append(f"cone {k} -> divisor {i}: {dg.dfan.pdivs[i]!r}")
    _emit(args, result, lines)
    return 0


def cmd_dfan_check(args):
    xi = io.parse_dfan(io.load_json(args.dfan))
    proper = [d.is_proper() for d in xi.pdivs]
    slices = {}
    for p in xi.points():
        slices[str(p)] = xi.slice_is_complex(p)
    ok = all(proper) and all(slices.values())
    result = {
        "valid": ok,
        "size": len(xi.pdivs),
        "maximal": [i for i, m in enumerate(xi.maximal) if m],
        "proper": proper,
        "slice_complexes": slices,
    }
    lines = [f"divisors: {len(xi.pdivs)} (maximal: {result['maximal']})",
             f"all proper: {all(proper)}",
             f"slice complexes: {slices}"]
    _emit(args, result, lines)
    return 0 if ok else 1


def cmd_decomp_check(args):
    data = io.load_json(args.input)
    if "dfan" in data:
        xi = io.parse_dfan(data["dfan"])
        sd = io.parse_slice_decomposition(data["decomposition"], xi)
        report = check_slice_decomposition(sd, xi)
        result = {
            "valid": report.ok,
            "admissible": report.admissible,
            "violations": [list(map(str, v)) for v in report.violations],
        }
        ok = report.ok and report.admissible
        lines = [f"valid: {report.ok}", f"admissible: {report.admissible}"] + [
            f"violation: {v}" for v in report.violations
        ]
    elif "target" in data:
        rank = len(data["target"].get("vertices", [[0]])[0]) if not data["target"].get("empty") else 1
        target = io.parse_polyhedron(data["target"], rank)
        summands = [io.parse_polyhedron(s, rank) for s in data["summands"]]
        exponents = tuple(int(k) for k in data.get("exponents", [1] * len(summands)))
        cd = CoeffDecomposition(target, tuple(summands), exponents)
        ok, witness = check_admissible(cd)
        result = {"admissible": ok, "witness": None if witness is None else io.fmt_vector(witness)}
        lines = [f"admissible: {ok}"] + ([] if ok else [f"witness vertex: {io.fmt_vector(witness)}"])
    else:
        raise InputError("decomposition file needs either 'target' or 'dfan'")
    _emit(args, result, lines)
    return 0 if ok else 1


def _family_from_args(args):
    xi = io.parse_dfan(io.load_json(args.dfan))
    decomp_data = io.load_json(args.decomps)
    decomps = {}
    for obj in decomp_data.get("decompositions", []):
        sd = io.parse_slice_decomposition(obj, xi)
        decomps[str(sd.point)] = sd
    return xi, build_family(xi, decomps)


def cmd_family_build(args):
    _, fd = _family_from_args(args)
    result = io.fmt_family(fd)
    lines = [f"params: {result['params']}"] + [f"constraint: {c}" for c in result["constraints"]]
    _emit(args, result, lines)
    return 0


def cmd_family_fiber(args):
    import json as _json

    _, fd = _family_from_args(args)
    lam = io.parse_lambda(_json.loads(args.lam))
    if not in_base(fd, lam):
        raise DomainError("parameter values lie in the forbidden locus")
    fib = fiber(fd, lam, verify=args.verify)
    result = {"fiber": io.fmt_dfan(fib)}
    lines = [f"fiber with {len(fib.pdivs)} divisors at points {[str(p) for p in fib.points()]}"]
    _emit(args, result, lines)
    return 0


def cmd_family_sing(args):
    data = io.load_json(args.input)
    rank = int(data["rank_N"])
    pdiv = io.parse_pdiv(data["pdiv"], rank)
    decomps = {}
    for key, obj in data.get("decompositions", {}).items():
        target = pdiv.coeff(P1Point.parse(key))
        summands = [io.parse_polyhedron(s, rank) for s in obj["summands"]]
        exponents = tuple(int(k) for k in obj.get("exponents", [1] * len(summands)))
        decomps[key] = CoeffDecomposition(target, tuple(summands), exponents)
    rows = general_fiber_singularities(pdiv, decomps)
    result = {
        "singularities": [
            {"point": str(p), "column": s, "cone": io.fmt_cone(c), "smooth": sm}
            for p, s, c, sm in rows
        ]
    }
    lines = [
        f"point {p} column {s}: cone rays {[list(r) for r in c.rays]} smooth={sm}"
        for p, s, c, sm in rows
    ]
    _emit(args, result, lines)
    return 0


def cmd_ks(args):
    if args.degree:
        fan = io.parse_fan(io.load_json(args.input))
        z = None
        if args.section_ray is not None:
            z = fan.rays[args.section_ray]
        dg = downgrade(fan, _parse_degree(args.degree), z=z)
        sd = io.parse_slice_decomposition(io.load_json(args.decomp), dg.dfan)
        cc = ks_cocycle_toric(dg, sd)
    else:
        xi = io.parse_dfan(io.load_json(args.input))
        sd = io.parse_slice_decomposition(io.load_json(args.decomp), xi)
        cc = ks_cocycle_tvar(xi, args.point, sd)
    result = io.fmt_cocycle(cc)
    lines = [f"{e}" for e in result["entries"] if any(x not in ("0",) for x in e["c"])] or ["zero cocycle"]
    _emit(args, result, lines)
    return 0


def cmd_t1(args):
    fan = io.parse_fan(io.load_json(args.fan))
    results = []
    for deg in args.degree:
        R = _parse_degree(deg)
        om = omega(fan, R)
        graphs = []
        for rho in om:
            g = build_graph(fan, rho, R)
            graphs.append({
                "rho": rho,
                "vertices": list(g.vertices),
                "edges": [list(e) for e in g.edges],
                "components": [sorted(c) for c in g.components],
            })
        results.append({
            "degree": [-x for x in R],
            "omega": list(om),
            "graphs": graphs,
            "dim": t1_dimension(fan, R),
        })
    result = results[0] if len(results) == 1 else {"results": results}
    lines = []
    for r in results:
        lines.append(f"degree {r['degree']}: dim = {r['dim']}, omega = {r['omega']}")
        for g in r["graphs"]:
            lines.append(f"  rho {g['rho']}: components {g['components']}")
    _emit(args, result, lines)
    return 0


def cmd_t1_span(args):
    fan = io.parse_fan(io.load_json(args.fan))
    R = _parse_degree(args.degree)
    report = span_report(fan, R)
    gens = []
    for g in report.generators:
        if args.ray is not None and g.rho != args.ray:
            continue
        if args.component is not None and sorted(g.component)[0] != args.component:
            continue
        gens.append({
            "rho": g.rho,
            "component": sorted(g.component),
            "decomposition": io.fmt_slice_decomposition(g.decomposition),
            "cocycle": io.fmt_cocycle(g.cocycle),
        })
    result = {
        "degree": [-x for x in report.degree_vector],
        "omega": list(report.omega),
        "rank": report.rank,
        "dim": report.t1_dim,
        "generators": gens,
    }
    lines = [f"degree {result['degree']}: rank {report.rank} of dim {report.t1_dim}"]
    for g in gens:
        lines.append(f"  rho {g['rho']} component {g['component']}")
    _emit(args, result, lines)
    return 0


def cmd_upgrade(args):
    data = io.load_json(args.input)
    sigma = io.parse_cone(data["cone"])
    R = _parse_degree(args.degree)
    z = tuple(int(x) for x in args.section.split(",")) if args.section else None
    summands = [io.parse_polyhedron(s, sigma.rank - 1) for s in data["summands"]]
    etot = upgrade_total_space(sigma, R, tuple(summands), z=z)
    e0 = etot.coeff(P1Point.parse("0"))
    e1 = etot.coeff(P1Point.parse("1"))
    einf = etot.coeff(P1Point.parse("inf"))
    sum01 = e0.minkowski(e1)
    result = {
        "etot": io.fmt_pdiv(etot),
        "rank": etot.rank,
        "sum_identity": sum01 == halfspace_slice(sigma, R, 1),
        "infinity_identity": einf == halfspace_slice(sigma, R, -1),
    }
    lines = [
        f"E_0 = {e0!r}",
        f"E_1 = {e1!r}",
        f"E_inf = {einf!r}",
        f"E_0 + E_1 == cone cap [deg >= 1]: {result['sum_identity']}",
        f"E_inf == cone cap [deg >= -1]: {result['infinity_identity']}",
    ]
    _emit(args, result, lines)
    return 0


def make_parser():
    parser = argparse.ArgumentParser(
        prog="tdeform",
        description="Homogeneous deformations of toric varieties and complexity-one T-varieties",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fan-check", help="validate a fan; report smoothness and completeness")
    p.add_argument("fan")
    p.set_defaults(func=cmd_fan_check)

    p = sub.add_parser("downgrade", help="divisorial fan of a toric fan for a degree vector")
    p.add_argument("fan")
    p.add_argument("--degree", required=True)
    p.add_argument("--section", help="lattice vector z with <z,R>=1, comma separated")
    p.set_defaults(func=cmd_downgrade)

    p = sub.add_parser("dfan-check", help="validate a divisorial fan")
    p.add_argument("dfan")
    p.set_defaults(func=cmd_dfan_check)

    p = sub.add_parser("decomp-check", help="check a Minkowski decomposition for admissibility")
    p.add_argument("input")
    p.set_defaults(func=cmd_decomp_check)

    p = sub.add_parser("family-build", help="assemble family data and its forbidden locus")
    p.add_argument("dfan")
    p.add_argument("decomps")
    p.set_defaults(func=cmd_family_build)

    p = sub.add_parser("family-fiber", help="fiber of a family at given parameter values")
    p.add_argument("dfan")
    p.add_argument("decomps")
    p.add_argument("--lambda", dest="lam", required=True, help='JSON object {"0,1": "1"}')
    p.add_argument("--verify", action="store_true", help="verify properness of every fiber divisor")
    p.set_defaults(func=cmd_family_fiber)

    p = sub.add_parser("family-sing", help="singularity models of the general fiber")
    p.add_argument("input")
    p.set_defaults(func=cmd_family_sing)

    p = sub.add_parser("ks", help="Kodaira-Spencer cocycle of a one-parameter decomposition")
    p.add_argument("input", help="fan (toric mode) or divisorial fan (general mode)")
    p.add_argument("decomp")
    p.add_argument("--degree", help="toric mode: degree vector")
    p.add_argument("--section-ray", type=int, help="toric mode: ray index used as section")
    p.add_argument("--point", default="0", help="general mode: deformed point")
    p.set_defaults(func=cmd_ks)

    p = sub.add_parser("t1", help="dimension of the infinitesimal deformations per degree")
    p.add_argument("fan")
    p.add_argument("--degree", action="append", required=True)
    p.set_defaults(func=cmd_t1)

    p = sub.add_parser("t1-span", help="spanning deformations and their cocycles")
    p.add_argument("fan")
    p.add_argument("--degree", required=True)
    p.add_argument("--ray", type=int)
    p.add_argument("--component", type=int, help="component identified by its smallest ray index")
    p.set_defaults(func=cmd_t1_span)

    p = sub.add_parser("upgrade", help="total space divisor of a one-parameter deformation")
    p.add_argument("input", help="JSON with 'cone' and two 'summands'")
    p.add_argument("--degree", required=True)
    p.add_argument("--section")
    p.set_defaults(func=cmd_upgrade)

    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(io.dumps({"error": {"kind": "input", "message": str(exc)}}), file=sys.stderr)
        return 2
    except DomainError as exc:
        print(io.dumps({"error": {"kind": type(exc).__name__, "message": str(exc)}}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
