"""Command-line entry point: ``ising-lab <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails (identity mismatch,
zero inside the disk, violated bound) and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

from . import blockpaths, blockpoly, fptas, generators, partition, regions, zeros
from .errors import CertificateViolation, IsingLabError
from .generators import FamilySpec
from .graph import Graph, block_decomposition, girth, iter_bits, load_graph, max_degree, to_edge_list
from .zeros import write_atomic

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DIGITS = 15


class UsageError(Exception):
    pass


# -- parsing helpers ---------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """Parse "a+bi" with either part optional ("0.3", "-2i", "1e-3-2e-2i", "i")."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    s = re.sub(r"(^|[+-])j$", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def parse_number(text: str):
    """Exact Fraction for real decimals or ratios, complex otherwise."""
    try:
        return Fraction(text.strip())
    except ValueError:
        z = parse_complex(text)
        return Fraction(z.real) if z.imag == 0 else z


def parse_vertices(text: str | None) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _round(v: float) -> float:
    if math.isnan(v) or math.isinf(v):
        return v
    return float(f"{v:.{DIGITS}g}")


def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return None
        return _round(obj)
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, complex):
        return {"re": _round(obj.real), "im": _round(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def emit(doc, output: str | None = None) -> None:
    text = json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n"
    if output:
        write_atomic(output, text)
    else:
        sys.stdout.write(text)


def read_graph(path: str | None, named: str | None = None) -> Graph:
    if named:
        table = generators.named_graphs()
        if named not in table:
            raise UsageError(f"unknown named graph {named!r}; choose from {', '.join(sorted(table))}")
        return table[named]
    if not path:
        raise UsageError("a graph is required (--graph FILE or --named NAME)")
    try:
        with open(path) as fh:
            return load_graph(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _poly_doc(p) -> list[str]:
    return [str(c) for c in p.coeffs]


# -- subcommands -----------------------------------------------------------------


def cmd_exact(args) -> int:
    g = read_graph(args.graph, args.named)
    emit({"n": g.n, "m": g.m, "z_ising": _poly_doc(partition.z_ising_poly(g))}, args.output)
    return EXIT_OK


def cmd_even(args) -> int:
    g = read_graph(args.graph, args.named)
    p = partition.z_even_poly(g)
    emit({"n": g.n, "m": g.m, "z_even": _poly_doc(p), "cycle_space_dimension": partition.cycle_space_dimension(g)},
         args.output)
    return EXIT_OK


def cmd_verify_vdw(args) -> int:
    g = read_graph(args.graph, args.named)
    x = parse_complex(args.x)
    lhs, rhs = partition.vdw_transform_check(g, x)
    err = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    ok = err <= args.tol
    emit({"x": x, "lhs": lhs, "rhs": rhs, "relative_error": err, "holds": ok}, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_blocks(args) -> int:
    g = read_graph(args.graph, args.named)
    bd = block_decomposition(g)
    emit({
        "blocks": [sorted(iter_bits(b)) for b in bd.blocks],
        "block_vertices": [sorted(iter_bits(vm)) for vm in bd.block_vertices],
        "cut_vertices": sorted(bd.cut_vertices),
        "tree_edges": [list(t) for t in bd.tree_edges],
    }, args.output)
    return EXIT_OK


def cmd_block_paths(args) -> int:
    g = read_graph(args.graph, args.named)
    U = parse_vertices(args.U)
    fn = blockpaths.even_block_paths if args.even else blockpaths.enumerate_block_paths
    paths = fn(g, args.v, U)
    emit({
        "v": args.v,
        "U": U,
        "count": len(paths),
        "paths": [{
            "edges": bp.edge_ids(),
            "u": bp.endpoints[1],
            "blocks": [sorted(iter_bits(b)) for b in bp.block_sequence],
            "cut_vertices": list(bp.cut_sequence),
            "size": bp.size,
        } for bp in paths],
    }, args.output)
    return EXIT_OK


def cmd_verify_decomposition(args) -> int:
    g = read_graph(args.graph, args.named)
    if args.all:
        cases = []
        vs = range(g.n)
        for v in vs:
            others = [u for u in vs if u != v]
            cases.append(((), v))
            cases.extend(((u,), v) for u in others)
            cases.extend(((a, b), v) for i, a in enumerate(others) for b in others[i + 1:])
    else:
        if args.v is None:
            raise UsageError("--v is required unless --all is given")
        cases = [(tuple(parse_vertices(args.U)), args.v)]
    mismatches = []
    for U, v in cases:
        rep = blockpaths.verify_decomposition(g, U, v)
        if not rep.equal:
            mismatches.append({"U": list(U), "v": v, "lhs": _poly_doc(rep.lhs), "rhs": _poly_doc(rep.rhs)})
    doc = {"cases": len(cases), "mismatches": mismatches, "holds": not mismatches}
    if len(cases) == 1:
        rep = blockpaths.verify_decomposition(g, cases[0][0], cases[0][1])
        doc.update({"lhs": _poly_doc(rep.lhs), "rhs": _poly_doc(rep.rhs), "terms": rep.terms})
    emit(doc, args.output)
    return EXIT_OK if not mismatches else EXIT_FAIL


def cmd_walks(args) -> int:
    g = read_graph(args.graph, args.named)
    delta = args.delta or max(3, max_degree(g))
    gg = args.girth or girth(g)
    gf = blockpaths.walk_gf(g, args.v)
    reports = []
    ok = True
    for c in args.c:
        rep = blockpaths.walk_bound_check(g, args.v, c, delta, gg)
        ok &= rep.holds
        reports.append({"c": c, "value": rep.lhs, "bound": rep.rhs, "holds": rep.holds})
    emit({"v": args.v, "delta": delta, "girth": gg, "closed_trails": list(gf.counts), "checks": reports}, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_region(args) -> int:
    emit(regions.region_report(args.delta, args.girth), args.output)
    return EXIT_OK


def _family_from_args(args) -> FamilySpec:
    params = {}
    for key in ("n_min", "n_max", "d", "n", "count", "seed", "min_len", "max_len"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.sizes:
        params["sizes"] = parse_vertices(args.sizes)
    if args.family in ("all-connected", "complete") and args.delta is not None:
        params["delta"] = args.delta
    return FamilySpec(args.family, params)


def cmd_zeros(args) -> int:
    if args.graph or args.named:
        g = read_graph(args.graph, args.named)
        rec = zeros.fisher_zeros(g, args.tol)
        delta = args.delta or max(3, rec.delta)
        radius = regions.n_delta(delta) if args.radius is None else args.radius
        ok = rec.min_abs_x > radius - args.tol
        emit({"record": rec.to_json(), "radius": radius, "holds": ok}, args.output)
        if args.svg:
            zeros.emit_zero_map([rec], args.svg, delta)
        return EXIT_OK if ok else EXIT_FAIL
    if not args.family:
        raise UsageError("zeros needs --family or a graph")
    if args.delta is None:
        raise UsageError("zeros --family needs --delta")
    if args.radius is not None and not 0 <= args.radius < 1:
        raise UsageError("--radius must lie in [0, 1)")
    spec = _family_from_args(args)
    try:
        records, summary = zeros.scan_family(spec, args.delta, args.radius, args.tol, args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        write_atomic(args.out, zeros.records_to_jsonl(records))
    if args.svg:
        zeros.emit_zero_map(records, args.svg, args.delta)
    doc = summary.to_json()
    doc["seed"] = spec.params.get("seed")
    emit(doc, args.output)
    return EXIT_OK if not summary.violations and not summary.degree_violations else EXIT_FAIL


def cmd_fptas(args) -> int:
    g = read_graph(args.graph, args.named)
    if (args.b is None) == (args.x is None):
        raise UsageError("give exactly one of --b and --x")
    R = None if args.radius == "auto" else float(args.radius)
    if args.b is not None:
        b = parse_complex(args.b)
        est, cert = fptas.approx_z_ising(g, b, args.eps, R)
        exact = None
        if g.n <= 24:
            exact = partition.z_ising_eval(g, b)
    else:
        x = parse_complex(args.x)
        est, cert = fptas.approx_z_even(g, x, args.eps, R)
        exact = fptas.exact_z_even(g, x)
    doc = {
        "estimate_re": est.real,
        "estimate_im": est.imag,
        "m": cert.m,
        "R": cert.R,
        "theta": cert.theta,
        "error_bound": cert.error_bound,
        "exact": exact,
        "observed_error": None,
        "relative_error": None,
    }
    ok = True
    if exact is not None and exact != 0:
        log_err, rel_err = fptas.observed_error(est, exact)
        doc["observed_error"] = log_err
        doc["relative_error"] = rel_err
        ok = log_err <= cert.error_bound + 1e-12 and rel_err <= args.eps
    emit(doc, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def parse_invariant(text: str) -> blockpoly.Invariant:
    kind, _, rest = text.partition(":")
    opts = {}
    for part in filter(None, rest.split(",")):
        key, eq, val = part.partition("=")
        if not eq:
            raise UsageError(f"invariant option {part!r} must look like key=value")
        opts[key.strip()] = val.strip()
    try:
        if kind == "even":
            return blockpoly.EvenIndicator(parse_number(opts["x"]))
        if kind == "tutte":
            return blockpoly.TutteEvaluation(parse_number(opts["x"]), parse_number(opts["y"]))
        if kind == "hom":
            return blockpoly.HomDensity(read_graph(opts["target"]))
    except KeyError as exc:
        raise UsageError(f"invariant {kind!r} needs option {exc.args[0]}") from None
    raise UsageError(f"unknown invariant {kind!r}; use even:x=..., tutte:x=...,y=... or hom:target=FILE")


def cmd_block_poly(args) -> int:
    g = read_graph(args.graph, args.named)
    w = parse_invariant(args.invariant)
    gate = blockpoly.check_one_multiplicative(w, trials=args.gate_trials, seed=args.seed)
    doc = {"invariant": w.describe(), "gate_passed": gate.passed, "seed": args.seed}
    if not gate.passed:
        doc["gate_failures"] = gate.failures[:5]
        emit(doc, args.output)
        return EXIT_FAIL
    doc["z_block"] = blockpoly.z_block(g, w)
    if args.certify:
        try:
            a = float(args.certify.removeprefix("a="))
        except ValueError:
            raise UsageError(f"--certify expects a=VALUE, got {args.certify!r}") from None
        try:
            doc["certificate"] = blockpoly.certify_zero_free(g, w, a).to_json()
        except CertificateViolation as exc:
            doc["violation"] = str(exc)
            emit(doc, args.output)
            return EXIT_FAIL
        if args.gk:
            doc["gruber_kunz"] = blockpoly.gruber_kunz_check(g, w, a).to_json()
    elif args.gk:
        raise UsageError("--gk needs --certify a=VALUE")
    emit(doc, args.output)
    return EXIT_OK


def _slug(descriptor: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", descriptor).strip("_")


def generate_corpus(spec: FamilySpec, out: str) -> list[dict]:
    """Write one edge-list file per family member plus manifest.json; returns the manifest entries."""
    os.makedirs(out, exist_ok=True)
    entries = []
    for desc, g, seed in generators.family_graphs(spec):
        name = _slug(desc) + ".txt"
        write_atomic(os.path.join(out, name), to_edge_list(g))
        gg = girth(g)
        entries.append({
            "file": name,
            "descriptor": desc,
            "n": g.n,
            "m": g.m,
            "delta": max_degree(g),
            "girth": None if gg == math.inf else gg,
            "seed": seed,
        })
    manifest = {"family": spec.describe(), "count": len(entries), "graphs": entries}
    write_atomic(os.path.join(out, "manifest.json"), json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return entries


def cmd_corpus(args) -> int:
    spec = _family_from_args(args)
    try:
        entries = generate_corpus(spec, args.out)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit({"family": spec.describe(), "count": len(entries), "out": args.out})
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="edge-list or graph6 file")
    p.add_argument("--named", help="built-in graph name, e.g. C3, K4, petersen")


def _family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=generators.FAMILIES)
    p.add_argument("--n-min", type=int, dest="n_min")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--d", type=int, help="degree for random-regular")
    p.add_argument("--n", type=int, help="order for random-regular")
    p.add_argument("--sizes", help="comma-separated orders for random-regular")
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--min-len", type=int, dest="min_len")
    p.add_argument("--max-len", type=int, dest="max_len")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ising-lab", description="Exact and certified computations for Ising zeros.")
    parser.add_argument("--output", help="write the JSON report here (atomically) instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="Z_Ising(G; b) coefficients")
    _graph_args(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("even", help="Z_even(G; x) coefficients")
    _graph_args(p)
    p.set_defaults(func=cmd_even)

    p = sub.add_parser("verify-vdw", help="check the even-set / Ising change of variables at x")
    _graph_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify_vdw)

    p = sub.add_parser("blocks", help="block decomposition")
    _graph_args(p)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("block-paths", help="block paths from v to U")
    _graph_args(p)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--U", required=True, help="comma-separated vertices")
    p.add_argument("--even", action="store_true")
    p.set_defaults(func=cmd_block_paths)

    p = sub.add_parser("verify-decomposition", help="check the conditional decomposition identity")
    _graph_args(p)
    p.add_argument("--v", type=int)
    p.add_argument("--U", default="")
    p.add_argument("--all", action="store_true", help="every v and every U of size <= 2")
    p.set_defaults(func=cmd_verify_decomposition)

    p = sub.add_parser("walks", help="closed-trail counts and the walk bound")
    _graph_args(p)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--c", type=float, nargs="+", default=[0.3, 0.6, 0.9])
    p.add_argument("--delta", type=int)
    p.add_argument("--girth", type=int)
    p.set_defaults(func=cmd_walks)

    p = sub.add_parser("region", help="zero-free radii for max degree Delta")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--girth", type=int)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("zeros", help="Fisher zeros of a graph or a family scan")
    _graph_args(p)
    _family_args(p)
    p.add_argument("--delta", type=int)
    p.add_argument("--radius", type=float)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", help="JSON lines with one record per graph")
    p.add_argument("--svg", help="zero map")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("fptas", help="certified approximation of Z_even or Z_Ising")
    _graph_args(p)
    p.add_argument("--b")
    p.add_argument("--x")
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--radius", default="auto", help="'auto' or a number")
    p.set_defaults(func=cmd_fptas)

    p = sub.add_parser("block-poly", help="block polynomial, zero-freeness certificate, connected-subgraph comparison")
    _graph_args(p)
    p.add_argument("--invariant", required=True, help="even:x=V | tutte:x=V,y=V | hom:target=FILE")
    p.add_argument("--certify", help="a=VALUE with 0 < a < 1")
    p.add_argument("--gk", action="store_true")
    p.add_argument("--gate-trials", type=int, default=200, dest="gate_trials")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_block_poly)

    p = sub.add_parser("corpus", help="write a graph family as edge-list files plus manifest.json")
    _family_args(p)
    p.add_argument("--delta", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus" and not args.family:
        parser.error("corpus needs --family")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ising-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IsingLabError, ValueError) as exc:
        print(f"ising-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
