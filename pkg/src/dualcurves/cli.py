"""Command-line interface.

Exit codes: 0 success, 1 a checked mathematical claim failed, 2 input error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bundles import BUNDLES
from .combinat import brute_force_connectivity, connectivity_bounds, enumerate_realizations, vertex_connectivity
from .combinat import SearchCapError
from .fileio import read_components, read_graph, read_ideal, read_skew_matrix
from .graphcurve import GraphCurveJob, certify_graph_curve
from .groebner import ResourceLimitError, resource_caps
from .ideals import pfaffian_ideal
from .invariants import hilbert_data, homological_profile
from .ring import GREVLEX, LEX, FieldSpec, ParseError
from .schemes import (
    PreconditionError,
    dual_graph_of_components,
    gorenstein_connectivity_check,
    hartshorne_check,
    lyubeznik_complex,
    search_line_arrangement,
    subadditivity_check,
)


EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

# filled in after parsing: parents share action objects, so set_defaults would leak into subcommands
GLOBAL_DEFAULTS = {"field": None, "order": "grevlex", "seed": 0, "json": False, "max_pairs": None,
                   "max_degree": None, "verbose": False}


class CheckFailed(Exception):
    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _field(args, default: bool = True) -> FieldSpec | None:
    if args.field is None:
        field = FieldSpec.prime(32003) if default else None
    else:
        field = FieldSpec.parse(args.field)
    if field is not None:
        _warn_characteristic(field)
    return field


_warned = set()


def _warn_characteristic(field: FieldSpec) -> None:
    if field.characteristic and field not in _warned:
        _warned.add(field)
        print(f"warning: computing over {field}; characteristic-dependent invariants may differ from those over Q", file=sys.stderr)


def _ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


# ---------------------------------------------------------------------------
# commands (each returns (result, ok))


def cmd_gb(args):
    I = read_ideal(_read(args.file), _field(args, default=False))
    _warn_characteristic(I.ring.field)
    order = LEX if args.order == "lex" else GREVLEX
    gb = I.gb(order)
    human = "\n".join(str(g) for g in gb.elements)
    return {"ring": I.ring.header(), "order": args.order, "basis": [str(g) for g in gb.elements]}, True, human


def cmd_profile(args):
    I = read_ideal(_read(args.file), _field(args, default=False))
    _warn_characteristic(I.ring.field)
    prof = homological_profile(I, seed=args.seed)
    hd = hilbert_data(I)
    res = prof.as_json()
    res["hilbert_numerator"] = list(hd.hilbert_numerator)
    human = "\n".join(
        [f"{k}: {v}" for k, v in res.items() if k not in ("betti", "hilbert_numerator")] + [prof.betti.format()]
    )
    return res, True, human


def cmd_dualgraph(args):
    cs = read_components(_read(args.file), _field(args, default=False))
    _warn_characteristic(cs.ring.field)
    rep = dual_graph_of_components(cs, with_profiles=not args.no_profiles)
    res = rep.as_json()
    ok = True
    if rep.union_profile is not None:
        res["hartshorne"] = hartshorne_check(cs, rep)
        ok = res["hartshorne"]["consistent"]
    if args.subadditivity:
        res["subadditivity"] = subadditivity_check(cs, reduced=args.reduced)
        ok = ok and res["subadditivity"]["pass"]
    if args.gorenstein:
        res["gorenstein"] = gorenstein_connectivity_check(cs, deep=args.deep)
        ok = ok and res["gorenstein"]["pass"]
    edges = " ".join(f"{u}{'-'}{v}" for u, v in sorted(rep.dual_graph.edges))
    human = f"components: {len(cs)}\nunion dimension: {rep.union_dim}\ndual graph edges: {edges or '(none)'}"
    return res, ok, human


def cmd_lyubeznik(args):
    cs = read_components(_read(args.file), _field(args, default=False))
    _warn_characteristic(cs.ring.field)
    faces = lyubeznik_complex(cs)
    res = {"faces": [list(f) for f in faces]}
    return res, True, "\n".join(" ".join(map(str, f)) for f in faces)


def cmd_graphcurve(args):
    G = read_graph(_read(args.graph))
    job = GraphCurveJob(G, d=args.d, e=args.e, field=_field(args), seed=args.seed)
    rep = certify_graph_curve(job, check_reduced=not args.skip_reduced, explicit_veronese=args.explicit_veronese)
    lines = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in {**rep["items"], **rep["checks"]}.items()]
    human = f"d = {rep['d']}, e = {rep['e']}, N = {rep['N']}\n" + "\n".join(lines)
    return rep, rep["pass"], human


def cmd_pfaffian(args):
    M = read_skew_matrix(_read(args.file), _field(args, default=False))
    _warn_characteristic(M.ring.field)
    I = pfaffian_ideal(M)
    prof = homological_profile(I, seed=args.seed)
    res = {"pfaffians": [str(g) for g in I.gens], "profile": prof.as_json()}
    human = "\n".join(str(g) for g in I.gens) + "\n" + prof.betti.format()
    return res, True, human


def cmd_connectivity(args):  # purely combinatorial
    G = read_graph(_read(args.graph))
    k = vertex_connectivity(G)
    res = {"graph": G.as_json(), "kappa": k}
    ok = True
    if G.s <= 10:
        res["kappa_brute_force"] = brute_force_connectivity(G)
        ok = res["kappa_brute_force"] == k
    return res, ok, f"kappa = {k}"


def cmd_bounds(args):
    degs = _ints(args.degrees)
    b = connectivity_bounds(args.r, args.rprime, _ints(args.regs), (degs, args.n) if degs else None)
    res = b.as_json()
    human = "\n".join(f"{k}: {v}" for k, v in res.items() if v is not None)
    return res, True, human


def cmd_realize(args):
    G = read_graph(_read(args.graph))
    found = enumerate_realizations(G, args.dim, args.max_vertices)
    res = {"graph": G.as_json(), "d": args.dim, "count": len(found), "complexes": [C.as_json() for C in found]}
    human = f"{len(found)} realization(s)\n" + "\n".join(
        " | ".join(" ".join(map(str, f)) for f in C.facets) for C in found
    )
    return res, True, human


def cmd_linesearch(args):
    G = read_graph(_read(args.graph))
    rep = search_line_arrangement(G, args.ambient, seed=args.seed, tries=args.tries, field=_field(args))
    res = rep.as_json()
    human = f"success: {rep.success} after {rep.attempts} attempt(s)"
    return res, True, human


def cmd_verify(args):
    if args.bundle not in BUNDLES:
        raise ParseError(f"unknown bundle {args.bundle!r}; choose from {', '.join(BUNDLES)}")
    field = _field(args)
    rep = BUNDLES[args.bundle](field, args.seed)
    human = "\n".join(f"{k}: {'pass' if v else 'FAIL'}" for k, v in rep["checks"].items())
    return rep, rep["pass"], human


COMMANDS = {
    "gb": cmd_gb,
    "profile": cmd_profile,
    "dualgraph": cmd_dualgraph,
    "lyubeznik": cmd_lyubeznik,
    "graphcurve": cmd_graphcurve,
    "pfaffian": cmd_pfaffian,
    "connectivity": cmd_connectivity,
    "bounds": cmd_bounds,
    "realize": cmd_realize,
    "linesearch": cmd_linesearch,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting a flag given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--field", help="Q or a prime (default: file header, else 32003)")
    common.add_argument("--order", choices=["grevlex", "lex"])
    common.add_argument("--seed", type=int)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--max-pairs", type=int)
    common.add_argument("--max-degree", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="dualcurves", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis of an ideal file")
    p.add_argument("file")
    p = sub.add_parser("profile", parents=[common], help="Betti table, regularity, depth, ACM/Gorenstein")
    p.add_argument("file")
    p = sub.add_parser("dualgraph", parents=[common], help="dual graph of a component-set file")
    p.add_argument("file")
    p.add_argument("--no-profiles", action="store_true")
    p.add_argument("--subadditivity", action="store_true")
    p.add_argument("--reduced", action="store_true", help="components are reduced (check reg <= degree)")
    p.add_argument("--gorenstein", action="store_true", help="check connectivity bounds of a Gorenstein union")
    p.add_argument("--deep", action="store_true")
    p = sub.add_parser("lyubeznik", parents=[common], help="faces of the Lyubeznik complex")
    p.add_argument("file")
    p = sub.add_parser("graphcurve", parents=[common], help="build and certify a curve with given dual graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--explicit-veronese", action="store_true")
    p.add_argument("--skip-reduced", action="store_true")
    p = sub.add_parser("pfaffian", parents=[common], help="submaximal Pfaffians of a skew-matrix file")
    p.add_argument("file")
    p = sub.add_parser("connectivity", parents=[common], help="vertex connectivity of a graph file")
    p.add_argument("--graph", required=True)
    p = sub.add_parser("bounds", parents=[common], help="connectivity bounds from regularities")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--rprime", type=int, required=True)
    p.add_argument("--regs", help="comma-separated component regularities")
    p.add_argument("--degrees", help="comma-separated degrees of the hypersurfaces")
    p.add_argument("--n", type=int, default=3, help="ambient projective dimension for --degrees")
    p = sub.add_parser("realize", parents=[common], help="pure complexes with a given dual graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-vertices", type=int, default=None)
    p = sub.add_parser("linesearch", parents=[common], help="random line arrangement with a given dual graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--ambient", type=int, default=3)
    p.add_argument("--tries", type=int, default=200)
    p = sub.add_parser("verify", parents=[common], help="run a named regression bundle")
    p.add_argument("bundle", choices=sorted(BUNDLES))
    return parser


def _emit(args, command: str, status: str, result, human: str | None, out) -> None:
    if args.json:
        payload = {"command": command, "status": status, "result": result}
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif human is not None:
        out.write(human.rstrip() + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    _warned.clear()
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s: %(message)s")
    caps = {}
    if args.max_pairs is not None:
        caps["max_pairs"] = args.max_pairs
    if args.max_degree is not None:
        caps["max_degree"] = args.max_degree
    try:
        with resource_caps(**caps):
            result, ok, human = COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        _emit(args, args.command, "resource_limit", {"error": str(exc), "diagnostics": exc.diagnostics}, None, out)
        return EXIT_CAP
    except SearchCapError as exc:
        print(f"search cap exceeded: {exc} (frontier {exc.frontier})", file=sys.stderr)
        _emit(args, args.command, "resource_limit", {"error": str(exc), "diagnostics": {"frontier": exc.frontier}},
              None, out)
        return EXIT_CAP
    except (ParseError, PreconditionError, ValueError, ZeroDivisionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        _emit(args, args.command, "input_error", {"error": str(exc)}, None, out)
        return EXIT_INPUT
    _emit(args, args.command, "pass" if ok else "fail", result, human, out)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
