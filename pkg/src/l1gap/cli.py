"""Command line entry point: ``l1gap analyze|witness|construct|check``.

Exit codes: 0 success (including NO GAP verdicts), 1 input error,
2 inconclusive (a box or Dirichlet cap was hit).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .checks import check_scenario
from .constructors import (GradedSpace, direct_sum, graded_tensor, image_null, lattice_direct_sum,
                           lattice_tensor, tensor, transport_dual)
from .errors import Inconclusive, L1GapError, ParseError
from .field import parse_element
from .gap import analyze, dirichlet_witness
from .linalg import Matrix
from .scenario import (Scenario, dumps, inconclusive_to_obj, load_scenario, parse_field,
                       parse_presentation, report_to_obj, serialize_scenario,
                       summary_text, witness_to_obj, _matrix_rows, _require)
from .seminorm import SeminormedSpace, null_space

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


def _eps_list(text: str) -> tuple:
    try:
        vals = tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad eps list {text!r}") from None
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("eps levels must be positive rationals")
    return vals


def _with_options(sc: Scenario, box=None, eps=None) -> Scenario:
    return Scenario(sc.name, sc.space, sc.lattice_generators,
                    sc.box_bound if box is None else box,
                    sc.eps_levels if eps is None else eps, sc.nparam_cap)


def _write(path, text: str):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    scenarios = [_with_options(load_scenario(f), args.box, args.eps) for f in args.files]
    reports, code = [], EXIT_OK
    for sc in scenarios:
        try:
            rep = analyze(sc.space, sc.lattice(), sc.box_bound, sc.eps_levels, sc.nparam_cap)
        except Inconclusive as exc:
            reports.append(inconclusive_to_obj(sc, exc))
            print(f"scenario {sc.name}: INCONCLUSIVE ({exc})", file=sys.stderr)
            code = EXIT_INCONCLUSIVE
            continue
        reports.append(report_to_obj(rep, sc))
        if not args.json:
            print(summary_text(rep, sc))
    payload = reports[0] if len(reports) == 1 else reports
    if args.output:
        _write(args.output, dumps(payload))
    if args.json:
        sys.stdout.write(dumps(payload))
    return code


def cmd_witness(args) -> int:
    sc = load_scenario(args.file)
    parts = [p for p in args.alpha.split(",")]
    if len(parts) != sc.dim:
        raise ParseError(f"alpha needs {sc.dim} coordinates, got {len(parts)}", "--alpha")
    alpha = tuple(parse_element(p.strip(), sc.field) for p in parts)
    w = dirichlet_witness(sc.space, alpha, args.N, sc.lattice())
    obj = witness_to_obj(w)
    if args.json:
        sys.stdout.write(dumps(obj))
    else:
        print(f"q={w.q} p={list(w.p)} norm {obj['norm']} (~{float(w.norm):.6g}) bound {obj['bound']}")
    return EXIT_OK


def _load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from None


def load_map(path, field=None) -> Matrix:
    obj = _load_json(path)
    f = parse_field(_require(obj, "field", "$")) if "field" in obj or field is None else field
    rows = _matrix_rows(_require(obj, "matrix", "$"), f, obj.get("cols"), "matrix")
    ncols = obj.get("cols", len(rows[0]) if rows else 0)
    return Matrix(rows, ncols, f)


def load_graded(path) -> GradedSpace:
    obj = _load_json(path)
    f = parse_field(_require(obj, "field", "$"))
    degrees = []
    for i, deg in enumerate(_require(obj, "degrees", "$")):
        dim = _require(deg, "dim", f"degrees[{i}]")
        degrees.append(parse_presentation(_require(deg, "presentation", f"degrees[{i}]"), f, dim,
                                          f"degrees[{i}].presentation"))
    return GradedSpace(tuple(degrees))


def cmd_construct(args) -> int:
    op = args.op
    if op in ("sum", "tensor"):
        if len(args.files) < 2:
            raise ParseError(f"--op {op} needs at least two scenario files")
        scs = [load_scenario(f) for f in args.files]
        combine = direct_sum if op == "sum" else tensor
        lcombine = lattice_direct_sum if op == "sum" else lattice_tensor
        space, lat = scs[0].space, scs[0].lattice()
        standard = all(s.lattice_generators is None for s in scs)
        for s in scs[1:]:
            space = combine(space, s.space)
            lat = lcombine(lat, s.lattice())
        gens = None if standard else lat.generators
        name = (" + " if op == "sum" else " x ").join(s.name for s in scs)
        out = Scenario(name, space, gens)
    elif op == "graded":
        if len(args.files) != 2 or args.degree is None:
            raise ParseError("--op graded needs two graded files and --degree")
        g1, g2 = load_graded(args.files[0]), load_graded(args.files[1])
        space = graded_tensor(g1, g2, args.degree)
        out = Scenario(f"graded degree {args.degree}", space)
    elif op in ("transport", "image"):
        if args.map is None or len(args.files) != 1:
            raise ParseError(f"--op {op} needs --map and one scenario file")
        sc = load_scenario(args.files[0])
        m = load_map(args.map, sc.field)
        if op == "transport":
            out = Scenario(f"{sc.name} transported", transport_dual(m, sc.space))
        else:
            img = image_null(m, null_space(sc.space))
            out = Scenario(f"{sc.name} image", SeminormedSpace.primal(img))
    else:  # argparse restricts choices
        raise ParseError(f"unknown op {op}")
    _write(args.output, serialize_scenario(out))
    return EXIT_OK


def cmd_check(args) -> int:
    sc = load_scenario(args.file)
    results = check_scenario(sc, samples=args.samples, seed=args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + (f"  ({r.detail})" if r.detail else ""))
    return EXIT_OK if all(r.passed for r in results) else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="l1gap", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"l1gap {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="decide gap at zero and certify the verdict")
    a.add_argument("files", nargs="+")
    a.add_argument("--box", type=int, default=None, help="enumeration box bound")
    a.add_argument("--eps", type=_eps_list, default=None, help="comma separated eps levels, e.g. 1/4,1/32")
    a.add_argument("-o", "--output", help="write the JSON report here")
    a.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("witness", help="one Dirichlet witness for a null class")
    w.add_argument("file")
    w.add_argument("--alpha", required=True, help="comma separated coordinates")
    w.add_argument("--N", type=int, required=True)
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("construct", help="build a scenario from others")
    c.add_argument("--op", required=True, choices=["sum", "tensor", "graded", "transport", "image"])
    c.add_argument("files", nargs="+")
    c.add_argument("--map", help="map file for transport/image")
    c.add_argument("--degree", type=int)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("check", help="run invariant self-tests on a scenario")
    k.add_argument("file")
    k.add_argument("--samples", type=int, default=20)
    k.add_argument("--seed", type=int, default=0)
    k.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (L1GapError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
