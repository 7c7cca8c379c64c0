"""Scenario files (JSON) and report serialization.

Every scalar travels as a string, ``"p/q"`` or ``"p/q+r/s*sqrt(d)"``, so no
binary float ever enters or leaves the pipeline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any

from . import __version__
from .errors import (NonPositiveWeight, NonSquarefree, ParseError, RaggedVectors,
                     UnknownFieldKind)
from .field import FieldDescriptor, _is_squarefree, format_element, parse_element
from .gap import DEFAULT_BOX, DEFAULT_CAP, DEFAULT_EPS, Gap, GapReport, Witness
from .linalg import IntegralLattice, Matrix, Subspace
from .seminorm import SeminormedSpace


@dataclass(frozen=True)
class Scenario:
    name: str
    space: SeminormedSpace
    lattice_generators: tuple | None = None  # None: standard lattice
    box_bound: int = DEFAULT_BOX
    eps_levels: tuple = DEFAULT_EPS
    nparam_cap: int = DEFAULT_CAP

    @property
    def field(self) -> FieldDescriptor:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def lattice(self) -> IntegralLattice:
        if self.lattice_generators is None:
            return IntegralLattice.standard(self.dim)
        return IntegralLattice.from_generators(self.lattice_generators, self.dim)


# -- parsing ---------------------------------------------------------------


def _require(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    if key not in obj:
        raise ParseError(f"missing key {key!r}", path)
    return obj[key]


def parse_field(obj: Any, path: str = "field") -> FieldDescriptor:
    kind = _require(obj, "kind", path)
    if kind == "rational":
        return FieldDescriptor.rational()
    if kind == "quadratic":
        d = _require(obj, "d", path)
        if not isinstance(d, int) or isinstance(d, bool) or not _is_squarefree(d):
            raise NonSquarefree(f"d = {d!r} is not a squarefree integer >= 2", f"{path}.d")
        return FieldDescriptor.quadratic(d)
    raise UnknownFieldKind(f"unknown field kind {kind!r}", f"{path}.kind")


def _element(text: Any, field: FieldDescriptor, path: str):
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise ParseError(f"field elements are strings, got {type(text).__name__}", path)
    try:
        return parse_element(text, field)
    except ParseError as exc:
        raise ParseError(str(exc), path) from None


def _vector(items: Any, field: FieldDescriptor, length: int | None, path: str) -> tuple:
    if not isinstance(items, list):
        raise ParseError("expected a list", path)
    if length is not None and len(items) != length:
        raise RaggedVectors(f"expected {length} entries, got {len(items)}", path)
    return tuple(_element(x, field, f"{path}[{i}]") for i, x in enumerate(items))


def _matrix_rows(items: Any, field: FieldDescriptor, ncols: int | None, path: str) -> list[tuple]:
    if not isinstance(items, list):
        raise ParseError("expected a list of rows", path)
    rows = []
    for i, r in enumerate(items):
        rows.append(_vector(r, field, ncols, f"{path}[{i}]"))
        if ncols is None:
            ncols = len(rows[0])
    return rows


def parse_presentation(obj: Any, field: FieldDescriptor, dim: int, path: str = "presentation") -> SeminormedSpace:
    kind = _require(obj, "kind", path)
    if kind == "dual":
        funcs = []
        items = _require(obj, "functionals", path)
        if not isinstance(items, list):
            raise ParseError("expected a list", f"{path}.functionals")
        for i, f in enumerate(items):
            fp = f"{path}.functionals[{i}]"
            coeffs = _vector(_require(f, "coeffs", fp), field, dim, f"{fp}.coeffs")
            weight = _element(_require(f, "weight", fp), field, f"{fp}.weight")
            if weight.sign() <= 0:
                raise NonPositiveWeight(f"weight {weight} is not positive", f"{fp}.weight")
            funcs.append((coeffs, weight))
        return SeminormedSpace.dual(field, dim, funcs)
    if kind == "primal":
        lift = None
        amb = dim
        if obj.get("lift") is not None:
            lift_rows = _matrix_rows(obj["lift"], field, dim, f"{path}.lift")
            lift = Matrix(lift_rows, dim, field)
            amb = lift.nrows
        rows = _matrix_rows(_require(obj, "degenerate", path), field, amb, f"{path}.degenerate")
        return SeminormedSpace.primal(Subspace.span(rows, amb, field), lift)
    raise ParseError(f"unknown presentation kind {kind!r}", f"{path}.kind")


def scenario_from_obj(obj: Any, default_name: str = "scenario") -> Scenario:
    if not isinstance(obj, dict):
        raise ParseError("scenario must be a JSON object")
    field = parse_field(_require(obj, "field", "$"))
    dim = _require(obj, "dim", "$")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError(f"dim must be a non-negative integer, got {dim!r}", "dim")
    space = parse_presentation(_require(obj, "presentation", "$"), field, dim)
    gens = None
    if obj.get("lattice") is not None:
        rows = _matrix_rows(obj["lattice"], field, dim, "lattice")
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if not x.is_rational():
                    raise ParseError("lattice generators must be rational", f"lattice[{i}][{j}]")
        gens = tuple(tuple(x.a for x in r) for r in rows)
    opts = obj.get("options") or {}
    box = opts.get("box_bound", DEFAULT_BOX)
    cap = opts.get("nparam_cap", DEFAULT_CAP)
    for key, val in (("box_bound", box), ("nparam_cap", cap)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise ParseError(f"{key} must be a positive integer", f"options.{key}")
    eps = DEFAULT_EPS
    if "eps_levels" in opts:
        raw = opts["eps_levels"]
        if not isinstance(raw, list) or not raw:
            raise ParseError("eps_levels must be a non-empty list", "options.eps_levels")
        eps = []
        for i, e in enumerate(raw):
            try:
                val = Fraction(str(e))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational {e!r}", f"options.eps_levels[{i}]") from None
            if val <= 0:
                raise ParseError("eps levels must be positive", f"options.eps_levels[{i}]")
            eps.append(val)
        eps = tuple(eps)
    return Scenario(obj.get("name", default_name), space, gens, box, eps, cap)


def parse_scenario(text: str, default_name: str = "scenario") -> Scenario:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return scenario_from_obj(obj, default_name)


def load_scenario(path) -> Scenario:
    from pathlib import Path

    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), path.stem)


def bundled_path(name: str):
    """Path to a scenario shipped with the package, e.g. ``sqrt2_line.json``."""
    return resources.files("l1gap") / "scenarios" / name


# -- serialization ---------------------------------------------------------


def _s(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    return format_element(x)


def _vec(v) -> list[str]:
    return [_s(x) for x in v]


def field_to_obj(field: FieldDescriptor) -> dict:
    return {"kind": "rational"} if field.is_rational else {"kind": "quadratic", "d": field.d}


def presentation_to_obj(space: SeminormedSpace) -> dict:
    if space.is_dual:
        return {"kind": "dual", "functionals": [
            {"coeffs": _vec(phi), "weight": _s(w)} for phi, w in space.presentation.functionals]}
    pres = space.presentation
    out = {"kind": "primal", "degenerate": [_vec(b) for b in pres.degenerate.basis]}
    if pres.lift is not None:
        out["lift"] = [_vec(r) for r in pres.lift.rows]
    return out


def scenario_to_obj(sc: Scenario) -> dict:
    obj = {
        "name": sc.name,
        "field": field_to_obj(sc.field),
        "dim": sc.dim,
        "presentation": presentation_to_obj(sc.space),
    }
    if sc.lattice_generators is not None:
        obj["lattice"] = [_vec(g) for g in sc.lattice_generators]
    obj["options"] = {
        "box_bound": sc.box_bound,
        "eps_levels": [str(e) for e in sc.eps_levels],
        "nparam_cap": sc.nparam_cap,
    }
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def serialize_scenario(sc: Scenario) -> str:
    return dumps(scenario_to_obj(sc))


def witness_to_obj(w: Witness) -> dict:
    return {
        "eps": None if w.eps is None else str(w.eps),
        "Nparam": w.Nparam,
        "q": w.q,
        "p": list(w.p),
        "lambdas": _vec(w.lambdas),
        "errors": _vec(w.errors),
        "alpha_N": _vec(w.alpha_N),
        "norm": _s(w.norm),
        "bound": _s(w.bound),
    }


def report_to_obj(report: GapReport, sc: Scenario) -> dict:
    v = report.verdict
    if isinstance(v, Gap):
        if v.vacuous:
            verdict = {"kind": "gap", "value": "inf", "vacuous": True,
                       "note": "no nonzero values: the semi-norm vanishes on the lattice"}
        else:
            verdict = {"kind": "gap", "value": _s(v.value), "vacuous": False,
                       "attaining_class": _vec(v.attaining_class),
                       "coefficients": list(v.coefficients)}
    else:
        verdict = {"kind": "no_gap", "alpha": _vec(v.alpha),
                   "alpha_choice": "first canonical null-space basis vector outside the span of its rational points",
                   "witnesses": [witness_to_obj(w) for w in v.witnesses]}
    return {
        "tool": {"name": "l1gap", "version": __version__},
        "scenario": sc.name,
        "field": field_to_obj(sc.field),
        "dim": sc.dim,
        "options": {"box_bound": sc.box_bound, "eps_levels": [str(e) for e in sc.eps_levels],
                    "nparam_cap": sc.nparam_cap,
                    "sum_norm": "max over summands (dual) / l1 sum (primal)"},
        "null_space": [_vec(b) for b in report.null_basis.basis],
        "bounded_dual": [_vec(b) for b in report.bounded_basis.basis],
        "rational_null_points": [_vec(b) for b in report.rational_basis.basis],
        "rational": report.rational,
        "verdict": verdict,
    }


def inconclusive_to_obj(sc: Scenario, exc: Exception) -> dict:
    return {
        "tool": {"name": "l1gap", "version": __version__},
        "scenario": sc.name,
        "verdict": {"kind": "inconclusive", "reason": str(exc)},
    }


def summary_text(report: GapReport, sc: Scenario) -> str:
    lines = [f"scenario {sc.name}: {sc.field}^{sc.dim}, "
             f"{'dual' if sc.space.is_dual else 'primal'} presentation",
             f"  null space dim {report.null_basis.dim}, rational points dim {report.rational_basis.dim}, "
             f"rational: {'yes' if report.rational else 'no'}"]
    v = report.verdict
    if isinstance(v, Gap):
        if v.vacuous:
            lines.append("  verdict: GAP (vacuous, semi-norm is zero on the lattice)")
        else:
            lines.append(f"  verdict: GAP, value {_s(v.value)} (~{float(v.value):.6g}) "
                         f"at class ({', '.join(_vec(v.attaining_class))})")
    else:
        lines.append(f"  verdict: NO GAP, {len(v.witnesses)} witnesses")
        for w in v.witnesses:
            lines.append(f"    eps {w.eps}: N={w.Nparam} q={w.q} class=({', '.join(_vec(w.alpha_N))}) "
                         f"norm {_s(w.norm)} (~{float(w.norm):.6g})")
    return "\n".join(lines)
