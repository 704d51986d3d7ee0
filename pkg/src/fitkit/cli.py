"""Batch job runner: parse a job document, run tasks, emit a canonical report.

A job document is a single JSON object::

    {
      "ring": {"variables": ["x","y","z"], "field": "Q", "order": "grevlex"},
      "quotient": ["x*y", "x*z", "y*z"],          // optional
      "objects": { "A": {"type": "matrix", ...}, ... },
      "tasks":   [ {"command": "minors", "arguments": {...}, "output_name": "I2"} ]
    }

``field`` is ``"Q"`` or ``{"prime": p}``; ``order`` is ``grevlex`` (default)
or ``lex``.  Objects may override the document ring with their own ``ring``
/ ``quotient`` keys.  Object types and their fields:

    matrix    rows, cols, entries (row-major list of polynomial strings)
    ideal     generators (list of polynomial strings)
    module    presentation (a matrix spec)
    complex   orientation, lowest_index, ranks, differentials (list of
              row-major string lists)
    scheme    ideal (list of polynomial strings; always over the plain ring)
    chainmap  source, target (names of complex objects), components
              (map from degree to matrix spec)

Commands: minors, determinantal, fitting-module, fitting-complex,
underline-fitting, resolve, minimalize, sing, sing-i, pd-locus, bn,
liftable-rank, qis-check, exact-at, dim, rank.

Reports are byte-identical across runs on the same input: ideals are
rendered as sorted lists of monic reduced-Groebner-basis generators and no
timing data is included unless ``--timing`` is passed.  Exit codes:
0 success, 2 input error, 3 step budget exceeded, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .complexes import ChainMap, FreeComplex, fitting_ideal, is_exact_at, is_quasi_iso, underline_fitting_ideal
from .errors import BudgetExceededError, FitkitError, InputError
from .fields import prime_field, rationals
from .groebner import Ideal, krull_dimension, set_default_budget, get_default_budget
from .loci import (
    AffineScheme,
    PushforwardComplex,
    brill_noether_ideal,
    determinantal_scheme,
    higher_singular_locus,
    liftable_sections_rank,
    singular_locus,
)
from .matrices import PolyMatrix, minors_ideal
from .parsing import parse_polynomial
from .resolutions import FpModule, classical_fitting, free_resolution, generic_rank, minimalize, pd_locus
from .rings import QuotientSpec, RingSpec, ambient_ring


def _need(mapping, key, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise InputError(f"missing {key!r} in {where}")
    return mapping[key]


def _parse_field(spec, where):
    if spec == "Q":
        return rationals()
    if isinstance(spec, dict) and "prime" in spec:
        try:
            return prime_field(int(spec["prime"]))
        except FitkitError as e:
            raise InputError(f"bad field in {where}: {e}") from None
    raise InputError(f"bad field spec in {where}: {spec!r} (use \"Q\" or {{\"prime\": p}})")


def _parse_ring(spec, where):
    variables = _need(spec, "variables", where)
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise InputError(f"{where}: variables must be a list of strings")
    field = _parse_field(spec.get("field", "Q"), where)
    order = spec.get("order", "grevlex")
    try:
        return RingSpec(tuple(variables), field, order)
    except FitkitError as e:
        raise InputError(f"{where}: {e}") from None


def _parse_poly(text, ring, where):
    if not isinstance(text, str):
        raise InputError(f"{where}: expected a polynomial string, got {text!r}")
    try:
        return parse_polynomial(text, ring)
    except FitkitError as e:
        raise InputError(f"{where}: {e}") from None


def _parse_carrier(spec, default_carrier, where):
    """Resolve the carrier for one object: document default or override."""
    if "ring" in spec:
        ring = _parse_ring(spec["ring"], f"{where}.ring")
        quotient = spec.get("quotient")
    elif "quotient" in spec:
        ring = ambient_ring(default_carrier)
        quotient = spec["quotient"]
    else:
        return default_carrier
    if quotient is None:
        return ring
    if not isinstance(quotient, list):
        raise InputError(f"{where}: quotient must be a list of polynomial strings")
    rels = tuple(_parse_poly(s, ring, f"{where}.quotient") for s in quotient)
    return QuotientSpec(ring, rels)


def _parse_matrix(spec, carrier, where) -> PolyMatrix:
    rows = _need(spec, "rows", where)
    cols = _need(spec, "cols", where)
    entries = _need(spec, "entries", where)
    if not isinstance(entries, list):
        raise InputError(f"{where}: entries must be a list")
    ring = ambient_ring(carrier)
    polys = [_parse_poly(s, ring, f"{where}.entries[{i}]") for i, s in enumerate(entries)]
    try:
        return PolyMatrix(carrier, int(rows), int(cols), polys)
    except FitkitError as e:
        raise InputError(f"{where}: {e}") from None


def _parse_object(name, spec, default_carrier, objects):
    where = f"objects.{name}"
    kind = _need(spec, "type", where)
    carrier = _parse_carrier(spec, default_carrier, where)
    ring = ambient_ring(carrier)
    if kind == "matrix":
        return _parse_matrix(spec, carrier, where)
    if kind == "ideal":
        gens = _need(spec, "generators", where)
        return Ideal(carrier, tuple(_parse_poly(s, ring, where) for s in gens))
    if kind == "module":
        pres = _parse_matrix(_need(spec, "presentation", where), carrier, f"{where}.presentation")
        return FpModule(carrier, pres)
    if kind == "scheme":
        eqs = _need(spec, "ideal", where)
        try:
            return AffineScheme.from_equations(ring, [_parse_poly(s, ring, where) for s in eqs])
        except FitkitError as e:
            raise InputError(f"{where}: {e}") from None
    if kind == "complex":
        orientation = _need(spec, "orientation", where)
        lowest = int(spec.get("lowest_index", 0))
        ranks = _need(spec, "ranks", where)
        diff_specs = _need(spec, "differentials", where)
        if not isinstance(ranks, list) or not isinstance(diff_specs, list):
            raise InputError(f"{where}: ranks and differentials must be lists")
        diffs = []
        for j, entries in enumerate(diff_specs):
            if orientation == "chain":
                r, c = int(ranks[j]), int(ranks[j + 1])
            else:
                r, c = int(ranks[j + 1]), int(ranks[j])
            diffs.append(
                _parse_matrix(
                    {"rows": r, "cols": c, "entries": entries},
                    carrier,
                    f"{where}.differentials[{j}]",
                )
            )
        try:
            return FreeComplex(carrier, orientation, lowest, [int(r) for r in ranks], diffs)
        except FitkitError as e:
            raise InputError(f"{where}: {e}") from None
    if kind == "chainmap":
        src = objects.get(_need(spec, "source", where))
        tgt = objects.get(_need(spec, "target", where))
        if not isinstance(src, FreeComplex) or not isinstance(tgt, FreeComplex):
            raise InputError(f"{where}: source and target must name complex objects defined earlier")
        comps = {}
        for deg, mspec in _need(spec, "components", where).items():
            comps[int(deg)] = _parse_matrix(mspec, src.carrier, f"{where}.components[{deg}]")
        try:
            return ChainMap(src, tgt, comps)
        except FitkitError as e:
            raise InputError(f"{where}: {e}") from None
    raise InputError(f"{where}: unknown object type {kind!r}")


def _render_ideal(ideal: Ideal) -> dict:
    return {"ideal": sorted(str(g) for g in ideal.groebner())}


def _render_resolution(res) -> dict:
    return {
        "ranks": list(res.complex.ranks),
        "differentials": [d.render() for d in res.complex.differentials],
        "truncated": res.truncated,
    }


def _expect_type(obj, cls, command):
    if not isinstance(obj, cls):
        want = cls.__name__ if not isinstance(cls, tuple) else "/".join(c.__name__ for c in cls)
        raise InputError(f"command {command!r} needs a {want} object, got {type(obj).__name__}")
    return obj


def _run_task(command: str, args: dict, objects: dict):
    def obj():
        name = _need(args, "object", f"arguments of {command}")
        if name not in objects:
            raise InputError(f"undefined object {name!r}")
        return objects[name]

    if command == "minors":
        M = _expect_type(obj(), PolyMatrix, command)
        return _render_ideal(minors_ideal(M, int(_need(args, "k", command))))
    if command == "determinantal":
        M = _expect_type(obj(), PolyMatrix, command)
        return _render_ideal(determinantal_scheme(M, int(_need(args, "k", command))))
    if command == "fitting-module":
        M = _expect_type(obj(), FpModule, command)
        return _render_ideal(classical_fitting(M, int(_need(args, "k", command))))
    if command == "fitting-complex":
        C = _expect_type(obj(), FreeComplex, command)
        return _render_ideal(fitting_ideal(C, int(_need(args, "i", command)), int(_need(args, "k", command))))
    if command == "underline-fitting":
        C = _expect_type(obj(), FreeComplex, command)
        return _render_ideal(
            underline_fitting_ideal(C, int(_need(args, "i", command)), int(_need(args, "k", command)))
        )
    if command == "resolve":
        M = _expect_type(obj(), FpModule, command)
        return _render_resolution(free_resolution(M, int(_need(args, "length", command))))
    if command == "minimalize":
        M = _expect_type(obj(), FpModule, command)
        res = free_resolution(M, int(_need(args, "length", command)))
        return _render_resolution(minimalize(res))
    if command == "sing":
        X = _expect_type(obj(), AffineScheme, command)
        dim = args.get("dim")
        return _render_ideal(singular_locus(X, None if dim is None else int(dim)))
    if command == "sing-i":
        X = _expect_type(obj(), AffineScheme, command)
        return _render_ideal(
            higher_singular_locus(X, int(_need(args, "i", command)), int(_need(args, "length", command)))
        )
    if command == "pd-locus":
        M = _expect_type(obj(), FpModule, command)
        rank = args.get("rank")
        return _render_ideal(
            pd_locus(M, int(_need(args, "d", command)), None if rank is None else int(rank))
        )
    if command == "bn":
        C = _expect_type(obj(), FreeComplex, command)
        E = PushforwardComplex(C)
        return _render_ideal(brill_noether_ideal(E, int(_need(args, "k", command))))
    if command == "liftable-rank":
        C = _expect_type(obj(), FreeComplex, command)
        k = liftable_sections_rank(PushforwardComplex(C))
        return {"rank_index": k, "locally_free_rank": None if k is None else k + 1}
    if command == "qis-check":
        f = _expect_type(obj(), ChainMap, command)
        return {"value": is_quasi_iso(f)}
    if command == "exact-at":
        C = _expect_type(obj(), FreeComplex, command)
        return {"value": is_exact_at(C, int(_need(args, "i", command)))}
    if command == "dim":
        o = obj()
        if isinstance(o, AffineScheme):
            return {"value": o.dimension}
        ideal = _expect_type(o, Ideal, command)
        return {"value": krull_dimension(ideal)}
    if command == "rank":
        M = _expect_type(obj(), FpModule, command)
        return {"value": generic_rank(M)}
    raise InputError(f"unknown command {command!r}")


def run_job(document: dict, seed: int = 0, timing: bool = False) -> tuple:
    """Execute a parsed job document; returns (report_dict, exit_code)."""
    if not isinstance(document, dict):
        raise InputError("the job document must be a JSON object")
    ring = _parse_ring(_need(document, "ring", "document"), "document.ring")
    carrier = ring
    if document.get("quotient"):
        rels = tuple(
            _parse_poly(s, ring, "document.quotient") for s in document["quotient"]
        )
        carrier = QuotientSpec(ring, rels)
    objects: dict = {}
    for name, spec in document.get("objects", {}).items():
        objects[name] = _parse_object(name, spec, carrier, objects)
    tasks = document.get("tasks", [])
    if not isinstance(tasks, list):
        raise InputError("tasks must be a list")
    report_tasks = []
    exit_code = 0
    for idx, task in enumerate(tasks):
        command = _need(task, "command", f"tasks[{idx}]")
        args = task.get("arguments", {})
        name = task.get("output_name", f"task{idx}")
        entry = {"output_name": name, "command": command}
        started = time.perf_counter()
        try:
            entry["result"] = _run_task(command, args, objects)
            entry["ok"] = True
        except InputError:
            raise
        except BudgetExceededError as e:
            entry["ok"] = False
            entry["error"] = str(e)
            exit_code = 3
        except FitkitError as e:
            entry["ok"] = False
            entry["error"] = str(e)
        if timing:
            entry["elapsed_ms"] = round((time.perf_counter() - started) * 1000, 3)
        report_tasks.append(entry)
    report = {
        "metadata": {"tool": "fitkit", "version": __version__, "seed": seed},
        "tasks": report_tasks,
    }
    return report, exit_code


def _format_text(report: dict) -> str:
    lines = [f"fitkit {report['metadata']['version']} (seed {report['metadata']['seed']})"]
    for task in report["tasks"]:
        head = f"{task['output_name']} [{task['command']}]"
        if not task["ok"]:
            lines.append(f"{head}: ERROR: {task['error']}")
            continue
        result = task["result"]
        if "ideal" in result:
            body = "(" + ", ".join(result["ideal"]) + ")" if result["ideal"] else "(0)"
        elif "ranks" in result:
            body = f"ranks {result['ranks']}, truncated={result['truncated']}"
        elif "rank_index" in result:
            body = f"rank_index={result['rank_index']}, locally_free_rank={result['locally_free_rank']}"
        else:
            body = str(result["value"])
        lines.append(f"{head}: {body}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="fitkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    run = sub.add_parser("run", help="run a job document")
    run.add_argument("job", help="path to the job file, or - for stdin")
    run.add_argument("--output", help="write the report here instead of stdout")
    run.add_argument("--budget", type=int, default=None, help="Groebner step budget")
    run.add_argument("--seed", type=int, default=0, help="seed recorded in the report")
    run.add_argument("--format", choices=("json", "text"), default="json")
    run.add_argument("--timing", action="store_true", help="include per-task timings (breaks byte-stability)")
    ns = parser.parse_args(argv)

    try:
        raw = sys.stdin.read() if ns.job == "-" else open(ns.job, "r", encoding="utf-8").read()
    except OSError as e:
        print(f"error: cannot read job: {e}", file=sys.stderr)
        return 2
    try:
        document = json.loads(raw)
    except json.JSONDecodeError as e:
        print(f"error: job is not valid JSON: {e}", file=sys.stderr)
        return 2

    saved_budget = get_default_budget()
    if ns.budget is not None:
        set_default_budget(ns.budget)
    try:
        report, code = run_job(document, seed=ns.seed, timing=ns.timing)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FitkitError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 4
    finally:
        set_default_budget(saved_budget)

    if ns.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _format_text(report)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
