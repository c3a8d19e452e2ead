"""Command-line interface: ``sing2cob <command> [options]``.

Exit codes: 0 success, 1 a verdict failed, 2 usage or parse error,
3 scalar could not be determined.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import linalg as la
from .algebra import AlgebraShapeError, all_pass, axiom_report
from .diagram import Diagram, DiagramTypeError, LinComb, obj_str
from .dsl import DslError, parse, print_lincomb
from .evaluate import EvalError, eval_lincomb, relation_suite, resolve_algebra
from .normal_form import ScalarIndeterminate, equivalent, nf_of, resolve_scalar
from .ring import PolySyntaxError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INDETERMINATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> LinComb:
    return parse(_read(path))


def _single(lc: LinComb, path: str) -> Diagram:
    if len(lc.terms) != 1 or lc.terms[0][0] != 1:
        raise UsageError(f"{path}: expected a single diagram without coefficient")
    return lc.terms[0][1]


def _algebra(args, validate: bool = True):
    try:
        t = resolve_algebra(args.algebra)
    except (OSError, ValueError, AlgebraShapeError) as exc:
        raise UsageError(f"algebra {args.algebra!r}: {exc}") from None
    if validate and args.algebra != "universal" and not args.algebra.startswith("trunc:"):
        failed = [v.name for v in axiom_report(t) if not v.passed]
        if failed:
            raise UsageError(f"algebra {args.algebra!r} fails: {', '.join(failed)}")
    return t


def _verdict_lines(verdicts) -> tuple[list[dict], str]:
    rows = [{"name": v.name, "passed": v.passed} for v in verdicts]
    return rows, "\n".join(str(v) for v in verdicts)


# -- commands ------------------------------------------------------------------

def cmd_check(args) -> int:
    lc = _load(args.file)
    desc = f"{obj_str(lc.dom)} -> {obj_str(lc.cod)}"
    _emit(args, {"ok": True, "dom": obj_str(lc.dom), "cod": obj_str(lc.cod),
                 "terms": len(lc.terms)}, f"ok: {desc}, {len(lc.terms)} term(s)")
    return EXIT_OK


def cmd_invariants(args) -> int:
    from .topology import invariants
    d = _single(_load(args.file), args.file)
    inv = invariants(d)
    lines = [f"sigma: {inv.to_dict()['sigma']}", f"singular circles: {inv.singular_circles}"]
    for k, c in enumerate(inv.components):
        kind = "closed" if c.closed else f"boundary {list(c.boundary)}"
        lines.append(f"component {k}: genus {c.genus}, {kind}, bi-webs {list(c.biwebs)}")
    _emit(args, inv.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_normalize(args) -> int:
    t = _algebra(args)
    lc = _load(args.file)
    terms = []
    checks = []
    for c, d in lc.terms:
        nf = nf_of(d)
        terms.append((c * nf.scalar, nf.diagram))
        if t.name != "universal":
            checks.append(resolve_scalar(d, nf.diagram, t) == nf.scalar)
    out = LinComb(lc.dom, lc.cod, tuple(terms))
    payload = {"normal_form": print_lincomb(out)}
    if len(lc.terms) == 1 and lc.terms[0][0] == 1:
        payload["scalar"] = str(terms[0][0])
        payload["term"] = str(terms[0][1])
        text = f"scalar: {terms[0][0]}\nterm: {terms[0][1]}"
    else:
        text = payload["normal_form"]
    if checks:
        payload["consistent"] = all(checks)
        text += f"\nconsistent under {t.name}: {'yes' if all(checks) else 'no'}"
    _emit(args, payload, text)
    return EXIT_OK if all(checks) else EXIT_FAIL


def cmd_equal(args) -> int:
    x, y = _load(args.file1), _load(args.file2)
    if (x.dom, x.cod) != (y.dom, y.cod):
        raise UsageError("the two morphisms have different source or target")
    if len(x.terms) == 1 and len(y.terms) == 1 and x.terms[0][0] == 1 and y.terms[0][0] == 1:
        v = equivalent(x.terms[0][1], y.terms[0][1])
    else:
        v = equivalent(x, y)
    payload = {"verdict": v.kind}
    if v.kind == "equal-up-to-scalar":
        payload["scalar"] = str(v.scalar)
    _emit(args, payload, str(v))
    return EXIT_FAIL if v.kind == "not-equal" else EXIT_OK


def cmd_eval(args) -> int:
    t = _algebra(args)
    m = eval_lincomb(_load(args.file), t)
    rows, cols = la.shape(m)
    entries = la.to_strings(m)
    width = max((len(e) for row in entries for e in row), default=1)
    text = "\n".join("[ " + "  ".join(e.rjust(width) for e in row) + " ]" for row in entries)
    _emit(args, {"algebra": t.name, "rows": rows, "cols": cols, "entries": entries},
          f"{rows}x{cols} over {t.name}\n{text}")
    return EXIT_OK


def cmd_axioms(args) -> int:
    t = _algebra(args, validate=False)
    verdicts = axiom_report(t)
    rows, text = _verdict_lines(verdicts)
    _emit(args, {"algebra": t.name, "verdicts": rows, "passed": all_pass(verdicts)}, text)
    return EXIT_OK if all_pass(verdicts) else EXIT_FAIL


def cmd_relations(args) -> int:
    t = _algebra(args)
    verdicts = relation_suite(t)
    rows, text = _verdict_lines(verdicts)
    _emit(args, {"algebra": t.name, "verdicts": rows, "passed": all_pass(verdicts)}, text)
    return EXIT_OK if all_pass(verdicts) else EXIT_FAIL


def cmd_fuzz(args) -> int:
    from .fuzz import run_fuzz
    if args.steps < 0 or args.count < 0:
        raise UsageError("--steps and --count must be nonnegative")
    results = run_fuzz(args.seed, args.steps, args.count)
    failed = [r for r in results if not r.ok]
    payload = {"seed": args.seed, "steps": args.steps, "count": args.count,
               "failures": len(failed), "cases": [r.to_dict() for r in failed]}
    lines = [f"{len(results)} cases, {len(failed)} failures (seed {args.seed}, {args.steps} steps)"]
    for r in failed:
        lines.append(f"case {r.case}: {'; '.join(r.failures)}\n  {r.diagram}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_FAIL if failed else EXIT_OK


# -- wiring --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="universal",
                        help="universal | trunc:N | path to a JSON algebra file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--steps", type=int, default=20)
    common.add_argument("--count", type=int, default=200)

    parser = argparse.ArgumentParser(
        prog="sing2cob", description="Normal forms and twin algebra evaluation for singular cobordisms.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, files, help_ in (
        ("check", cmd_check, ["file"], "parse and type-check a morphism file"),
        ("invariants", cmd_invariants, ["file"], "components, genus, singular permutation"),
        ("normalize", cmd_normalize, ["file"], "scalar and normal-form term"),
        ("equal", cmd_equal, ["file1", "file2"], "decide equality of two morphisms"),
        ("eval", cmd_eval, ["file"], "matrix under a twin algebra"),
        ("axioms", cmd_axioms, [], "check the twin Frobenius axioms"),
        ("relations", cmd_relations, [], "check every rewrite rule by evaluation"),
        ("fuzz", cmd_fuzz, [], "seeded normal-form soundness fuzzing"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        for f in files:
            p.add_argument(f, help="morphism file ('-' for stdin)")
        p.set_defaults(func=fn)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (DslError, PolySyntaxError, DiagramTypeError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScalarIndeterminate as exc:
        payload = {"error": "scalar-indeterminate",
                   "diagram_matrix": la.to_strings(exc.diagram_matrix),
                   "normal_form_matrix": la.to_strings(exc.nf_matrix)}
        if args.json:
            print(json.dumps(payload, indent=2, sort_keys=True))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE


if __name__ == "__main__":
    sys.exit(main())
