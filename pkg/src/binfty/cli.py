"""Command-line interface: validate, derive, check, primitives, examples.

Exit codes: 0 all laws pass, 1 law violation or inconsistency, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .corpus import NAMES, corpus_algebra, corpus_document
from .errors import AxiomError, BinftyError, CapError, InconsistencyError, TruncationError
from .fileio import FileFormatError, algebra_document, dump_document, parse_text
from .graded import GradedSpace, MultiMap, add_scaled, fmt_combo
from .infbialg import (
    TwoAssocDiffBialgebra, check_unital_infinitesimal, enveloping, fundamental_dg_bialgebra,
    prim_b_infinity, validate_bialgebra,
)
from .structures import (
    DEFAULT_AINF_CAP, DEFAULT_COMPAT_CAP, DEFAULT_MB_CAP, BInfinity, Multibrace,
    check_a_infinity, check_compatibility, check_multibrace, compositions,
)
from .underlying import (
    UnderlyingStructure, check_defining_identities, underlying_b_infinity, validate,
)

DEFAULT_WORD_CAP = 6
LAWS = ("ainf", "mb", "compat", "uib")
PERTURBATIONS = ("m11",)
BIALGEBRA_KINDS = ("enveloping", "fundamental", "shuffle")


class InputError(Exception):
    """Bad command-line input (exit code 2)."""


class Report:
    """Ordered report sections, rendered as text or JSON."""

    def __init__(self, command: str, flags: dict):
        self.lines = [f"binfty {__version__}", f"command: {command}"]
        self.data = {"tool": "binfty", "version": __version__, "command": command,
                     "flags": flags, "sections": []}
        for k in sorted(flags):
            self.lines.append(f"flag {k}: {flags[k]}")

    def header(self, name: str, text: str):
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        self.lines.append(f"input: {name or '(unnamed)'} sha256:{digest}")
        self.data["input"] = {"name": name, "sha256": digest}

    def section(self, title: str, lines: list[str], payload=None):
        self.lines.append("")
        self.lines.append(f"== {title}")
        self.lines.extend(lines)
        self.data["sections"].append({"title": title, "lines": lines, "data": payload})

    def law_reports(self, title, reports):
        lines = []
        for r in reports:
            lines.extend(r.lines())
        self.section(title, lines, [r.to_dict() for r in reports])
        return all(r.passed for r in reports)

    def outcome(self, code: int):
        word = {0: "PASS", 1: "FAIL", 2: "ERROR"}[code]
        self.lines.append("")
        self.lines.append(f"result: {word} (exit {code})")
        self.data["result"] = {"status": word, "exit": code}

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.data, indent=2, sort_keys=True, default=str) + "\n"
        return "\n".join(self.lines) + "\n"


# -- helpers ------------------------------------------------------------------------

def _load(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise FileFormatError(str(path), exc.strerror or "unreadable") from None
    name, alg, delta = parse_text(text)
    return text, name, alg, delta


def table_lines(label: str, f: MultiMap) -> list[str]:
    space = f.space
    out = []
    for inp in sorted(f.inputs(), key=lambda w: (len(w), w)):
        val = f(inp)
        if val:
            out.append(f"{label}({space.fmt_word(inp)}) = {fmt_combo(space, val)}")
    if not out:
        out.append(f"{label} = 0")
    return out


def structure_lines(s: BInfinity, cap: int) -> list[str]:
    lines = []
    for total in range(2, cap + 1):
        for i, j in compositions(total, 2, positive=True):
            lines.extend(table_lines(f"m_{i},{j}", s.b.component(i, j)))
    for n in range(1, cap + 1):
        lines.extend(table_lines(f"m_{n}", s.a.m_n(n)))
    return lines


def perturb(s: BInfinity, alg, which: str) -> BInfinity:
    """Deliberately broken copy of a structure, for testing the checkers: m11 adds circ to m_{1,1}."""
    space = s.space
    if which == "m11":
        m = dict(s.b.m)
        m11, circ = s.b.component(1, 1), alg.circ

        def rule(w):
            acc = dict(m11(w))
            return add_scaled(acc, circ(w))

        m[1, 1] = MultiMap(space, 2, 1, 0, rule=rule, name="m_1,1+circ")
        return BInfinity(s.a, Multibrace(space, m, s.b.arity_cap))
    raise InputError(f"unknown perturbation {which!r}; choose from {', '.join(PERTURBATIONS)}")


def _validation_reports(alg, delta):
    if delta is None:
        return [validate(alg)]
    return validate_bialgebra(TwoAssocDiffBialgebra(alg, delta))


def _feasible(n, alg, flag="--max-arity"):
    if n < 1:
        raise InputError(f"{flag} must be >= 1")
    cap = alg.space.weight_cap
    if cap is not None and n > cap:
        raise InputError(f"{flag} {n} exceeds the file's weight cap {cap}")


# -- subcommands ----------------------------------------------------------------------

def cmd_validate(args, report: Report) -> int:
    text, name, alg, delta = _load(args.file)
    report.header(name, text)
    ok = report.law_reports("validation", _validation_reports(alg, delta))
    return 0 if ok else 1


def cmd_derive(args, report: Report) -> int:
    text, name, alg, delta = _load(args.file)
    report.header(name, text)
    n = args.max_arity if args.max_arity is not None else 3
    cap = args.cap if args.cap is not None else DEFAULT_WORD_CAP
    if n > cap:
        raise InputError(f"--max-arity {n} exceeds the word cap {cap}")
    _feasible(n, alg)
    if not report.law_reports("validation", [validate(alg)]):
        return 1
    s = underlying_b_infinity(alg, n)
    report.section("structure maps", structure_lines(s, n))
    ok = report.law_reports("defining identities", [check_defining_identities(alg, s, n, n)])
    return 0 if ok else 1


def cmd_check(args, report: Report) -> int:
    laws = [x.strip() for x in args.laws.split(",") if x.strip()] if args.laws else None
    for law in laws or ():
        if law not in LAWS:
            raise InputError(f"unknown law {law!r}; choose from {', '.join(LAWS)}")
    if args.perturb is not None and args.perturb not in PERTURBATIONS:
        raise InputError(f"unknown perturbation {args.perturb!r}; choose from {', '.join(PERTURBATIONS)}")
    text, name, alg, delta = _load(args.file)
    report.header(name, text)
    if laws is None:
        laws = ["ainf", "mb", "compat"] + (["uib"] if delta is not None else [])
    if "uib" in laws and delta is None:
        raise InputError("law 'uib' needs a coproduct table in the input file")
    n = args.max_arity
    if n is not None:
        _feasible(n, alg)
    ainf_cap = n or DEFAULT_AINF_CAP
    mb_cap = n or DEFAULT_MB_CAP
    compat_cap = n or DEFAULT_COMPAT_CAP
    if alg.space.weight_cap is not None:
        ainf_cap, mb_cap, compat_cap = (min(c, alg.space.weight_cap) for c in (ainf_cap, mb_cap, compat_cap))
    if not report.law_reports("validation", [validate(alg)]):
        return 1
    top = max(ainf_cap, mb_cap, compat_cap)
    und = UnderlyingStructure(alg, top)
    s = und.b_infinity()
    if args.perturb:
        s = perturb(s, alg, args.perturb)
    reports = []
    for law in laws:
        if law == "ainf":
            reports.append(check_a_infinity(s.a, ainf_cap))
        elif law == "mb":
            reports.append(check_multibrace(s.b, mb_cap))
        elif law == "compat":
            reports.append(check_compatibility(s, compat_cap))
        elif law == "uib":
            reports.append(check_unital_infinitesimal(TwoAssocDiffBialgebra(alg, delta).inf))
    ok = report.law_reports("laws", reports)
    return 0 if ok else 1


def cmd_primitives(args, report: Report) -> int:
    text, name, alg, delta = _load(args.file)
    report.header(name, text)
    if delta is None:
        raise InputError("primitives needs a bialgebra file (coproduct table)")
    cap = args.cap
    if cap is None:
        cap = alg.space.weight_cap if alg.space.weight_cap is not None else 4
    _feasible(cap, alg, "--cap")
    b = TwoAssocDiffBialgebra(alg, delta)
    if not report.law_reports("validation", validate_bialgebra(b)):
        return 1
    try:
        res = prim_b_infinity(b, cap)
    except InconsistencyError as exc:
        report.section("closure", [f"FAIL {exc}"])
        return 1
    if not res.conilpotent:
        w = res.witness
        report.section("conilpotency", [
            f"FAIL not conilpotent at truncation: reduced iterate {w['iterate']} of {w['inputs']} is nonzero",
            f"  value = {w['value']}"], w)
        return 1
    space = alg.space
    basis_lines = [f"{nm} = {fmt_combo(space, {(g,): c for g, c in v.items()})}"
                   for nm, v in zip(res.names, res.prim.basis)]
    report.section(f"primitive basis (dim {res.prim.dim})", basis_lines or ["(empty)"])
    closure_ok = res.closure.passed
    report.section("closure", [f"{'PASS' if closure_ok else 'FAIL'} structure maps restrict to Prim"])
    if res.prim.dim:
        report.section("restricted structure maps", structure_lines(res.structure, cap))
    return 0 if closure_ok else 1


def _bialgebra_for(name, kind, cap):
    alg = corpus_algebra(name)
    if kind == "enveloping":
        s = underlying_b_infinity(alg, cap)
        b = enveloping(s, cap)
        label = f"U({name})"
    elif kind == "fundamental":
        b = fundamental_dg_bialgebra(_reduced_space(alg), cap)
        label = f"T^fc({name})"
    else:
        b = _shuffle_dg_bialgebra(_reduced_space(alg), cap)
        label = f"shuffle({name})"
    return algebra_document(b.alg, b.delta_map, name=label)


def _reduced_space(alg):
    """The non-unit generators of a corpus algebra, as a plain graded space."""
    sp = alg.space
    return GradedSpace([(n, d) for k, (n, d) in enumerate(zip(sp.names, sp.degrees)) if k != sp.unit])


def _shuffle_dg_bialgebra(base, cap):
    """T^c(V) with bullet = circ = shuffle: a dg bialgebra whose circ is not infinitesimal."""
    from .underlying import TwoAssocDiffAlgebra

    b = fundamental_dg_bialgebra(base, cap)
    alg = TwoAssocDiffAlgebra(b.space, b.alg.bullet, b.alg.bullet, b.alg.diff, name="shuffle")
    return TwoAssocDiffBialgebra(alg, b.delta_map, name="shuffle")


def cmd_examples(args, report: Report):
    if args.action == "list":
        report.section("corpus", list(NAMES))
        return 0, None
    if args.name is None:
        raise InputError("emit needs an example name")
    if args.name not in NAMES:
        raise InputError(f"unknown example {args.name!r}; available: {', '.join(NAMES)}")
    if args.bialgebra is None:
        doc = corpus_document(args.name)
    else:
        if args.bialgebra not in BIALGEBRA_KINDS:
            raise InputError(f"unknown bialgebra kind {args.bialgebra!r}")
        cap = args.cap if args.cap is not None else 3
        if cap < 1 or cap > DEFAULT_WORD_CAP:
            raise InputError(f"--cap must lie in 1..{DEFAULT_WORD_CAP}")
        doc = _bialgebra_for(args.name, args.bialgebra, cap)
    return 0, dump_document(doc)


# -- entry point ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="binfty", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"binfty {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", help="write the report to this path")
        sp.add_argument("--json", action="store_true", help="machine-readable report")

    sp = sub.add_parser("validate", help="check the axioms of an algebra file")
    sp.add_argument("file")
    common(sp)
    sp = sub.add_parser("derive", help="print the underlying B-infinity structure maps")
    sp.add_argument("file")
    sp.add_argument("--max-arity", type=int)
    sp.add_argument("--cap", type=int, help="word cap (default 6)")
    common(sp)
    sp = sub.add_parser("check", help="run law suites on the derived structure")
    sp.add_argument("file")
    sp.add_argument("--laws", help="comma-separated subset of " + ",".join(LAWS))
    sp.add_argument("--max-arity", type=int)
    sp.add_argument("--perturb", help="testing aid: break a structure map (" + ", ".join(PERTURBATIONS) + ")")
    common(sp)
    sp = sub.add_parser("primitives", help="primitives of a bialgebra file and the restricted structure")
    sp.add_argument("file")
    sp.add_argument("--cap", type=int)
    common(sp)
    sp = sub.add_parser("examples", help="list or emit the built-in corpus")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--bialgebra", help="emit a bialgebra built from the example (" + ", ".join(BIALGEBRA_KINDS) + ")")
    sp.add_argument("--cap", type=int, help="word cap for --bialgebra (default 3)")
    sp.add_argument("--output", help="write the file to this path")
    sp.add_argument("--json", action="store_true")
    return p


def _write(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "output", "json", "file") and v is not None}
    report = Report(args.command, flags)
    payload = None
    try:
        if args.command == "examples":
            code, payload = cmd_examples(args, report)
        else:
            handler = {"validate": cmd_validate, "derive": cmd_derive, "check": cmd_check,
                       "primitives": cmd_primitives}[args.command]
            code = handler(args, report)
    except (FileFormatError, InputError, CapError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.section("error", [str(exc)])
        code = 2
    except AxiomError as exc:
        report.section("error", [str(exc)])
        code = 1
    except BinftyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.section("error", [str(exc)])
        code = 2
    if payload is not None:
        _write(payload, args.output)
        return code
    report.outcome(code)
    _write(report.render(args.json), args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
