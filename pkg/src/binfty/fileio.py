"""Algebra definition files (JSON syntax, exact rationals as "p/q" strings).

Layout::

    {
      "name": "poly3",
      "generators": [["1", 0], ["t", 1], ["t2", 2]],
      "unit": "1",
      "bullet": {"t t": [["1", "t2"]]},
      "circ": {...},
      "diff": {"t2": [["1", "t"]]},
      "coproduct": {"t": [["1", "t", "1"], ["1", "1", "t"]]},
      "truncation": {"weights": {"t": 1, ...}, "weight_cap": 3}
    }

Keys of a table are input words (generator names separated by single
spaces); values are lists of output terms ``[coeff, gen, ...]``. Products
with the unit that are not listed follow the unit law; ``coproduct`` and
``truncation`` are optional.
"""

from __future__ import annotations

import json

from .exactcore import format_rational, parse_rational
from .graded import ONE, GradedSpace, MultiMap

KNOWN_FIELDS = ("name", "generators", "unit", "bullet", "circ", "diff", "coproduct", "truncation")


class FileFormatError(ValueError):
    """Malformed definition file; ``location`` names the offending field."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _reject_floats(value):
    raise FileFormatError("number", f"floating point value {value} is not allowed; use \"p/q\"")


def load_json(text: str) -> dict:
    try:
        doc = json.loads(text, parse_float=_reject_floats)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise FileFormatError("top level", "expected a JSON object")
    return doc


def _space_from_doc(doc) -> GradedSpace:
    gens = doc.get("generators")
    if not isinstance(gens, list) or not gens:
        raise FileFormatError("generators", "expected a non-empty list of [name, degree]")
    pairs = []
    for k, g in enumerate(gens):
        if (not isinstance(g, list) or len(g) != 2 or not isinstance(g[0], str)
                or not isinstance(g[1], int) or isinstance(g[1], bool)):
            raise FileFormatError(f"generators[{k}]", "expected [name, integer degree]")
        if not g[0] or " " in g[0]:
            raise FileFormatError(f"generators[{k}]", "names must be non-empty without spaces")
        pairs.append((g[0], g[1]))
    if "unit" not in doc:
        raise FileFormatError("unit", "missing unit designation")
    names = [p[0] for p in pairs]
    if doc["unit"] not in names:
        raise FileFormatError("unit", f"unknown generator {doc['unit']!r}")
    weights, cap = None, None
    trunc = doc.get("truncation")
    if trunc is not None:
        if not isinstance(trunc, dict) or set(trunc) - {"weights", "weight_cap"}:
            raise FileFormatError("truncation", "expected {\"weights\": {...}, \"weight_cap\": L}")
        w = trunc.get("weights", {})
        if set(w) - set(names):
            raise FileFormatError("truncation.weights", "unknown generator")
        weights = [w.get(n, 1) for n in names]
        cap = trunc.get("weight_cap")
        if not isinstance(cap, int) or any(not isinstance(x, int) for x in weights):
            raise FileFormatError("truncation", "weights and weight_cap must be integers")
    try:
        return GradedSpace(pairs, unit=doc["unit"], weights=weights, weight_cap=cap)
    except (ValueError, ArithmeticError) as exc:
        raise FileFormatError("generators", str(exc)) from None


def _table(doc, field, space, in_arity, out_arity, degree, unit_default):
    raw = doc.get(field, {})
    if not isinstance(raw, dict):
        raise FileFormatError(field, "expected an object mapping input words to term lists")
    table = {}
    for key, terms in raw.items():
        loc = f"{field}[{key!r}]"
        parts = key.split(" ")
        if len(parts) != in_arity:
            raise FileFormatError(loc, f"expected {in_arity} generator(s)")
        try:
            inp = tuple(space.index(p) for p in parts)
        except KeyError as exc:
            raise FileFormatError(loc, str(exc.args[0])) from None
        if not isinstance(terms, list):
            raise FileFormatError(loc, "expected a list of terms")
        out = {}
        for t in terms:
            if not isinstance(t, list) or len(t) != out_arity + 1:
                raise FileFormatError(loc, f"terms look like [coeff, {out_arity} generator(s)]")
            try:
                c = parse_rational(t[0])
                w = tuple(space.index(n) for n in t[1:])
            except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
                raise FileFormatError(loc, str(exc)) from None
            out[w] = out.get(w, 0) + c
        table[inp] = out
    if unit_default is not None:
        unit_default(table)
    try:
        return MultiMap(space, in_arity, out_arity, degree, table=table, name=field)
    except (ValueError, ArithmeticError) as exc:
        raise FileFormatError(field, str(exc)) from None


def _unit_law(space):
    u = space.unit

    def fill(table):
        for g in range(space.dim):
            table.setdefault((u, g), {(g,): ONE})
            table.setdefault((g, u), {(g,): ONE})

    return fill


def _counit_law(space):
    u = space.unit

    def fill(table):
        table.setdefault((u,), {(u, u): ONE})

    return fill


def parse_document(doc: dict):
    """Return (name, TwoAssocDiffAlgebra, coproduct MultiMap or None)."""
    from .underlying import TwoAssocDiffAlgebra

    unknown = sorted(set(doc) - set(KNOWN_FIELDS))
    if unknown:
        raise FileFormatError(unknown[0], "unknown field")
    for field in ("bullet", "circ", "diff"):
        if field not in doc:
            raise FileFormatError(field, "missing table")
    space = _space_from_doc(doc)
    bullet = _table(doc, "bullet", space, 2, 1, 0, _unit_law(space))
    circ = _table(doc, "circ", space, 2, 1, 0, _unit_law(space))
    diff = _table(doc, "diff", space, 1, 1, -1, None)
    delta = None
    if "coproduct" in doc:
        delta = _table(doc, "coproduct", space, 1, 2, 0, _counit_law(space))
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise FileFormatError("name", "expected a string")
    return name, TwoAssocDiffAlgebra(space, bullet, circ, diff, name=name), delta


def parse_text(text: str):
    return parse_document(load_json(text))


def read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FileFormatError(str(path), exc.strerror or "unreadable") from None
    return text, parse_text(text)


# -- writing ----------------------------------------------------------------------

def _dump_table(space, op: MultiMap, skip_unit_law=False):
    out = {}
    u = space.unit
    for inp in sorted(op.inputs(), key=lambda w: (len(w), w)):
        val = op(inp)
        if skip_unit_law and u in inp and val == {(inp[1] if inp[0] == u else inp[0],): ONE}:
            continue
        if skip_unit_law is None and inp == (u,) and val == {(u, u): ONE}:
            continue
        if not val:
            continue
        key = " ".join(space.names[g] for g in inp)
        out[key] = [[format_rational(c)] + [space.names[g] for g in w]
                    for w, c in sorted(val.items(), key=lambda t: (len(t[0]), t[0]))]
    return out


def algebra_document(alg, delta: MultiMap | None = None, name: str | None = None) -> dict:
    space = alg.space
    doc = {
        "name": name if name is not None else alg.name,
        "generators": [[n, d] for n, d in zip(space.names, space.degrees)],
        "unit": space.names[space.unit],
        "bullet": _dump_table(space, alg.bullet, skip_unit_law=True),
        "circ": _dump_table(space, alg.circ, skip_unit_law=True),
        "diff": _dump_table(space, alg.diff),
    }
    if delta is not None:
        doc["coproduct"] = _dump_table(space, delta, skip_unit_law=None)
    if space.weights is not None:
        doc["truncation"] = {
            "weights": {n: w for n, w in zip(space.names, space.weights)},
            "weight_cap": space.weight_cap,
        }
    return doc


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
