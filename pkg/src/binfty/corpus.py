"""Built-in example 2-associative differential algebras."""

from __future__ import annotations

from .fileio import parse_document

CORPUS = {
    # square-zero bullet, polynomial circ, d(t2) = t: d is not a circ-derivation
    "poly3": {
        "name": "poly3",
        "generators": [["1", 0], ["t", 1], ["t2", 2]],
        "unit": "1",
        "bullet": {},
        "circ": {"t t": [["1", "t2"]]},
        "diff": {"t2": [["1", "t"]]},
    },
    "ext1": {
        "name": "ext1",
        "generators": [["1", 0], ["e", 1]],
        "unit": "1",
        "bullet": {},
        "circ": {},
        "diff": {"e": [["1", "1"]]},
    },
    "dual2": {
        "name": "dual2",
        "generators": [["1", 0], ["x", 0]],
        "unit": "1",
        "bullet": {},
        "circ": {"x x": [["1", "x"]]},
        "diff": {},
    },
    # a = e12, b = e22 in upper triangular 2x2 matrices; circ is the opposite product
    "upper2": {
        "name": "upper2",
        "generators": [["1", 0], ["a", 0], ["b", 0]],
        "unit": "1",
        "bullet": {"a b": [["1", "a"]], "b b": [["1", "b"]]},
        "circ": {"b a": [["1", "a"]], "b b": [["1", "b"]]},
        "diff": {},
    },
}

NAMES = tuple(CORPUS)


def corpus_document(name: str) -> dict:
    if name not in CORPUS:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(NAMES)}")
    return CORPUS[name]


def corpus_algebra(name: str):
    """The named example as a TwoAssocDiffAlgebra."""
    return parse_document(corpus_document(name))[1]
