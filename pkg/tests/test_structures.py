import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from binfty.corpus import corpus_algebra
from binfty.errors import ArityError, AxiomError, CapError, HomogeneityError
from binfty.graded import GradedSpace, MultiMap, add_scaled, add_term
from binfty.structures import (
    AInfinity, BInfinity, CompositionIndex, LawReport, Multibrace, check_a_infinity, check_associative,
    check_b_infinity, check_compatibility, check_multibrace, coalgebra_map_components,
    coderivation_components, compositions, quasi_shuffle_multibrace, quasi_trivial_b_infinity,
    shuffle_product, structures_equal,
)
from binfty.underlying import underlying_b_infinity

ONE = Fraction(1)
V = GradedSpace([("a", 0), ("b", 1), ("c", 2)])


def literal_shuffle(x, y, degrees):
    """Oracle: sum over (i, k-i)-shuffles, sign from sorting the factors into place by adjacent swaps."""
    word = x + y
    k, i = len(word), len(x)
    out = {}
    for pos in itertools.combinations(range(k), i):
        rest = [p for p in range(k) if p not in pos]
        target = list(pos) + rest  # factor j lands in position target[j]
        slots = [(target[j], degrees[word[j]]) for j in range(k)]
        sign = 1
        for a in range(k):
            for b in range(a + 1, k):
                if slots[a][0] > slots[b][0]:
                    sign *= (-1) ** (slots[a][1] * slots[b][1])
        res = [None] * k
        for j in range(k):
            res[target[j]] = word[j]
        add_term(out, tuple(res), Fraction(sign))
    return out


pairs = st.tuples(st.lists(st.integers(0, 2), max_size=3).map(tuple),
                  st.lists(st.integers(0, 2), max_size=3).map(tuple))


@settings(max_examples=100, deadline=None)
@given(pairs)
def test_shuffle_matches_enumeration(xy):
    x, y = xy
    assert shuffle_product({x: ONE}, {y: ONE}, V) == literal_shuffle(x, y, V.degrees)


@settings(max_examples=100, deadline=None)
@given(pairs)
def test_shuffle_graded_commutative(xy):
    x, y = xy
    if len(x) + len(y) > 5:
        return
    sign = (-1) ** (V.word_degree(x) * V.word_degree(y))
    lhs = shuffle_product({x: ONE}, {y: ONE}, V)
    rhs = {w: sign * c for w, c in shuffle_product({y: ONE}, {x: ONE}, V).items()}
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.tuples(*[st.lists(st.integers(0, 2), max_size=2).map(tuple)] * 3))
def test_shuffle_associative(xyz):
    x, y, z = xyz
    if sum(map(len, xyz)) > 5:
        return
    lhs = shuffle_product(shuffle_product({x: ONE}, {y: ONE}, V), {z: ONE}, V)
    rhs = shuffle_product({x: ONE}, shuffle_product({y: ONE}, {z: ONE}, V), V)
    assert lhs == rhs


def test_shuffle_small_values():
    W = GradedSpace([("u", 0), ("e", 1)])
    assert shuffle_product({(0,): ONE}, {(0,): ONE}, W) == {(0, 0): Fraction(2)}
    assert shuffle_product({(1,): ONE}, {(1,): ONE}, W) == {}


def nonassociative_bullet():
    W = GradedSpace([("a", 0), ("b", 0)])
    # a.a = b, b.a = a, everything else 0: (a.a).a = a but a.(a.a) = 0
    return W, MultiMap(W, 2, 1, 0, table={(0, 0): {(1,): 1}, (1, 0): {(0,): 1}})


def test_quasi_shuffle_multibrace_positive_and_negative():
    W = GradedSpace([("x", 0), ("y", 0)])
    assoc = MultiMap(W, 2, 1, 0, table={(0, 0): {(0,): 1}, (0, 1): {(1,): 1}})  # x.x = x, x.y = y
    assert check_associative(assoc).passed
    assert check_multibrace(quasi_shuffle_multibrace(W, assoc, 6), 6).passed

    W2, bad = nonassociative_bullet()
    rep = check_multibrace(quasi_shuffle_multibrace(W2, bad, 4), 4)
    assert not rep.passed
    assert rep.verdicts[(1, 1, 1)] is False
    assert rep.counterexample["arity"] == (1, 1, 1)


def test_trivial_multibrace_product_is_shuffle():
    b = Multibrace(V, {}, 5)
    mu = b.product()
    for x in [(0,), (1, 2)]:
        for y in [(1,), (2, 0)]:
            assert mu.on_basis((x, y)) == shuffle_product({x: ONE}, {y: ONE}, V)


def derived(name, cap=5):
    return underlying_b_infinity(corpus_algebra(name), cap)


@pytest.mark.parametrize("name", ["upper2", "poly3"])
def test_coalgebra_map_components_match_extension(name):
    s = derived(name, 4)
    mu = s.b.product()
    space = s.space
    for i, j in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)]:
        comps = [coalgebra_map_components(s.b, i, j, r) for r in range(1, i + j + 1)]
        for word in space.words(i + j):
            literal = {}
            for f in comps:
                add_scaled(literal, f(word))
            assert mu.on_basis((word[:i], word[i:])) == literal


@pytest.mark.parametrize("name", ["poly3", "ext1"])
def test_coderivation_components_match_extension(name):
    s = derived(name, 4)
    d = s.a.coderivation()
    for n in range(1, 5):
        comps = [coderivation_components(s.a, n, k) for k in range(1, n + 1)]
        for word in s.space.words(n):
            literal = {}
            for f in comps:
                add_scaled(literal, f(word))
            assert d.on_basis(word) == literal


def test_a_infinity_failure_detected():
    W = GradedSpace([("x", 1), ("y", 0)])
    m1 = MultiMap(W, 1, 1, -1, table={(0,): {(1,): 1}})
    assert check_a_infinity(AInfinity(W, {1: m1}, 3), 3).passed
    U = GradedSpace([("p", 2), ("q", 1), ("r", 0)])
    d = MultiMap(U, 1, 1, -1, table={(0,): {(1,): 1}, (1,): {(2,): 1}})
    rep = check_a_infinity(AInfinity(U, {1: d}, 2), 2)
    assert not rep.passed and rep.counterexample["arity"] == 1


def test_container_validation():
    m = MultiMap(V, 2, 1, 0, table={})
    with pytest.raises(HomogeneityError):
        AInfinity(V, {2: m})
    with pytest.raises(ArityError):
        Multibrace(V, {(0, 2): m})
    with pytest.raises(CapError):
        AInfinity(V, {}, 2).m_n(3)
    b = Multibrace(V, {}, 3)
    assert b.component(0, 1)((0,)) == {(0,): 1}
    assert b.component(2, 0).is_zero()


def test_compositions():
    assert list(compositions(3, 2, positive=True)) == [(1, 2), (2, 1)]
    assert len(list(compositions(2, 3))) == 6
    with pytest.raises(ValueError):
        CompositionIndex((1, 2), 4)


def test_quasi_trivial_requires_dga():
    W, bad = nonassociative_bullet()
    zero_d = MultiMap(W, 1, 1, -1, table={})
    with pytest.raises(AxiomError):
        quasi_trivial_b_infinity(W, bad, zero_d)


def test_quasi_trivial_of_dga_is_b_infinity():
    alg = corpus_algebra("ext1")
    s = quasi_trivial_b_infinity(alg.space, alg.bullet, alg.diff, 5)
    assert all(r.passed for r in check_b_infinity(s, 5, 5, 5))


def test_compatibility_failure_detected():
    alg = corpus_algebra("poly3")
    # m_1 = d but m_{1,1} = circ: d is not a circ-derivation, so compatibility breaks at (1,1)
    s = BInfinity(AInfinity(alg.space, {1: alg.diff}, 3), Multibrace(alg.space, {(1, 1): alg.circ}, 3))
    rep = check_compatibility(s, 2)
    assert not rep.passed and rep.counterexample["arity"] == (1, 1)


def test_law_report_lines_and_structures_equal():
    r = LawReport("demo")
    r.record(2, True)
    r.record(3, False, {"inputs": "a b c", "lhs": "1 a", "rhs": "0"})
    assert not r.passed
    assert r.lines()[:2] == ["PASS demo 2", "FAIL demo 3"]
    assert r.to_dict()["counterexample"]["arity"] == 3
    s = derived("dual2", 3)
    assert structures_equal(s, s, 3) is None
    alg = corpus_algebra("dual2")
    qt = quasi_trivial_b_infinity(alg.space, alg.bullet, alg.diff, 3)
    assert structures_equal(s, qt, 3) == "m_1,1"
