import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from binfty.errors import AxiomError, TruncationError
from binfty.graded import GradedSpace, MultiMap, add_scaled, add_term, apply_map_tensor
from binfty.tcoalg import (
    CoalgebraMap, FiniteCoalgebra, Subspace, TensorSpace, conilpotent_radical, counit, deconcatenate,
    extend_coalgebra_map, extend_coderivation, filtration_level, primitives, reduced_coproduct,
    tensor_coalgebra,
)

ONE = Fraction(1)
V = GradedSpace([("a", 0), ("b", 1), ("c", 2)])
words = st.lists(st.integers(0, 2), max_size=5).map(tuple)


@settings(max_examples=100, deadline=None)
@given(words)
def test_deconcatenation_coassociative_and_counital(w):
    d = deconcatenate({w: ONE})
    left, right = {}, {}
    for (x, y), c in d.items():
        for (x1, x2), c2 in deconcatenate({x: ONE}).items():
            add_term(left, (x1, x2, y), c * c2)
        for (y1, y2), c2 in deconcatenate({y: ONE}).items():
            add_term(right, (x, y1, y2), c * c2)
    assert left == right
    assert sum(c for (x, y), c in d.items() if not x and y == w) == 1
    assert counit({(): Fraction(3), (0,): ONE}) == 3


def test_reduced_coproduct_and_filtration():
    w = (0, 1, 2)
    assert reduced_coproduct({w: ONE}) == {((0,), (1, 2)): ONE, ((0, 1), (2,)): ONE}
    assert reduced_coproduct({w: ONE}, 2) == {((0,), (1,), (2,)): ONE}
    assert reduced_coproduct({w: ONE}, 3) == {}
    assert filtration_level({w: ONE}) == 3
    assert filtration_level({(): ONE}) == 0
    with pytest.raises(ValueError):
        reduced_coproduct({(): ONE}, 1)


def literal_extension(f1, X):
    """Oracle for a coalgebra map on T^c(V) (one source factor): sum_k f1^{x k} Delta^{(k-1)}."""
    (w,) = X
    out = {}
    if not w:
        return {(): ONE}
    for k in range(1, len(w) + 1):
        for cuts in itertools.combinations(range(1, len(w)), k - 1):
            bounds = (0,) + cuts + (len(w),)
            pieces = [w[bounds[t]:bounds[t + 1]] for t in range(k)]
            acc = {(): ONE}
            for p in pieces:
                val = f1((p,))
                nxt = {}
                for u, c in acc.items():
                    for g, c2 in val.items():
                        add_term(nxt, u + (g,), c * c2)
                acc = nxt
            add_scaled(out, acc)
    return out


def sample_f1(X):
    (w,) = X
    # degree-0 family: a -> a + a(if len 2)...
    if len(w) == 1:
        return {w[0]: ONE}
    if w == (0, 0):
        return {0: Fraction(2)}
    if w == (1, 1):
        return {2: Fraction(-1)}
    if w == (0, 1, 0):
        return {1: Fraction(1, 3)}
    return {}


@settings(max_examples=60, deadline=None)
@given(words)
def test_coalgebra_map_extension_matches_literal_sum(w):
    f = CoalgebraMap(sample_f1, V)
    assert f.on_basis((w,)) == literal_extension(sample_f1, (w,))


@settings(max_examples=60, deadline=None)
@given(words)
def test_coalgebra_map_commutes_with_deconcatenation(w):
    f = CoalgebraMap(sample_f1, V)
    lhs = deconcatenate(f.on_basis((w,)))
    rhs = {}
    for (x, y), c in deconcatenate({w: ONE}).items():
        for u, c1 in f.on_basis((x,)).items():
            for v, c2 in f.on_basis((y,)).items():
                add_term(rhs, (u, v), c * c1 * c2)
    assert lhs == rhs


def test_coalgebra_map_rejects_nonzero_on_unit():
    with pytest.raises(ValueError):
        CoalgebraMap(lambda X: {0: ONE}, V)


def test_extend_from_family_and_cap():
    f1 = {1: MultiMap(V, 1, 1, 0, table={(g,): {(g,): 1} for g in range(3)})}
    f = extend_coalgebra_map(f1, V)
    assert f.on_basis(((0, 1, 2),)) == {(0, 1, 2): ONE}
    capped = extend_coalgebra_map(f1, V, word_cap=2)
    with pytest.raises(TruncationError):
        capped.on_basis(((0, 1, 2),))


def literal_coderivation(d1, w, degree):
    """Oracle: sum_{i+1+j=k} id^i x d1 x id^j with Koszul sign (-1)^{|d||prefix|}."""
    out = {}
    for i in range(len(w)):
        for j in range(i + 1, len(w) + 1):
            sign = (-1) ** (degree * V.word_degree(w[:i]))
            for g, c in d1(w[i:j]).items():
                add_term(out, w[:i] + (g,) + w[j:], sign * c)
    return out


def sample_d1(w):
    # degree -1: c -> b, (b b) -> b (degree 2 -> 1), (a c) -> b
    table = {(2,): {1: ONE}, (1, 1): {1: Fraction(2)}, (0, 2): {1: Fraction(-1)}}
    return table.get(tuple(w), {})


@settings(max_examples=60, deadline=None)
@given(words)
def test_coderivation_matches_literal(w):
    d = extend_coderivation(sample_d1, V, -1)
    assert d.on_basis(w) == literal_coderivation(sample_d1, w, -1)


@settings(max_examples=60, deadline=None)
@given(words)
def test_coderivation_coleibniz(w):
    d = extend_coderivation(sample_d1, V, -1)
    lhs = deconcatenate(d.on_basis(w))
    rhs = {}
    for (x, y), c in deconcatenate({w: ONE}).items():
        for u, c1 in d.on_basis(x).items():
            add_term(rhs, (u, y), c * c1)
        sign = (-1) ** V.word_degree(x)
        for v, c2 in d.on_basis(y).items():
            add_term(rhs, (x, v), sign * c * c2)
    assert lhs == rhs


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_primitives_of_truncated_tensor_coalgebra(dim):
    base = GradedSpace([(f"v{k}", k % 2) for k in range(dim)])
    co = tensor_coalgebra(base, 4)
    prim = primitives(co)
    assert prim.dim == dim
    assert all(len(v) == 1 and co.space.weight(next(iter(v))) == 1 for v in prim.basis)
    assert conilpotent_radical(co).dim == co.space.dim


def grouplike_coalgebra():
    # K1 + K h with Delta(h) = h x 1 + 1 x h + h x h: h + 1 is group-like
    sp = GradedSpace([("1", 0), ("h", 0)], unit="1")
    delta = {0: {(0, 0): ONE}, 1: {(1, 0): ONE, (0, 1): ONE, (1, 1): ONE}}
    return FiniteCoalgebra(sp, delta)


def test_radical_excludes_grouplike():
    co = grouplike_coalgebra()
    co.validate()
    assert primitives(co).dim == 0
    rad = conilpotent_radical(co)
    assert rad.dim == 1 and rad.contains({0: ONE})
    assert co.filtration_level({1: ONE}) is None


def test_invalid_coalgebra_detected():
    sp = GradedSpace([("1", 0), ("x", 0)], unit="1")
    bad = FiniteCoalgebra(sp, {0: {(0, 0): ONE}, 1: {(1, 1): ONE}})
    with pytest.raises(AxiomError):
        bad.validate()


def test_tensor_space_and_subspace():
    base = GradedSpace([("a", 1)])
    T = TensorSpace(base, 2)
    assert T.names == ("[]", "[a]", "[a,a]")
    assert T.degrees == (0, 1, 2)
    with pytest.raises(TruncationError):
        T.gen((0, 0, 0))
    S = Subspace(T, [{1: ONE, 2: ONE}, {1: Fraction(2), 2: Fraction(2)}])
    assert S.dim == 1 and S.contains({1: Fraction(3), 2: Fraction(3)}) and not S.contains({1: ONE})
    assert S.inclusion_matrix().rows == 3
