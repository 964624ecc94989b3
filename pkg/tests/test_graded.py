import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from binfty.errors import ArityError, HomogeneityError
from binfty.graded import (
    GradedSpace, MultiMap, Permutation, apply_map_tensor, compose_multimap, fmt_combo,
    identity_map, interleave_sign, koszul_sign, map_sum, permute_tensor,
)


def bubble_sort_sign(degrees, images):
    """Oracle: sort factors into target order by adjacent swaps, collecting Koszul signs."""
    slots = list(zip(images, degrees))
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(slots) - 1):
            if slots[k][0] > slots[k + 1][0]:
                sign *= (-1) ** (slots[k][1] * slots[k + 1][1])
                slots[k], slots[k + 1] = slots[k + 1], slots[k]
                changed = True
    return sign


perms = st.integers(0, 6).flatmap(lambda n: st.permutations(list(range(n))))


@settings(max_examples=200, deadline=None)
@given(perms, st.data())
def test_koszul_sign_matches_adjacent_swaps(images, data):
    degs = data.draw(st.lists(st.integers(-3, 3), min_size=len(images), max_size=len(images)))
    assert koszul_sign(degs, Permutation(images)) == bubble_sort_sign(degs, images)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.permutations(list(range(n))),
                                                     st.permutations(list(range(n))),
                                                     st.lists(st.integers(0, 3), min_size=n, max_size=n))))
def test_koszul_sign_cocycle(args):
    s_img, t_img, degs = args
    sigma, tau = Permutation(s_img), Permutation(t_img)
    # move by tau first, then by sigma on the permuted factors
    _, moved_degs = permute_tensor(tau, tuple(degs), degs)
    lhs = koszul_sign(degs, sigma.compose(tau))
    rhs = koszul_sign(degs, tau) * koszul_sign(list(moved_degs), sigma)
    assert lhs == rhs


def test_transposition_signs():
    swap = Permutation([1, 0])
    assert koszul_sign([1, 1], swap) == -1
    assert koszul_sign([1, 2], swap) == 1
    assert koszul_sign([0, 5], swap) == 1
    assert permute_tensor(swap, ("a", "b"), [1, 1]) == (-1, ("b", "a"))


def test_permutation_algebra():
    p = Permutation([2, 0, 1])
    assert p.compose(p.inverse()) == Permutation.identity(3)
    assert p.inversions() == [(0, 1), (0, 2)]
    with pytest.raises(ValueError):
        Permutation([0, 0])


def test_interleave_sign_regrouping():
    # (x1 x2)(y1 y2) -> (x1 y1)(x2 y2): only x2 passes y1
    assert interleave_sign(((1, 1), (1, 1))) == -1
    assert interleave_sign(((1, 0), (0, 1))) == 1
    assert interleave_sign(((0, 2), (3, 1))) == 1


def space2():
    return GradedSpace([("1", 0), ("a", 1), ("b", 2)], unit="1")


def test_space_basics():
    V = space2()
    assert V.dim == 3 and V.index("b") == 2 and V.word_degree((1, 2)) == 3
    with pytest.raises(HomogeneityError):
        GradedSpace([("u", 1)], unit="u")
    with pytest.raises(ValueError):
        GradedSpace([("u", 0), ("u", 1)])


def test_bounded_words_weighted():
    W = GradedSpace([("e", 0), ("x", 0), ("xx", 0)], weights=[0, 1, 2], weight_cap=2)
    words = list(W.bounded_words(2))
    assert all(W.word_weight(w) <= 2 for w in words)
    assert len(words) == len([w for w in itertools.product(range(3), repeat=2) if W.word_weight(w) <= 2])


def test_multimap_homogeneity_and_arity():
    V = space2()
    with pytest.raises(HomogeneityError):
        MultiMap(V, 1, 1, 0, table={(1,): {(2,): 1}})
    with pytest.raises(ArityError):
        MultiMap(V, 1, 1, 1, table={(1, 1): {(2,): 1}})
    lazy = MultiMap(V, 1, 1, 0, rule=lambda w: {(2,): Fraction(1)})
    with pytest.raises(HomogeneityError):
        lazy((1,))


def test_apply_map_tensor_sign():
    V = space2()
    f = MultiMap(V, 1, 1, 1, table={(1,): {(2,): 1}})  # degree 1: a -> b
    ident = identity_map(V)
    # (id x f)(a x a) = (-1)^{|f||a|} a x b
    assert apply_map_tensor([ident, f], (1, 1), V) == {(1, 2): -1}
    assert apply_map_tensor([f, ident], (1, 1), V) == {(2, 1): 1}


def test_compose_and_sum():
    V = space2()
    f = MultiMap(V, 1, 1, 1, table={(1,): {(2,): 2}})
    g = compose_multimap(identity_map(V), [f])
    assert g.equals(f)
    h = map_sum([f, f])
    assert h((1,)) == {(2,): 4}
    assert fmt_combo(V, {(2,): Fraction(1, 2), (1, 1): Fraction(-1)}) == "1/2 b + -1 a a"
