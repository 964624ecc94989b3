from fractions import Fraction

import pytest

from binfty.corpus import NAMES, corpus_algebra
from binfty.errors import AxiomError, CapError
from binfty.graded import GradedSpace, MultiMap, identity_map
from binfty.structures import check_b_infinity, quasi_shuffle_multibrace, structures_equal
from binfty.structures import AInfinity, BInfinity
from binfty.twisting import (
    Twisting, identity_twisting, invert_twisting, iterated_product, twist_b_infinity,
    twisting_from_product,
)
from binfty.underlying import quasi_trivial_of, underlying_b_infinity

ONE = Fraction(1)


@pytest.mark.parametrize("name", NAMES)
def test_inverse_twisting_is_signed_iterated_product(name):
    alg = corpus_algebra(name)
    tau = twisting_from_product(alg.space, alg.circ, 6)
    inv = invert_twisting(tau)
    for n in range(1, 7):
        for w in alg.space.words(n):
            expected = {(g,): (-1) ** (n - 1) * c for g, c in iterated_product(alg.circ, w).items()}
            assert inv.component(n)(w) == expected


@pytest.mark.parametrize("name", ["poly3", "upper2"])
def test_twisting_composes_with_inverse_to_identity(name):
    alg = corpus_algebra(name)
    tau = twisting_from_product(alg.space, alg.circ, 5)
    inv = invert_twisting(tau)
    for n in range(0, 6):
        for w in alg.space.words(n):
            assert inv(tau({w: ONE})) == {w: ONE}
            assert tau(inv({w: ONE})) == {w: ONE}


def test_identity_twisting_changes_nothing():
    alg = corpus_algebra("upper2")
    s = underlying_b_infinity(alg, 4)
    twisted = twist_b_infinity(s, identity_twisting(alg.space, 4), 4)
    assert structures_equal(twisted, s, 4) is None


def test_twisting_preserves_b_infinity_laws():
    # an arbitrary degree-0 t_2 on a graded space: twisted quasi-shuffle is still B-infinity
    V = GradedSpace([("x", 0), ("y", 1)])
    bullet = MultiMap(V, 2, 1, 0, table={(0, 0): {(0,): 1}, (0, 1): {(1,): 1}, (1, 0): {(1,): 1}})
    d = MultiMap(V, 1, 1, -1, table={(1,): {(0,): 1}})
    b = quasi_shuffle_multibrace(V, bullet, 4)
    # x.x = x, x.y = y.x = y, d y = x: d(y.y) = 0 = x.y - y.x
    s = BInfinity(AInfinity(V, {1: d}, 4), b)
    assert all(r.passed for r in check_b_infinity(s, 4, 4, 4))
    t2 = MultiMap(V, 2, 1, 0, table={(0, 1): {(1,): Fraction(1, 2)}, (1, 0): {(1,): 3}, (0, 0): {(0,): -2}})
    tau = Twisting(V, {2: t2}, 4)
    twisted = twist_b_infinity(s, tau, 4)
    assert all(r.passed for r in check_b_infinity(twisted, 4, 4, 4))
    assert structures_equal(twisted, s, 4) is not None


def test_twisting_validation():
    V = GradedSpace([("x", 0)])
    with pytest.raises(ValueError):
        Twisting(V, {1: MultiMap(V, 1, 1, 0, table={})}, 3)
    with pytest.raises(CapError):
        identity_twisting(V, 2).component(3)
    nonassoc_space = GradedSpace([("a", 0), ("b", 0)])
    bad = MultiMap(nonassoc_space, 2, 1, 0, table={(0, 0): {(1,): 1}, (1, 0): {(0,): 1}})
    with pytest.raises(AxiomError):
        twisting_from_product(nonassoc_space, bad, 3)
    assert iterated_product(identity_map(V), (0,)) == {0: ONE}


@pytest.mark.parametrize("name", NAMES)
def test_path_independence_small(name):
    alg = corpus_algebra(name)
    tau = twisting_from_product(alg.space, alg.circ, 4)
    twisted = twist_b_infinity(quasi_trivial_of(alg, 4), tau, 4)
    assert structures_equal(twisted, underlying_b_infinity(alg, 4), 4) is None
