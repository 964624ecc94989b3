from fractions import Fraction

import pytest

from binfty.corpus import NAMES, corpus_algebra
from binfty.errors import CapError
from binfty.graded import GradedSpace, MultiMap, add_term
from binfty.infbialg import (
    InfBialgebra, TwoAssocDiffBialgebra, check_triangle, check_unital_infinitesimal, counit_F,
    derived_structures_prime, enveloping, fundamental_bialgebra, fundamental_dg_bialgebra,
    prim_b_infinity, shuffle_bialgebra, validate_bialgebra,
)
from binfty.structures import AInfinity, BInfinity, Multibrace, shuffle_product, structures_equal
from binfty.tcoalg import TensorSpace, conilpotent_radical, primitives
from binfty.underlying import quasi_trivial_of, underlying_b_infinity

ONE = Fraction(1)
V2 = GradedSpace([("v", 0), ("w", 1)])


def test_fundamental_bialgebra_generators_primitive():
    f = fundamental_bialgebra(V2, 3)
    T = f.space
    one = T.gen(())
    for g in range(2):
        x = T.gen((g,))
        assert f.delta({x: ONE}) == {(x, one): ONE, (one, x): ONE}


def test_fundamental_coproduct_is_deconcatenation():
    f = fundamental_bialgebra(V2, 3)
    T = f.space
    for word in T.word_list:
        expected = {(T.gen(word[:i]), T.gen(word[i:])): ONE for i in range(len(word) + 1)}
        assert f.delta({T.gen(word): ONE}) == expected


def test_products_of_primitives_deconcatenate():
    # Delta(v1 o ... o vk) = sum_i (v1 o..o vi) x (v_{i+1} o..o vk) for primitive generators
    f = fundamental_bialgebra(V2, 4)
    T = f.space
    for word in [(0, 1, 1), (1, 0, 1, 0)]:
        prod = {T.gen(()): ONE}
        for g in word:
            prod = f.mult(prod, {T.gen((g,)): ONE})
        expected = {(T.gen(word[:i]), T.gen(word[i:])): ONE for i in range(len(word) + 1)}
        assert f.delta(prod) == expected


def test_unital_infinitesimal_holds_on_fundamental():
    rep = check_unital_infinitesimal(fundamental_bialgebra(V2, 5))
    assert rep.passed
    assert set(rep.verdicts) == {"relation", ("iterate", 1), ("iterate", 2), ("iterate", 3)}


def test_shuffle_bialgebra_is_not_infinitesimal():
    sh = shuffle_bialgebra(GradedSpace([("v", 0)]), 3)
    rep = check_unital_infinitesimal(sh)
    assert not rep.passed
    assert rep.counterexample["inputs"] == "[v] [v]"


def test_lemma_filtration_of_products():
    # reduced iterates: D^(i) x = 0 and D^(j) y = 0 imply D^(i+j)(x o y) = 0
    f = fundamental_bialgebra(V2, 4)
    T = f.space
    for x in T.word_list[1:]:
        for y in T.word_list[1:]:
            if len(x) + len(y) > 4:
                continue
            prod = f.mult({T.gen(x): ONE}, {T.gen(y): ONE})
            assert f.iterated(prod, len(x) + len(y)) == {}


def test_primed_structures_on_fundamental():
    res = derived_structures_prime(fundamental_bialgebra(V2, 3))
    rep = res.report
    assert rep.passed
    T = TensorSpace(V2, 3)
    one = T.gen(())
    assert res.delta_prime((one, one)) == {(one, one, one, one): ONE}
    assert all(rep.verdicts[("equivalent", k)] for k in (1, 2, 3))


def test_primed_structures_verdicts_agree_on_failure():
    rep = derived_structures_prime(shuffle_bialgebra(GradedSpace([("v", 0)]), 3)).report
    assert rep.verdicts["Delta' coassociative"] and rep.verdicts["o' associative"]
    assert [rep.verdicts[("equivalent", k)] for k in (1, 2, 3)] == [False, False, False]
    assert rep.verdicts["equivalence agrees"]


def test_counit_F_on_fundamental_is_isomorphism():
    f = fundamental_bialgebra(V2, 3)
    res = counit_F(f)
    assert res.injective and res.image_is_radical
    assert res.rank == f.space.dim == len(res.words)


def test_counit_F_on_ground_field():
    sp = GradedSpace([("1", 0)], unit="1")
    one = MultiMap(sp, 2, 1, 0, table={(0, 0): {(0,): 1}})
    delta = MultiMap(sp, 1, 2, 0, table={(0,): {(0, 0): 1}})
    res = counit_F(InfBialgebra(sp, one, delta))
    assert res.prim.dim == 0 and res.words == [()] and res.injective and res.image_is_radical


def test_enveloping_of_zero_structure_uses_shuffle():
    A = GradedSpace([("a", 0), ("b", 1)])
    s = BInfinity(AInfinity(A, {}, 3), Multibrace(A, {}, 3))
    U = enveloping(s, 3)
    T = U.space
    for x in T.word_list:
        for y in T.word_list:
            if len(x) + len(y) > 3:
                continue
            expected = {(T.gen(w),): c for w, c in shuffle_product({x: ONE}, {y: ONE}, A).items()}
            assert U.alg.bullet((T.gen(x), T.gen(y))) == expected


@pytest.mark.parametrize("name", NAMES)
def test_enveloping_round_trip(name):
    A = underlying_b_infinity(corpus_algebra(name), 3)
    U = enveloping(A, 3)
    assert all(r.passed for r in validate_bialgebra(U))
    assert conilpotent_radical(U.coalgebra).dim == U.space.dim
    res = prim_b_infinity(U, 3)
    assert res.conilpotent and res.closure.passed
    assert res.names == ["[" + n + "]" for n in A.space.names]
    assert structures_equal(A, res.structure, 3) is None


def test_enveloping_cap_checked():
    A = quasi_trivial_of(corpus_algebra("ext1"), 2)
    with pytest.raises(CapError):
        enveloping(A, 3)


def test_fundamental_dg_bialgebra_primitives_are_quasi_trivial():
    base = GradedSpace([("x", 0), ("y", 1)])
    b = fundamental_dg_bialgebra(base, 3)
    res = prim_b_infinity(b, 3)
    assert res.prim.dim == 2
    s = res.structure
    assert all(s.a.m_n(n).is_zero() for n in range(1, 4))
    assert s.b.component(1, 1).is_zero()


def test_triangle_identity():
    assert check_triangle(quasi_trivial_of(corpus_algebra("poly3"), 4), 4).passed


def test_non_conilpotent_reported():
    sp = GradedSpace([("1", 0), ("h", 0)], unit="1")
    # h + 1 group-like, h o h = h: a unital algebra and coalgebra that is not conilpotent
    circ = MultiMap(sp, 2, 1, 0, table={(0, 0): {(0,): 1}, (0, 1): {(1,): 1}, (1, 0): {(1,): 1}, (1, 1): {(1,): 1}})
    zero_d = MultiMap(sp, 1, 1, -1, table={})
    delta = MultiMap(sp, 1, 2, 0, table={(0,): {(0, 0): 1}, (1,): {(1, 0): 1, (0, 1): 1, (1, 1): 1}})
    from binfty.underlying import TwoAssocDiffAlgebra

    b = TwoAssocDiffBialgebra(TwoAssocDiffAlgebra(sp, circ, circ, zero_d), delta)
    res = prim_b_infinity(b, 2)
    assert not res.conilpotent
    assert res.witness["inputs"] == "h"
    assert primitives(b.coalgebra).dim == 0
