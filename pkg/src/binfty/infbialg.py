"""Unital infinitesimal bialgebras, 2-associative differential bialgebras and primitives.

Carriers are finite graded bases with an adapted counit (the counit reads
the unit coordinate). Truncated tensor objects are weighted spaces; their
laws are checked only on basis tuples of total weight within the cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapError, InconsistencyError
from .exactcore import SparseMatrix, rank
from .graded import ONE, GradedSpace, MultiMap, add_scaled, add_term, fmt_combo
from .structures import AInfinity, BInfinity, LawReport, Multibrace, compositions
from .tcoalg import FiniteCoalgebra, Subspace, TensorSpace, conilpotent_radical, primitives
from .underlying import TwoAssocDiffAlgebra, UnderlyingStructure, tensor_algebra_of, validate


def _fmt(space, combo):
    return fmt_combo(space, combo)


class InfBialgebra:
    """(B, circ, 1, Delta, counit) on a finite basis."""

    def __init__(self, space: GradedSpace, circ: MultiMap, delta: MultiMap, name=""):
        if space.unit is None:
            raise ValueError("an infinitesimal bialgebra needs a designated unit")
        self.space = space
        self.circ = circ
        self.delta_map = delta
        self.coalgebra = FiniteCoalgebra(space, delta, name=name)
        self.name = name

    @property
    def unit(self):
        return self.space.unit

    def counit(self, vec: dict):
        return vec.get(self.unit, 0)

    def mult(self, x: dict, y: dict) -> dict:
        acc = {}
        for g, c in x.items():
            for h, c2 in y.items():
                for (u,), c3 in self.circ((g, h)).items():
                    add_term(acc, u, c * c2 * c3)
        return acc

    def delta(self, vec: dict) -> dict:
        return self.coalgebra.coproduct(vec)

    def reduced(self, vec: dict) -> dict:
        return self.coalgebra.reduced(vec)

    def iterated(self, vec: dict, r: int) -> dict:
        return self.coalgebra.iterated_reduced(vec, r)


def _uib_rhs(w: InfBialgebra, x: int, y: int) -> dict:
    """x_(1) (x) x_(2) y + x y_(1) (x) y_(2) - x (x) y."""
    out = {}
    for (a, b), c in w.delta({x: ONE}).items():
        for g, c2 in w.mult({b: ONE}, {y: ONE}).items():
            add_term(out, (a, g), c * c2)
    for (a, b), c in w.delta({y: ONE}).items():
        for g, c2 in w.mult({x: ONE}, {a: ONE}).items():
            add_term(out, (g, b), c * c2)
    add_term(out, (x, y), -ONE)
    return out


def _tensor_mult(w: InfBialgebra, left: dict, right: dict) -> dict:
    """Factorwise product of two combinations of (n+1)-tuples.

    Only used where every factor of ``left`` after position r and every
    factor of ``right`` before it is the unit, so no Koszul sign arises.
    """
    out = {}
    for k1, c1 in left.items():
        for k2, c2 in right.items():
            acc = {(): c1 * c2}
            for a, b in zip(k1, k2):
                prod = w.mult({a: ONE}, {b: ONE})
                nxt = {}
                for key, c in acc.items():
                    for g, c3 in prod.items():
                        add_term(nxt, key + (g,), c * c3)
                acc = nxt
                if not acc:
                    break
            add_scaled(out, acc)
    return out


def _iterate_rhs(w: InfBialgebra, x: int, y: int, n: int) -> dict:
    u = w.unit
    out = {}
    for r in range(n + 1):
        s = n - r
        left = {k + (u,) * s: c for k, c in w.iterated({x: ONE}, r).items()}
        right = {(u,) * r + k: c for k, c in w.iterated({y: ONE}, s).items()}
        add_scaled(out, _tensor_mult(w, left, right))
    for r in range(n):
        s = n - 1 - r
        for k1, c1 in w.iterated({x: ONE}, r).items():
            for k2, c2 in w.iterated({y: ONE}, s).items():
                add_term(out, k1 + k2, c1 * c2)
    return out


def check_unital_infinitesimal(w: InfBialgebra, iterate_max: int = 3) -> LawReport:
    """Delta(xy) = x_(1) (x) x_(2) y + x y_(1) (x) y_(2) - x (x) y on basis pairs,
    plus the iterated reduced form up to ``iterate_max``."""
    space = w.space
    report = LawReport("unital infinitesimal")
    report.verdicts["relation"] = True
    pairs = list(space.bounded_words(2))
    for x, y in pairs:
        lhs = w.delta(w.mult({x: ONE}, {y: ONE}))
        rhs = _uib_rhs(w, x, y)
        if lhs != rhs:
            report.record("relation", False, {"inputs": space.fmt_word((x, y)),
                                              "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
            break
    u = w.unit
    for n in range(1, iterate_max + 1):
        key = ("iterate", n)
        report.verdicts[key] = True
        for x, y in pairs:
            if x == u or y == u:
                continue
            lhs = w.iterated(w.mult({x: ONE}, {y: ONE}), n)
            rhs = _iterate_rhs(w, x, y, n)
            if lhs != rhs:
                report.record(key, False, {"inputs": space.fmt_word((x, y)),
                                           "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
                break
    return report


# -- the primed structures on B (x) B ------------------------------------------------

@dataclass
class PrimeStructures:
    delta_prime: object
    circ_prime: object
    report: LawReport


def _delta_prime(w: InfBialgebra, x: int, y: int) -> dict:
    """(x_(1) 1)(x_(2) y) + (x y_(1))(1 y_(2)) - (x 1)(1 y), keyed by 4-tuples."""
    u = w.unit
    out = {}
    for (a, b), c in w.delta({x: ONE}).items():
        add_term(out, (a, u, b, y), c)
    for (a, b), c in w.delta({y: ONE}).items():
        add_term(out, (x, a, u, b), c)
    add_term(out, (x, u, u, y), -ONE)
    return out


def _circ_prime(w: InfBialgebra, X, Y) -> dict:
    """(x1 x2) o' (y1 y2) = e(y1) x1 (x) x2 y2 + e(x2) x1 y1 (x) y2 - e(x2 y1) x1 (x) y2."""
    x1, x2 = X
    y1, y2 = Y
    out = {}
    ey1 = w.counit({y1: ONE})
    if ey1:
        for g, c in w.mult({x2: ONE}, {y2: ONE}).items():
            add_term(out, (x1, g), ey1 * c)
    ex2 = w.counit({x2: ONE})
    if ex2:
        for g, c in w.mult({x1: ONE}, {y1: ONE}).items():
            add_term(out, (g, y2), ex2 * c)
    e = w.counit(w.mult({x2: ONE}, {y1: ONE}))
    if e:
        add_term(out, (x1, y2), -e)
    return out


def _circ_prime_combo(w, left: dict, right: dict) -> dict:
    out = {}
    for X, c1 in left.items():
        for Y, c2 in right.items():
            add_scaled(out, _circ_prime(w, X, Y), c1 * c2)
    return out


def derived_structures_prime(w: InfBialgebra) -> PrimeStructures:
    """Build Delta' and o' on B (x) B and check their laws plus the three equivalent verdicts."""
    space = w.space
    u = w.unit
    report = LawReport("primed structures")

    def dprime(X):
        return _delta_prime(w, *X)

    def cprime(X, Y):
        return _circ_prime(w, X, Y)

    def eps2(key):
        return ONE if all(g == u for g in key) else 0

    pairs = list(space.bounded_words(2))
    # Delta' coassociativity and counit laws
    for key in ("Delta' coassociative", "Delta' counit", "1(x)1 group-like"):
        report.verdicts[key] = True
    if dprime((u, u)) != {(u, u, u, u): ONE}:
        report.record("1(x)1 group-like", False, {"inputs": "1 1", "lhs": str(dprime((u, u))), "rhs": "1 1 | 1 1"})
    for x, y in pairs:
        d1 = dprime((x, y))
        lhs, rhs = {}, {}
        left_counit, right_counit = {}, {}
        for (a, b, c_, d), c in d1.items():
            for k, c2 in dprime((a, b)).items():
                add_term(lhs, k + (c_, d), c * c2)
            for k, c2 in dprime((c_, d)).items():
                add_term(rhs, (a, b) + k, c * c2)
            if eps2((a, b)):
                add_term(left_counit, (c_, d), c)
            if eps2((c_, d)):
                add_term(right_counit, (a, b), c)
        if lhs != rhs:
            report.record("Delta' coassociative", False, {"inputs": space.fmt_word((x, y)),
                                                          "lhs": str(len(lhs)), "rhs": str(len(rhs))})
        if left_counit != {(x, y): ONE} or right_counit != {(x, y): ONE}:
            report.record("Delta' counit", False, {"inputs": space.fmt_word((x, y)),
                                                   "lhs": str(left_counit), "rhs": str(right_counit)})
    # o' associativity, unit and counit
    for key in ("o' associative", "o' unit", "o' counit"):
        report.verdicts[key] = True
    for X in pairs:
        if cprime((u, u), X) != {X: ONE} or cprime(X, (u, u)) != {X: ONE}:
            report.record("o' unit", False, {"inputs": space.fmt_word(X)})
    for x1, x2, y1, y2 in space.bounded_words(4):
        X, Y = (x1, x2), (y1, y2)
        lhs = sum((c for k, c in cprime(X, Y).items() if eps2(k)), 0)
        if lhs != eps2(X) * eps2(Y):
            report.record("o' counit", False, {"inputs": space.fmt_word(X + Y)})
    for word in space.bounded_words(6):
        X, Y, Z = word[0:2], word[2:4], word[4:6]
        lhs = _circ_prime_combo(w, cprime(X, Y), {Z: ONE})
        rhs = _circ_prime_combo(w, {X: ONE}, cprime(Y, Z))
        if lhs != rhs:
            report.record("o' associative", False, {"inputs": space.fmt_word(word)})
            break
    # the three equivalent conditions
    verdicts = {1: True, 2: True, 3: True}
    for x, y in pairs:
        lhs = w.delta(w.mult({x: ONE}, {y: ONE}))
        if lhs != _uib_rhs(w, x, y):
            verdicts[1] = False
        via_prime = {}
        for (a, b, c_, d), c in dprime((x, y)).items():
            for g, c2 in w.mult({a: ONE}, {b: ONE}).items():
                for h, c3 in w.mult({c_: ONE}, {d: ONE}).items():
                    add_term(via_prime, (g, h), c * c2 * c3)
        if lhs != via_prime:
            verdicts[2] = False
        if lhs != _circ_prime_combo(w, w.delta({x: ONE}), w.delta({y: ONE})):
            verdicts[3] = False
    for k, ok in verdicts.items():
        report.verdicts[("equivalent", k)] = ok
    report.verdicts["equivalence agrees"] = len(set(verdicts.values())) == 1
    if not report.verdicts["equivalence agrees"] and report.counterexample is None:
        report.counterexample = {"arity": "equivalence agrees", "inputs": str(verdicts)}
    return PrimeStructures(dprime, cprime, report)


# -- fundamental bialgebra and the counit F_W ---------------------------------------

def _concat_map(V: TensorSpace) -> MultiMap:
    def rule(inp):
        g, h = inp
        return {(V.gen(V.word_list[g] + V.word_list[h]),): ONE}
    return MultiMap(V, 2, 1, 0, rule=rule, name="concat")


def _deconcat_map(V: TensorSpace) -> MultiMap:
    def rule(inp):
        w = V.word_list[inp[0]]
        return {(V.gen(w[:i]), V.gen(w[i:])): ONE for i in range(len(w) + 1)}
    return MultiMap(V, 1, 2, 0, rule=rule, name="Delta").materialize()


def fundamental_bialgebra(base: GradedSpace, cap: int) -> InfBialgebra:
    """T^fc(V) truncated at word length cap: concatenation and deconcatenation."""
    V = TensorSpace(base, cap)
    return InfBialgebra(V, _concat_map(V), _deconcat_map(V), name=f"T^fc({cap})")


def shuffle_bialgebra(base: GradedSpace, cap: int) -> InfBialgebra:
    """T^c(V) with the shuffle product: a bialgebra that is not infinitesimal."""
    from .structures import shuffle_product

    V = TensorSpace(base, cap)

    def rule(inp):
        g, h = inp
        out = shuffle_product({V.word_list[g]: ONE}, {V.word_list[h]: ONE}, base)
        return {(V.gen(w),): c for w, c in out.items()}

    return InfBialgebra(V, MultiMap(V, 2, 1, 0, rule=rule, name="shuffle"), _deconcat_map(V),
                        name=f"shuffle({cap})")


@dataclass
class CounitResult:
    prim: Subspace
    words: list
    matrix: SparseMatrix
    rank: int
    radical_dim: int
    injective: bool
    image_is_radical: bool


def _prim_weights(space: GradedSpace, prim: Subspace):
    return [prim.vector_weight(v) for v in prim.basis]


def _prim_words(space: GradedSpace, prim: Subspace):
    """Words in the primitive basis whose images are defined within the weight cap."""
    weights = _prim_weights(space, prim)
    cap = space.weight_cap if space.weights is not None else space.dim
    words = [()]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for w, wt in frontier:
            for k, pw in enumerate(weights):
                if wt + max(pw, 1) <= cap:
                    nxt.append((w + (k,), wt + max(pw, 1)))
        frontier = nxt
        words.extend(w for w, _ in nxt)
    return sorted(words, key=lambda w: (len(w), w))


def counit_F(w: InfBialgebra) -> CounitResult:
    """F_W(p_1 ... p_k) = p_1 o ... o p_k on T^fc(Prim W), with injectivity and image checks."""
    prim = primitives(w.coalgebra)
    words = _prim_words(w.space, prim)
    cols = []
    for word in words:
        acc = {w.unit: ONE}
        for k in word:
            acc = w.mult(acc, prim.basis[k])
        cols.append(acc)
    entries = {}
    for j, v in enumerate(cols):
        for g, c in v.items():
            entries[g, j] = c
    m = SparseMatrix(w.space.dim, len(words), entries)
    r = rank(m)
    radical = conilpotent_radical(w.coalgebra)
    inside = all(radical.contains(v) for v in cols)
    return CounitResult(prim, words, m, r, radical.dim, r == len(words), inside and r == radical.dim)


# -- 2-associative differential bialgebras -----------------------------------------

class TwoAssocDiffBialgebra:
    """A 2-associative differential algebra with a coproduct making (V, d, bullet, Delta)
    a dg bialgebra and (V, circ, Delta) a unital infinitesimal bialgebra."""

    def __init__(self, alg: TwoAssocDiffAlgebra, delta: MultiMap, name=""):
        self.alg = alg
        self.delta_map = delta
        self.name = name or alg.name
        self.inf = InfBialgebra(alg.space, alg.circ, delta, name=self.name)

    @property
    def space(self):
        return self.alg.space

    @property
    def coalgebra(self):
        return self.inf.coalgebra


def validate_bialgebra(b: TwoAssocDiffBialgebra) -> list[LawReport]:
    """All laws of a 2-associative differential bialgebra, within weight caps."""
    alg, space, co = b.alg, b.space, b.coalgebra
    reports = [validate(alg)]
    coal = LawReport("coalgebra")
    for key, bad in (("counit", co.check_counit()), ("coassociative", co.check_coassociativity())):
        coal.record(key, bad is None, None if bad is None else {"inputs": space.names[bad]})
    reports.append(coal)

    dg = LawReport("dg bialgebra")
    dg.verdicts["Delta bullet"] = True
    dg.verdicts["counit bullet"] = True
    degs = space.degrees
    for x, y in space.bounded_words(2):
        lhs = co.coproduct(alg.mult(alg.bullet, {x: ONE}, {y: ONE}))
        rhs = {}
        for (x1, x2), c1 in co.delta(x).items():
            for (y1, y2), c2 in co.delta(y).items():
                sign = -1 if (degs[x2] * degs[y1]) % 2 else 1
                for g, c3 in alg.mult(alg.bullet, {x1: ONE}, {y1: ONE}).items():
                    for h, c4 in alg.mult(alg.bullet, {x2: ONE}, {y2: ONE}).items():
                        add_term(rhs, (g, h), sign * c1 * c2 * c3 * c4)
        if lhs != rhs:
            dg.record("Delta bullet", False, {"inputs": space.fmt_word((x, y)),
                                              "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
        e = alg.mult(alg.bullet, {x: ONE}, {y: ONE}).get(space.unit, 0)
        if e != (ONE if x == y == space.unit else 0):
            dg.record("counit bullet", False, {"inputs": space.fmt_word((x, y))})
    dg.verdicts["Delta d"] = True
    for (x,) in space.bounded_words(1):
        lhs = co.coproduct(alg.d({x: ONE}))
        rhs = {}
        for (x1, x2), c in co.delta(x).items():
            for g, c2 in alg.d({x1: ONE}).items():
                add_term(rhs, (g, x2), c * c2)
            sign = -1 if degs[x1] % 2 else 1
            for g, c2 in alg.d({x2: ONE}).items():
                add_term(rhs, (x1, g), sign * c * c2)
        if lhs != rhs:
            dg.record("Delta d", False, {"inputs": space.names[x],
                                         "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
    reports.append(dg)
    reports.append(check_unital_infinitesimal(b.inf))
    return reports


def enveloping(s: BInfinity, cap: int) -> TwoAssocDiffBialgebra:
    """U(A): truncated T^c(A) with the multibrace product, the A-infinity coderivation,
    concatenation and deconcatenation."""
    if cap < 1:
        raise CapError("cap must be >= 1")
    if cap > min(s.a.arity_cap, s.b.arity_cap):
        raise CapError(f"cap {cap} exceeds the arity caps of the B-infinity algebra")
    alg = tensor_algebra_of(s, cap, name="U(A)")
    return TwoAssocDiffBialgebra(alg, _deconcat_map(alg.space), name="U(A)")


def fundamental_dg_bialgebra(base: GradedSpace, cap: int) -> TwoAssocDiffBialgebra:
    """T^fc(V) with zero differential and the shuffle product as bullet."""
    from .structures import quasi_trivial_b_infinity

    zero_bullet = MultiMap(base, 2, 1, 0, table={})
    zero_d = MultiMap(base, 1, 1, -1, table={})
    s = quasi_trivial_b_infinity(base, zero_bullet, zero_d, cap)
    b = enveloping(s, cap)
    b.name = b.alg.name = "T^fc(V)"
    return b


def check_triangle(s: BInfinity, cap: int = 4) -> LawReport:
    """eps_{T^c(A)} T^c(eta_A) = id on words of length <= cap."""
    from .underlying import counit_epsilon

    alg = tensor_algebra_of(s, cap)
    V = alg.space
    base = s.space
    report = LawReport("triangle identity")
    for n in range(0, cap + 1):
        report.verdicts.setdefault(n, True)
        for word in base.words(n):
            lifted = tuple(V.gen((g,)) for g in word)
            got = counit_epsilon(alg, {lifted: ONE})
            if got != {V.gen(word): ONE}:
                report.record(n, False, {"inputs": base.fmt_word(word), "lhs": str(got), "rhs": base.fmt_word(word)})
    return report


@dataclass
class PrimResult:
    prim: Subspace
    space: GradedSpace | None
    structure: BInfinity | None
    closure: LawReport
    conilpotent: bool
    witness: dict | None = None
    names: list = field(default_factory=list)


def _conilpotency_witness(co: FiniteCoalgebra, radical: Subspace):
    space = co.space
    L = space.weight_cap if space.weights is not None else space.dim
    for g in co.reduced_basis():
        if not radical.contains({g: ONE}):
            return {"inputs": space.names[g], "iterate": L,
                    "value": fmt_combo(space, co.iterated_reduced({g: ONE}, L))}
    return None


def prim_b_infinity(b: TwoAssocDiffBialgebra, cap: int = 4) -> PrimResult:
    """Restrict the underlying B-infinity structure of b to its primitives."""
    space, co = b.space, b.coalgebra
    co.validate()
    radical = conilpotent_radical(co)
    prim = primitives(co)
    if radical.dim != space.dim:
        return PrimResult(prim, None, None, LawReport("closure"), False, _conilpotency_witness(co, radical))

    names, degrees, weights = [], [], []
    for k, v in enumerate(prim.basis):
        if len(v) == 1 and next(iter(v.values())) == ONE:
            names.append(space.names[next(iter(v))])
        else:
            names.append(f"p{k + 1}")
        degrees.append(prim.vector_degree(v))
        weights.append(prim.vector_weight(v))
    weighted = space.weights is not None
    P = GradedSpace(list(zip(names, degrees)), weights=weights if weighted else None,
                    weight_cap=space.weight_cap if weighted else None)
    und = UnderlyingStructure(b.alg, cap)
    closure = LawReport("closure under structure maps")

    def restrict(f: MultiMap, key):
        def rule(word):
            acc = {(): ONE}
            for k in word:
                nxt = {}
                for w, c in acc.items():
                    for g, c2 in prim.basis[k].items():
                        nxt[w + (g,)] = nxt.get(w + (g,), 0) + c * c2
                acc = nxt
            val = {}
            for w, c in acc.items():
                for (g,), c2 in f(w).items():
                    add_term(val, g, c * c2)
            coords = prim.coords(val)
            if coords is None:
                closure.record(key, False, {"inputs": P.fmt_word(word), "lhs": _fmt(space, {(g,): c for g, c in val.items()}),
                                            "rhs": "outside Prim"})
                raise InconsistencyError(f"{f.name} maps primitives {P.fmt_word(word)} outside Prim")
            closure.record(key, True)
            return {(k,): c for k, c in enumerate(coords) if c}
        return rule

    ai = {}
    for n in range(1, cap + 1):
        ai[n] = MultiMap(P, n, 1, -1, rule=restrict(und.a_infinity.m_n(n), ("m", n)), name=f"m_{n}").materialize()
    mb = {}
    for total in range(2, cap + 1):
        for i, j in compositions(total, 2, positive=True):
            mb[i, j] = MultiMap(P, total, 1, 0, rule=restrict(und.multibrace.component(i, j), ("m", i, j)),
                                name=f"m_{i},{j}").materialize()
    s = BInfinity(AInfinity(P, ai, cap), Multibrace(P, mb, cap))
    return PrimResult(prim, P, s, closure, True, None, names)
