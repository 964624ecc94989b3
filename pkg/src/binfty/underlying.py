"""2-associative differential algebras and their underlying B-infinity structure.

For (V, bullet, circ, 1, d) the structure maps are computed by the
recursions

    m_{i,j} = bullet(circ^{(i-1)} x circ^{(j-1)}) - sum_{r>=2} circ^{(r-1)} m_{i,j}^r
    m_n     = d circ^{(n-1)} - sum_{k>=2} circ^{(k-1)} m_n^k

in increasing total arity; the r >= 2 (k >= 2) components only involve
strictly smaller arities.
"""

from __future__ import annotations

from .errors import AxiomError, CapError
from .graded import ONE, GradedSpace, MultiMap, add_scaled, add_term, fmt_combo
from .structures import (
    AInfinity, BInfinity, LawReport, Multibrace, check_associative, check_leibniz,
    check_square_zero, compositions, quasi_trivial_b_infinity,
)
from .tcoalg import TensorSpace
from .twisting import iterated_product


class TwoAssocDiffAlgebra:
    """(V, bullet, circ, 1, d): a dga (V, bullet, 1, d) with a second associative product circ sharing the unit."""

    def __init__(self, space: GradedSpace, bullet: MultiMap, circ: MultiMap, diff: MultiMap, name=""):
        if space.unit is None:
            raise ValueError("a 2-associative differential algebra needs a designated unit")
        for op, label in ((bullet, "bullet"), (circ, "circ")):
            if (op.in_arity, op.out_arity, op.degree) != (2, 1, 0):
                raise ValueError(f"{label} must be a degree 0 binary operation")
        if (diff.in_arity, diff.out_arity, diff.degree) != (1, 1, -1):
            raise ValueError("diff must be a degree -1 endomorphism")
        self.space = space
        self.bullet = bullet
        self.circ = circ
        self.diff = diff
        self.name = name
        self._circ_cache = {}

    @property
    def unit(self) -> int:
        return self.space.unit

    def circ_power(self, word) -> dict:
        """circ^{(n-1)}(v1 ... vn) as {generator: coeff}."""
        word = tuple(word)
        hit = self._circ_cache.get(word)
        if hit is None:
            hit = self._circ_cache[word] = iterated_product(self.circ, word)
        return hit

    def mult(self, op: MultiMap, x: dict, y: dict) -> dict:
        acc = {}
        for g, c in x.items():
            for h, c2 in y.items():
                for (u,), c3 in op((g, h)).items():
                    add_term(acc, u, c * c2 * c3)
        return acc

    def d(self, x: dict) -> dict:
        acc = {}
        for g, c in x.items():
            for (u,), c2 in self.diff((g,)).items():
                add_term(acc, u, c * c2)
        return acc


def _unit_report(op: MultiMap, unit: int, law: str) -> LawReport:
    space = op.space
    report = LawReport(law)
    report.verdicts[1] = True
    for (g,) in space.bounded_words(1):
        for inp in ((unit, g), (g, unit)):
            out = op(inp)
            if out != {(g,): ONE}:
                report.record(1, False, {"inputs": space.fmt_word(inp), "lhs": fmt_combo(space, out),
                                         "rhs": space.names[g]})
                return report
    return report


def validate(alg: TwoAssocDiffAlgebra) -> LawReport:
    """Check the dAs^{1,1} axioms. Leibniz for circ is deliberately not required."""
    parts = [
        check_associative(alg.bullet, "bullet associativity"),
        check_associative(alg.circ, "circ associativity"),
        _unit_report(alg.bullet, alg.unit, "bullet unit"),
        _unit_report(alg.circ, alg.unit, "circ unit"),
        check_square_zero(alg.diff),
        check_leibniz(alg.bullet, alg.diff, "Leibniz (bullet)"),
    ]
    report = LawReport("dAs^{1,1} axioms")
    for p in parts:
        report.record(p.law, p.passed, p.counterexample and dict(p.counterexample, law=p.law))
    return report


def require_valid(alg: TwoAssocDiffAlgebra) -> None:
    rep = validate(alg)
    if not rep.passed:
        ce = rep.counterexample
        raise AxiomError(ce["law"], ce.get("inputs"), f"lhs = {ce.get('lhs')}, rhs = {ce.get('rhs')}")


class UnderlyingStructure:
    """Lazily evaluated underlying B-infinity structure of a 2-associative differential algebra."""

    def __init__(self, alg: TwoAssocDiffAlgebra, cap: int, word_cap=None):
        self.alg = alg
        self.cap = cap
        space = alg.space
        mb = {}
        for total in range(2, cap + 1):
            for i, j in compositions(total, 2, positive=True):
                mb[i, j] = MultiMap(space, total, 1, 0, rule=self._mb_rule(i), name=f"m_{i},{j}")
        ai = {n: MultiMap(space, n, 1, -1, rule=self._ainf_rule, name=f"m_{n}") for n in range(1, cap + 1)}
        self.multibrace = Multibrace(space, mb, cap, word_cap)
        self.a_infinity = AInfinity(space, ai, cap, word_cap)

    def _mb_rule(self, i):
        alg = self.alg

        def rule(word):
            x, y = word[:i], word[i:]
            out = alg.mult(alg.bullet, alg.circ_power(x), alg.circ_power(y))
            for w, c in self.multibrace.product().higher((x, y)).items():
                add_scaled(out, alg.circ_power(w), -c)
            return {(g,): c for g, c in out.items()}

        return rule

    def _ainf_rule(self, word):
        alg = self.alg
        out = alg.d(alg.circ_power(word))
        for w, c in self.a_infinity.coderivation().higher(word).items():
            add_scaled(out, alg.circ_power(w), -c)
        return {(g,): c for g, c in out.items()}

    def b_infinity(self) -> BInfinity:
        return BInfinity(self.a_infinity, self.multibrace)


def _maybe_materialize(family: dict, space: GradedSpace) -> dict:
    if space.weights is not None:
        return family
    return {k: f.materialize() for k, f in family.items()}


def derive_multibrace(alg: TwoAssocDiffAlgebra, cap: int = 6) -> Multibrace:
    u = UnderlyingStructure(alg, cap)
    return Multibrace(alg.space, _maybe_materialize(u.multibrace.m, alg.space), cap)


def derive_a_infinity(alg: TwoAssocDiffAlgebra, cap: int = 6) -> AInfinity:
    u = UnderlyingStructure(alg, cap)
    return AInfinity(alg.space, _maybe_materialize(u.a_infinity.m, alg.space), cap)


def underlying_b_infinity(alg: TwoAssocDiffAlgebra, cap: int = 6) -> BInfinity:
    u = UnderlyingStructure(alg, cap)
    space = alg.space
    return BInfinity(AInfinity(space, _maybe_materialize(u.a_infinity.m, space), cap),
                     Multibrace(space, _maybe_materialize(u.multibrace.m, space), cap))


def quasi_trivial_of(alg: TwoAssocDiffAlgebra, cap: int = 6) -> BInfinity:
    return quasi_trivial_b_infinity(alg.space, alg.bullet, alg.diff, cap)


def borjeson_closed_form(alg: TwoAssocDiffAlgebra, n: int) -> MultiMap:
    """Explicit m_n: for n >= 3,
    d(v1..vn) - d(v1..v_{n-1}) vn - (-1)^{|v1|} v1 d(v2..vn) + (-1)^{|v1|} v1 d(v2..v_{n-1}) vn,
    products taken with circ; for n = 2 the last term is absent (d(1) = 0)."""
    if n < 1:
        raise CapError("n must be >= 1")
    space = alg.space
    if n == 1:
        return alg.diff

    def rule(w):
        cp = alg.circ_power
        v1, vn = {w[0]: ONE}, {w[-1]: ONE}
        s1 = -1 if space.degrees[w[0]] % 2 else 1
        out = alg.d(cp(w))
        add_scaled(out, alg.mult(alg.circ, alg.d(cp(w[:-1])), vn), -1)
        add_scaled(out, alg.mult(alg.circ, v1, alg.d(cp(w[1:]))), -s1)
        if n >= 3:
            inner = alg.mult(alg.circ, alg.mult(alg.circ, v1, alg.d(cp(w[1:-1]))), vn)
            add_scaled(out, inner, s1)
        return {(g,): c for g, c in out.items()}

    return MultiMap(space, n, 1, -1, rule=rule, name=f"m_{n} closed form").materialize()


def counit_epsilon(alg: TwoAssocDiffAlgebra, x: dict) -> dict:
    """eps_V(v1 ... vk) = v1 circ ... circ vk, eps_V(1_K) = 1."""
    acc = {}
    for w, c in x.items():
        if not w:
            add_term(acc, alg.unit, c)
        else:
            add_scaled(acc, alg.circ_power(w), c)
    return acc


def check_defining_identities(alg: TwoAssocDiffAlgebra, s: BInfinity, mb_cap=6, ainf_cap=6) -> LawReport:
    """sum_r circ^{(r-1)} m_{i,j}^r = bullet(circ^{(i-1)} x circ^{(j-1)}) and
    sum_k circ^{(k-1)} m_n^k = d circ^{(n-1)}."""
    space = alg.space
    report = LawReport("defining identities")
    mu = s.b.product()
    for total in range(2, mb_cap + 1):
        for i, j in compositions(total, 2, positive=True):
            key = ("mb", i, j)
            report.verdicts.setdefault(key, True)
            for word in space.bounded_words(total):
                x, y = word[:i], word[i:]
                lhs = counit_epsilon(alg, mu.on_basis((x, y)))
                rhs = alg.mult(alg.bullet, alg.circ_power(x), alg.circ_power(y))
                if lhs != rhs:
                    report.record(key, False, {"inputs": f"{space.fmt_word(x)} | {space.fmt_word(y)}",
                                               "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
                    break
    d = s.a.coderivation()
    for n in range(1, ainf_cap + 1):
        key = ("ainf", n)
        report.verdicts.setdefault(key, True)
        for word in space.bounded_words(n):
            lhs = counit_epsilon(alg, d.on_basis(word))
            rhs = alg.d(alg.circ_power(word))
            if lhs != rhs:
                report.record(key, False, {"inputs": space.fmt_word(word),
                                           "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
                break
    return report


def _fmt(space, vec):
    return fmt_combo(space, {(g,): c for g, c in vec.items()})


def check_epsilon_hom(alg: TwoAssocDiffAlgebra, s: BInfinity, cap: int = 4) -> LawReport:
    """eps_V is a 2-associative differential algebra map from (T^c(V), mu, concatenation, d)."""
    space = alg.space
    mu = s.b.product()
    d = s.a.coderivation()
    report = LawReport("eps_V homomorphism")
    for total in range(0, cap + 1):
        for key in (("bullet", total), ("circ", total)):
            report.verdicts.setdefault(key, True)
        for word in space.bounded_words(total):
            for i in range(total + 1):
                x, y = word[:i], word[i:]
                ex, ey = counit_epsilon(alg, {x: ONE}), counit_epsilon(alg, {y: ONE})
                lhs = counit_epsilon(alg, mu.on_basis((x, y)))
                rhs = alg.mult(alg.bullet, ex, ey)
                if lhs != rhs:
                    report.record(("bullet", total), False,
                                  {"inputs": f"{space.fmt_word(x)} | {space.fmt_word(y)}",
                                   "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
                lhs = counit_epsilon(alg, {x + y: ONE})
                rhs = alg.mult(alg.circ, ex, ey)
                if lhs != rhs:
                    report.record(("circ", total), False,
                                  {"inputs": f"{space.fmt_word(x)} | {space.fmt_word(y)}",
                                   "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
        key = ("diff", total)
        report.verdicts.setdefault(key, True)
        for word in space.bounded_words(total):
            lhs = counit_epsilon(alg, d.on_basis(word)) if word else {}
            rhs = alg.d(counit_epsilon(alg, {word: ONE}))
            if lhs != rhs:
                report.record(key, False, {"inputs": space.fmt_word(word),
                                           "lhs": _fmt(space, lhs), "rhs": _fmt(space, rhs)})
    return report


# -- the 2-associative differential algebra T^c(A) of a B-infinity algebra --------

def tensor_algebra_of(s: BInfinity, cap: int, name="") -> TwoAssocDiffAlgebra:
    """(T^c(A), d, mu, concatenation) truncated at word length ``cap``.

    Products whose result would exceed the cap raise TruncationError.
    """
    base = s.space
    V = TensorSpace(base, cap)
    mu = s.b.product()
    dA = s.a.coderivation()

    def bullet_rule(inp):
        g, h = inp
        out = mu.on_basis((V.word_list[g], V.word_list[h]))
        return {(V.gen(w),): c for w, c in out.items()}

    def circ_rule(inp):
        g, h = inp
        return {(V.gen(V.word_list[g] + V.word_list[h]),): ONE}

    def diff_rule(inp):
        (g,) = inp
        out = dA.on_basis(V.word_list[g]) if V.word_list[g] else {}
        return {(V.gen(w),): c for w, c in out.items()}

    bullet = MultiMap(V, 2, 1, 0, rule=bullet_rule, name="mu")
    circ = MultiMap(V, 2, 1, 0, rule=circ_rule, name="concat")
    diff = MultiMap(V, 1, 1, -1, rule=diff_rule, name="d")
    return TwoAssocDiffAlgebra(V, bullet, circ, diff, name=name or "T^c(A)")


def check_iota_hom(s: BInfinity, cap: int = 4, inner_cap: int = 4) -> LawReport:
    """Relations m_{i,j}(iota^i x iota^j) = iota m_{i,j} and m_n iota^n = iota m_n
    for the underlying structure of T^c(A), i+j <= cap, n <= cap."""
    if cap > inner_cap:
        raise CapError(f"arity {cap} needs an inner word cap >= {cap} (got {inner_cap})")
    base = s.space
    alg = tensor_algebra_of(s, inner_cap)
    V = alg.space
    und = UnderlyingStructure(alg, cap)
    report = LawReport("iota_1 homomorphism")

    def iota(vec):
        return {V.gen((g,)): c for g, c in vec.items()}

    report.verdicts["concat sanity"] = True
    for n in range(1, cap + 1):
        for word in base.words(n):
            lifted = tuple(V.gen((g,)) for g in word)
            if alg.circ_power(lifted) != {V.gen(word): ONE}:
                report.record("concat sanity", False, {"inputs": base.fmt_word(word)})
    for total in range(2, cap + 1):
        for i, j in compositions(total, 2, positive=True):
            key = ("R", i, j)
            report.verdicts.setdefault(key, True)
            lhs_map = und.multibrace.component(i, j)
            rhs_map = s.b.component(i, j)
            for word in base.words(total):
                lifted = tuple(V.gen((g,)) for g in word)
                lhs = {u: c for (u,), c in lhs_map(lifted).items()}
                rhs = iota({u: c for (u,), c in rhs_map(word).items()})
                if lhs != rhs:
                    report.record(key, False, {"inputs": base.fmt_word(word),
                                               "lhs": _fmt(V, lhs), "rhs": _fmt(V, rhs)})
                    break
    for n in range(1, cap + 1):
        key = ("S", n)
        report.verdicts.setdefault(key, True)
        lhs_map = und.a_infinity.m_n(n)
        rhs_map = s.a.m_n(n)
        for word in base.words(n):
            lifted = tuple(V.gen((g,)) for g in word)
            lhs = {u: c for (u,), c in lhs_map(lifted).items()}
            rhs = iota({u: c for (u,), c in rhs_map(word).items()})
            if lhs != rhs:
                report.record(key, False, {"inputs": base.fmt_word(word),
                                           "lhs": _fmt(V, lhs), "rhs": _fmt(V, rhs)})
                break
    return report
