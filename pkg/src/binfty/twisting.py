"""Twistings: coalgebra automorphisms of T^c(V) with identity linear part."""

from __future__ import annotations

from .errors import AxiomError, CapError
from .graded import ONE, GradedSpace, MultiMap, add_scaled, identity_map
from .structures import AInfinity, BInfinity, Multibrace, check_associative, compositions
from .tcoalg import CoalgebraMap


class Twisting:
    """Components t_n: V^{(x)n} -> V of degree 0 for 1 <= n <= cap, with t_1 = id."""

    def __init__(self, space: GradedSpace, t: dict, cap: int):
        self.space = space
        self.cap = cap
        t = dict(t)
        t.setdefault(1, identity_map(space))
        if not t[1].equals(identity_map(space)):
            raise ValueError("t_1 must be the identity")
        for n, f in t.items():
            if f.degree != 0 or (f.in_arity, f.out_arity) != (n, 1):
                raise ValueError(f"t_{n} must be a degree 0 map V^{n} -> V")
        self.t = t
        self._map = None

    def component(self, n: int) -> MultiMap:
        if n < 1 or n > self.cap:
            raise CapError(f"t_{n} outside 1..{self.cap}")
        f = self.t.get(n)
        if f is None:
            f = self.t[n] = MultiMap(self.space, n, 1, 0, table={}, name=f"t_{n}")
        return f

    def linear_part(self, X) -> dict:
        (w,) = X
        if not w:
            return {}
        return {v[0]: c for v, c in self.component(len(w))(w).items()}

    def coalgebra_map(self) -> CoalgebraMap:
        if self._map is None:
            self._map = CoalgebraMap(self.linear_part, self.space, self.space, 1, name="tau")
        return self._map

    def __call__(self, element: dict) -> dict:
        return self.coalgebra_map()(element)


def identity_twisting(space: GradedSpace, cap: int) -> Twisting:
    return Twisting(space, {}, cap)


def iterated_product(op: MultiMap, word) -> dict:
    """op^{(n-1)} on a word, bracketed from the left; op^{(0)} = id."""
    word = tuple(word)
    if not word:
        raise ValueError("iterated product of the empty word")
    acc = {(word[0],): ONE}
    for g in word[1:]:
        nxt = {}
        for (u,), c in acc.items():
            add_scaled(nxt, op((u, g)), c)
        acc = nxt
        if not acc:
            break
    return {u: c for (u,), c in acc.items()}


def twisting_from_product(space: GradedSpace, circ: MultiMap, cap: int) -> Twisting:
    """t_n = circ^{(n-1)}."""
    rep = check_associative(circ, "circ associativity")
    if not rep.passed:
        raise AxiomError(rep.law, rep.counterexample.get("inputs"))
    t = {}
    for n in range(2, cap + 1):
        t[n] = MultiMap(space, n, 1, 0, rule=lambda w: {(u,): c for u, c in iterated_product(circ, w).items()},
                        name=f"circ^({n - 1})")
    return Twisting(space, t, cap)


def invert_twisting(tau: Twisting) -> Twisting:
    """u_1 = id, u_n = -sum_{0<r<n} sum_{strictly positive compositions} u_r (t_{i1} x ... x t_{ir})."""
    space = tau.space
    tmap = tau.coalgebra_map()
    u = {}

    def make(n):
        def rule(w):
            acc = {}
            for v, c in tmap.on_basis((w,)).items():
                r = len(v)
                if r < n:
                    for (g,), c2 in u[r](v).items():
                        acc[(g,)] = acc.get((g,), 0) - c * c2
            return {k: c for k, c in acc.items() if c}
        return rule

    u[1] = identity_map(space)
    for n in range(2, tau.cap + 1):
        u[n] = MultiMap(space, n, 1, 0, rule=make(n), name=f"u_{n}")
    return Twisting(space, u, tau.cap)


def twist_b_infinity(s: BInfinity, tau: Twisting, cap: int | None = None) -> BInfinity:
    """mu^tau = tau^{-1} mu (tau x tau), d^tau = tau^{-1} d tau, projected to V arity by arity."""
    space = s.space
    if tau.space != space:
        raise ValueError("twisting lives on a different space")
    if cap is None:
        cap = min(tau.cap, s.a.arity_cap, s.b.arity_cap)
    if cap > tau.cap:
        raise CapError(f"cap {cap} beyond twisting cap {tau.cap}")
    inv = invert_twisting(tau)
    tmap = tau.coalgebra_map()
    mu = s.b.product()
    d = s.a.coderivation()

    def project(element):
        acc = {}
        for w, c in element.items():
            add_scaled(acc, inv.component(len(w))(w), c)
        return acc

    def mb_rule(i):
        def rule(word):
            x, y = word[:i], word[i:]
            acc = {}
            for w1, c1 in tmap.on_basis((x,)).items():
                for w2, c2 in tmap.on_basis((y,)).items():
                    add_scaled(acc, mu.on_basis((w1, w2)), c1 * c2)
            return project(acc)
        return rule

    def ainf_rule(word):
        return project(d(tmap.on_basis((word,))))

    mb = {}
    for total in range(2, cap + 1):
        for i, j in compositions(total, 2, positive=True):
            mb[i, j] = MultiMap(space, total, 1, 0, rule=mb_rule(i), name=f"m^tau_{i},{j}")
    ai = {n: MultiMap(space, n, 1, -1, rule=ainf_rule, name=f"m^tau_{n}") for n in range(1, cap + 1)}
    return BInfinity(AInfinity(space, ai, cap), Multibrace(space, mb, cap))
