"""The truncated tensor coalgebra T^c(V) and finite coalgebras.

Elements of T^c(V) are dicts ``{word: Fraction}``; elements of
T^c(V)^{(x)s} are dicts keyed by s-tuples of words. Coalgebra maps and
coderivations into T^c(W) are extended from their linear parts
(projection to the primitives) by cofreeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, AxiomError, CapError, HomogeneityError, TruncationError
from .exactcore import SparseMatrix, kernel_basis, row_space_basis, solve_in_span
from .graded import ONE, GradedSpace, MultiMap, add_scaled, add_term, interleave_sign


@dataclass(frozen=True)
class TruncationPolicy:
    word_cap: int = 6
    arity_cap: int = 6

    def __post_init__(self):
        if self.word_cap < 1:
            raise ValueError("word_cap must be >= 1")
        if self.arity_cap > self.word_cap:
            raise ValueError("arity_cap must not exceed word_cap")


class TensorElement(dict):
    """A finite rational combination of words; the empty word is 1."""

    def __init__(self, terms=None, cap=None):
        super().__init__()
        for w, c in (terms or {}).items():
            w = tuple(w)
            if cap is not None and len(w) > cap:
                raise TruncationError(f"word of length {len(w)} exceeds cap {cap}")
            add_term(self, w, Fraction(c))

    @classmethod
    def word(cls, *letters, coeff=1):
        return cls({tuple(letters): coeff})

    @classmethod
    def unit(cls):
        return cls({(): 1})

    def __add__(self, other):
        return TensorElement(add_scaled(dict(self), other))

    def __sub__(self, other):
        return TensorElement(add_scaled(dict(self), other, -ONE))

    def __neg__(self):
        return TensorElement({w: -c for w, c in self.items()})

    def scale(self, c):
        return TensorElement({w: c * v for w, v in self.items()})

    def max_length(self):
        return max((len(w) for w in self), default=0)


def counit(x: dict) -> Fraction:
    return Fraction(x.get((), 0))


def deconcatenate(x: dict) -> dict:
    """Delta(v1..vk) = sum_i v1..vi (x) v_{i+1}..vk."""
    out = {}
    for w, c in x.items():
        for i in range(len(w) + 1):
            add_term(out, (w[:i], w[i:]), c)
    return out


def reduced_coproduct(x: dict, r: int = 1) -> dict:
    """r-fold iterate of the reduced coproduct, keyed by (r+1)-tuples of nonempty words."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r >= 1 and x.get(()):
        raise ValueError("reduced coproduct needs an element with zero counit")
    out = {}
    for w, c in x.items():
        if r == 0:
            add_term(out, (w,), c)
            continue
        for cuts in _cut_points(len(w), r):
            bounds = (0,) + cuts + (len(w),)
            add_term(out, tuple(w[bounds[t]:bounds[t + 1]] for t in range(r + 1)), c)
    return out


def _cut_points(n, r):
    """Strictly increasing r-tuples in 1..n-1."""
    def rec(start, k):
        if k == 0:
            yield ()
            return
        for p in range(start, n - k + 1):
            for rest in rec(p + 1, k - 1):
                yield (p,) + rest
    yield from rec(1, r)


def filtration_level(x: dict) -> int:
    """Smallest r with x in F_r, found as the first r where the reduced iterate of Jx vanishes."""
    reduced = {w: c for w, c in x.items() if w}
    r = 0
    while True:
        if r == 0:
            if not reduced:
                return 0
        elif not reduced_coproduct(reduced, r):
            return r
        r += 1


# -- cofree extensions -----------------------------------------------------------

class CoalgebraMap:
    """Unital coalgebra map T^c(V)^{(x)s} -> T^c(W) extended from its linear part.

    ``linear_part(X)`` takes an s-tuple of words and returns ``{generator: coeff}``
    in W; it must vanish on the unit (all words empty). The extension is
    ``sum_k f1^{(x)k} Delta^{(k-1)}``, computed recursively by splitting off
    the first tensor factor of the iterated coproduct.
    """

    def __init__(self, linear_part, source, target=None, source_arity=1, word_cap=None, name=""):
        self.linear_part = linear_part
        self.source = source
        self.target = target if target is not None else source
        self.source_arity = source_arity
        self.word_cap = word_cap
        self.name = name
        self._cache = {}
        self._higher_cache = {}
        unit = ((),) * source_arity
        if linear_part(unit):
            raise ValueError("linear part must vanish on the unit")

    def _split(self, X, proper):
        degs = self.source.degrees
        ranges = [range(len(x) + 1) for x in X]

        def rec(a):
            if a == len(X):
                yield ()
                return
            for p in ranges[a]:
                for rest in rec(a + 1):
                    yield (p,) + rest

        for cut in rec(0):
            if not any(cut):
                continue
            if proper and all(p == len(x) for p, x in zip(cut, X)):
                continue
            P = tuple(x[:p] for x, p in zip(X, cut))
            R = tuple(x[p:] for x, p in zip(X, cut))
            pieces = tuple((sum(degs[g] for g in p), sum(degs[g] for g in r)) for p, r in zip(P, R))
            yield interleave_sign(pieces), P, R

    def higher(self, X) -> dict:
        """Terms of the extension with at least two output letters."""
        X = tuple(tuple(x) for x in X)
        hit = self._higher_cache.get(X)
        if hit is not None:
            return hit
        out = {}
        for sign, P, R in self._split(X, proper=True):
            head = self.linear_part(P)
            if not head:
                continue
            tail = self.on_basis(R)
            for g, c in head.items():
                for w, c2 in tail.items():
                    add_term(out, (g,) + w, sign * c * c2)
        self._check_cap(out)
        self._higher_cache[X] = out
        return out

    def on_basis(self, X) -> dict:
        X = tuple(tuple(x) for x in X)
        if len(X) != self.source_arity:
            raise ArityError(f"expected {self.source_arity} tensor factors")
        hit = self._cache.get(X)
        if hit is not None:
            return hit
        if not any(X):
            out = {(): ONE}
        else:
            out = dict(self.higher(X))
            for g, c in self.linear_part(X).items():
                add_term(out, (g,), c)
        self._cache[X] = out
        return out

    def _check_cap(self, out):
        if self.word_cap is not None:
            for w in out:
                if len(w) > self.word_cap:
                    raise TruncationError(f"{self.name or 'coalgebra map'}: output length {len(w)} > cap {self.word_cap}")

    def __call__(self, element: dict) -> dict:
        acc = {}
        for key, c in element.items():
            X = (key,) if self.source_arity == 1 else key
            add_scaled(acc, self.on_basis(X), c)
        return acc

    def component(self, X, r: int) -> dict:
        return {w: c for w, c in self.on_basis(X).items() if len(w) == r}


class Coderivation:
    """Coderivation of T^c(V) extended from its linear part d1 (word -> V)."""

    def __init__(self, linear_part, space, degree, word_cap=None, name=""):
        self.linear_part = linear_part
        self.space = space
        self.degree = degree
        self.word_cap = word_cap
        self.name = name
        self._cache = {}
        self._higher_cache = {}
        self._has_m0 = bool(linear_part(()))

    def _terms(self, w, proper):
        degs = self.space.degrees
        n = len(w)
        out = {}
        prefix_deg = 0
        for i in range(n + 1):
            if i:
                prefix_deg += degs[w[i - 1]]
            sign = -1 if (self.degree * prefix_deg) % 2 else 1
            lo = i if self._has_m0 else i + 1
            for j in range(lo, n + 1):
                if proper and i == 0 and j == n:
                    continue
                val = self.linear_part(w[i:j])
                for g, c in val.items():
                    add_term(out, w[:i] + (g,) + w[j:], sign * c)
        if self.word_cap is not None:
            for v in out:
                if len(v) > self.word_cap:
                    raise TruncationError(f"{self.name or 'coderivation'}: output length {len(v)} > cap {self.word_cap}")
        return out

    def on_basis(self, w) -> dict:
        w = tuple(w)
        hit = self._cache.get(w)
        if hit is None:
            hit = self._cache[w] = self._terms(w, proper=False)
        return hit

    def higher(self, w) -> dict:
        w = tuple(w)
        hit = self._higher_cache.get(w)
        if hit is None:
            hit = self._higher_cache[w] = self._terms(w, proper=True)
        return hit

    def __call__(self, element: dict) -> dict:
        acc = {}
        for w, c in element.items():
            add_scaled(acc, self.on_basis(w), c)
        return acc

    def component(self, w, k: int) -> dict:
        return {v: c for v, c in self.on_basis(w).items() if len(v) == k}


def _family_linear_part(family, arity_cap=None):
    """Turn {k: MultiMap V^{(x)k} -> W} (or a callable) into word -> {gen: coeff}."""
    if callable(family) and not isinstance(family, dict):
        return family

    def f1(word):
        word = tuple(word)
        f = family.get(len(word))
        if f is None:
            if arity_cap is not None and len(word) > arity_cap:
                raise CapError(f"no component of arity {len(word)} (cap {arity_cap})")
            return {}
        return {w[0]: c for w, c in f(word).items()}

    return f1


def extend_coalgebra_map(f1, source, target=None, word_cap=None, arity_cap=None) -> CoalgebraMap:
    """Extend a family of degree-0 maps V^{(x)k} -> W (k >= 1) to a coalgebra map T^c(V) -> T^c(W)."""
    if isinstance(f1, dict):
        if f1.get(0) is not None and not f1[0].is_zero():
            raise ValueError("f1 must vanish on 1")
        for k, f in f1.items():
            if f.degree != 0:
                raise HomogeneityError("coalgebra map components must have degree 0")
            if f.out_arity != 1 or f.in_arity != k:
                raise ArityError(f"component {k} has the wrong signature")
        fam = {k: f for k, f in f1.items() if k >= 1}
        lin = _family_linear_part(fam, arity_cap)
        return CoalgebraMap(lambda X: lin(X[0]), source, target, 1, word_cap)
    return CoalgebraMap(f1, source, target, 1, word_cap)


def extend_coderivation(d1, space, degree=None, word_cap=None, arity_cap=None) -> Coderivation:
    """Extend {n: MultiMap V^{(x)n} -> V} (n >= 0) to a coderivation of T^c(V)."""
    if isinstance(d1, dict):
        degs = {f.degree for f in d1.values()}
        if len(degs) > 1:
            raise HomogeneityError(f"coderivation components of mixed degrees {sorted(degs)}")
        if degree is None:
            degree = degs.pop() if degs else -1
        elif degs and degs != {degree}:
            raise HomogeneityError("component degree disagrees with the requested degree")
        lin = _family_linear_part(d1, arity_cap)
        return Coderivation(lin, space, degree, word_cap)
    if degree is None:
        raise ValueError("degree required for a callable linear part")
    return Coderivation(d1, space, degree, word_cap)


def shuffle_linear_part(X) -> dict:
    """The linear part of the shuffle product: eps (x) p1 + p1 (x) eps."""
    x, y = X
    if not x and len(y) == 1:
        return {y[0]: ONE}
    if not y and len(x) == 1:
        return {x[0]: ONE}
    return {}


# -- finite coalgebras ----------------------------------------------------------

class Subspace:
    """A subspace of a GradedSpace held by a canonical (RREF) basis of sparse vectors."""

    def __init__(self, ambient: GradedSpace, basis):
        self.ambient = ambient
        self.basis = row_space_basis([dict(v) for v in basis if v], ambient.dim)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec: dict) -> bool:
        return solve_in_span(self.basis, vec) is not None

    def coords(self, vec: dict):
        return solve_in_span(self.basis, vec)

    def vector_degree(self, v):
        degs = {self.ambient.degrees[g] for g in v}
        if len(degs) != 1:
            raise HomogeneityError("basis vector is not homogeneous")
        return degs.pop()

    def vector_weight(self, v):
        return max(self.ambient.weight(g) for g in v)

    def inclusion_matrix(self) -> SparseMatrix:
        entries = {}
        for j, v in enumerate(self.basis):
            for g, c in v.items():
                entries[g, j] = c
        return SparseMatrix(self.ambient.dim, self.dim, entries)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient.dim})"


class FiniteCoalgebra:
    """A unital coalgebra on a finite graded basis.

    ``delta`` maps generator index -> {(g, h): coeff}. The basis must be
    adapted: the unit generator spans K1 and every other generator lies in
    ker(counit).
    """

    def __init__(self, space: GradedSpace, delta, name=""):
        if space.unit is None:
            raise ValueError("a unital coalgebra needs a designated unit")
        self.space = space
        self.name = name
        if isinstance(delta, MultiMap):
            self._delta_map = delta
        else:
            table = {(g,): {tuple(k): c for k, c in d.items()} for g, d in delta.items()}
            self._delta_map = MultiMap(space, 1, 2, 0, table=table, name="Delta")
        self.unit = space.unit

    def delta(self, g) -> dict:
        return self._delta_map((g,))

    def coproduct(self, vec: dict) -> dict:
        acc = {}
        for g, c in vec.items():
            add_scaled(acc, self.delta(g), c)
        return acc

    def counit(self, vec: dict) -> Fraction:
        return Fraction(vec.get(self.unit, 0))

    def reduced(self, vec: dict) -> dict:
        u = self.unit
        if vec.get(u):
            raise ValueError("reduced coproduct needs an element with zero counit")
        out = {}
        for (a, b), c in self.coproduct(vec).items():
            if a != u and b != u:
                add_term(out, (a, b), c)
        return out

    def iterated_reduced(self, vec: dict, r: int) -> dict:
        if r == 0:
            return {(g,): c for g, c in vec.items()}
        cur = {(a, b): c for (a, b), c in self.reduced(vec).items()}
        for _ in range(r - 1):
            nxt = {}
            for key, c in cur.items():
                for (a, b), c2 in self.reduced({key[-1]: ONE}).items():
                    add_term(nxt, key[:-1] + (a, b), c * c2)
            cur = nxt
        return cur

    def reduced_basis(self):
        return [g for g in range(self.space.dim) if g != self.unit]

    def check_coassociativity(self):
        """First generator where (Delta x id)Delta != (id x Delta)Delta, else None."""
        for g in range(self.space.dim):
            lhs, rhs = {}, {}
            for (a, b), c in self.delta(g).items():
                for (a1, a2), c2 in self.delta(a).items():
                    add_term(lhs, (a1, a2, b), c * c2)
                for (b1, b2), c2 in self.delta(b).items():
                    add_term(rhs, (a, b1, b2), c * c2)
            if lhs != rhs:
                return g
        return None

    def check_counit(self):
        u = self.unit
        if self.delta(u) != {(u, u): ONE}:
            return u
        for g in range(self.space.dim):
            left, right = {}, {}
            for (a, b), c in self.delta(g).items():
                if a == u:
                    add_term(left, b, c)
                if b == u:
                    add_term(right, a, c)
            if left != {g: ONE} or right != {g: ONE}:
                return g
        return None

    def validate(self):
        bad = self.check_counit()
        if bad is not None:
            raise AxiomError("counit/unit law", self.space.names[bad])
        bad = self.check_coassociativity()
        if bad is not None:
            raise AxiomError("coassociativity", self.space.names[bad])

    def kernel_of_iterate(self, r: int) -> Subspace:
        """ker(reduced iterate r) on the reduced part, as a subspace of the carrier."""
        cols = self.reduced_basis()
        rows = {}
        entries = {}
        for j, g in enumerate(cols):
            for key, c in self.iterated_reduced({g: ONE}, r).items():
                i = rows.setdefault(key, len(rows))
                entries[i, j] = c
        m = SparseMatrix(len(rows), len(cols), entries)
        vecs = []
        for v in kernel_basis(m):
            vecs.append({cols[j]: c for j, c in enumerate(v) if c})
        return Subspace(self.space, vecs)

    def filtration(self, r: int) -> Subspace:
        """F_r = K1 + ker(reduced iterate r)."""
        unit_vec = {self.unit: ONE}
        if r == 0:
            return Subspace(self.space, [unit_vec])
        return Subspace(self.space, [unit_vec] + self.kernel_of_iterate(r).basis)

    def filtration_level(self, vec: dict):
        """Smallest r with vec in F_r, or None if vec is outside the radical."""
        red = {g: c for g, c in vec.items() if g != self.unit}
        if not red:
            return 0
        for r in range(1, self.space.dim + 2):
            if not self.iterated_reduced(red, r):
                return r
        return None


def primitives(coalgebra: FiniteCoalgebra) -> Subspace:
    """Prim(C) = ker of the reduced coproduct, computed by exact elimination."""
    coalgebra.validate()
    return coalgebra.kernel_of_iterate(1)


def conilpotent_radical(coalgebra: FiniteCoalgebra) -> Subspace:
    """Union of the primitive filtration, detected by stabilization F_r = F_{r+1}."""
    prev = coalgebra.filtration(0)
    r = 1
    while True:
        cur = coalgebra.filtration(r)
        if cur.dim == prev.dim:
            return cur
        prev = cur
        r += 1


# -- truncated tensor coalgebra as a finite object -------------------------------

class TensorSpace(GradedSpace):
    """Words of length <= L over a base space, as generators of a new graded space.

    Generator names are ``[a,b,...]``; ``[]`` is the unit (empty word). The
    weight of a generator is its word length.
    """

    def __init__(self, base: GradedSpace, cap: int):
        self.base = base
        self.cap = cap
        words = [()]
        for n in range(1, cap + 1):
            words.extend(base.words(n))
        self.word_list = words
        self.word_index = {w: i for i, w in enumerate(words)}
        gens = [("[" + ",".join(base.names[g] for g in w) + "]", base.word_degree(w)) for w in words]
        super().__init__(gens, unit=0, weights=[len(w) for w in words], weight_cap=cap)

    def gen(self, word) -> int:
        word = tuple(word)
        try:
            return self.word_index[word]
        except KeyError:
            raise TruncationError(f"word of length {len(word)} exceeds cap {self.cap}") from None

    def lift(self, element: dict) -> dict:
        """A T^c(base) combination of words -> a combination of generators."""
        return {self.gen(w): c for w, c in element.items()}

    def lower(self, vec: dict) -> dict:
        return {self.word_list[g]: c for g, c in vec.items()}


def tensor_coalgebra(base: GradedSpace, cap: int) -> FiniteCoalgebra:
    """T^c(base) truncated at word length cap, with deconcatenation."""
    space = TensorSpace(base, cap)

    def rule(inp):
        w = space.word_list[inp[0]]
        return {(space.gen(w[:i]), space.gen(w[i:])): ONE for i in range(len(w) + 1)}

    delta = MultiMap(space, 1, 2, 0, rule=rule, name="Delta").materialize()
    return FiniteCoalgebra(space, delta, name=f"T^c({cap})")
