"""Graded vector spaces, multilinear maps and Koszul signs.

Conventions
-----------
A basis word is a tuple of generator indices. Signs enter in exactly two
places: :func:`permute_tensor` (the symmetry isomorphism, sign
``(-1)^kappa`` summed over inversions) and :func:`apply_map_tensor`
(``(f1 x ... x fr)(x1 x ... x xr) = (-1)^{sum_{a<b} |f_b||x_a|} f1(x1) x ... x fr(xr)``).
Every higher formula in the package is evaluated through these two.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .errors import ArityError, HomogeneityError
from .exactcore import format_rational

ZERO = Fraction(0)
ONE = Fraction(1)


# -- sparse linear combinations ------------------------------------------------

def add_term(acc: dict, key, coeff) -> None:
    """acc[key] += coeff, dropping zeros."""
    if not coeff:
        return
    v = acc.get(key, ZERO) + coeff
    if v:
        acc[key] = v
    else:
        del acc[key]


def add_scaled(acc: dict, other: dict, scale=ONE) -> dict:
    if scale:
        for k, v in other.items():
            add_term(acc, k, scale * v)
    return acc


def combo_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    return add_scaled(out, b, -ONE)


# -- spaces -----------------------------------------------------------------------

class GradedSpace:
    """A finite graded vector space given by named homogeneous generators.

    ``unit`` optionally designates a degree-0 generator as 1. ``weights``
    and ``weight_cap`` describe truncated carriers (for example words of
    length <= L in a tensor coalgebra): every structure map is expected not
    to raise total weight, and laws are only checked on basis tuples of
    total weight <= ``weight_cap``.
    """

    def __init__(self, generators, unit=None, weights=None, weight_cap=None):
        gens = [(str(n), int(d)) for n, d in generators]
        names = [n for n, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.names = tuple(names)
        self.degrees = tuple(d for _, d in gens)
        self._index = {n: i for i, n in enumerate(names)}
        if isinstance(unit, str):
            unit = self._index[unit]
        if unit is not None and self.degrees[unit] != 0:
            raise HomogeneityError("the unit must have degree 0")
        self.unit = unit
        self.weights = tuple(weights) if weights is not None else None
        if self.weights is not None and len(self.weights) != len(gens):
            raise ValueError("one weight per generator")
        self.weight_cap = weight_cap

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def word_degree(self, word) -> int:
        degs = self.degrees
        return sum(degs[g] for g in word)

    def weight(self, i: int) -> int:
        return 1 if self.weights is None else self.weights[i]

    def word_weight(self, word) -> int:
        if self.weights is None:
            return len(word)
        return sum(self.weights[g] for g in word)

    def words(self, n: int):
        return itertools.product(range(self.dim), repeat=n)

    def bounded_words(self, n: int, cap=None):
        """Words of length n, restricted to total weight <= cap for weighted spaces."""
        if cap is None:
            cap = self.weight_cap
        if self.weights is None or cap is None:
            yield from self.words(n)
            return
        by_weight = sorted(range(self.dim), key=lambda g: (self.weights[g], g))

        def rec(k, budget):
            if k == 0:
                yield ()
                return
            for g in by_weight:
                w = self.weights[g]
                if w > budget:
                    break
                for rest in rec(k - 1, budget - w):
                    yield (g,) + rest

        yield from sorted(rec(n, cap))

    def fmt_word(self, word, sep=" ") -> str:
        if not word:
            return "()"
        return sep.join(self.names[g] for g in word)

    def __eq__(self, other):
        if not isinstance(other, GradedSpace):
            return NotImplemented
        return (self.names, self.degrees, self.unit) == (other.names, other.degrees, other.unit)

    def __hash__(self):
        return hash((self.names, self.degrees, self.unit))

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"GradedSpace({gens})"


def fmt_combo(space: GradedSpace, combo: dict, sep=" ") -> str:
    """Render a combination of words in length-then-lexicographic order."""
    if not combo:
        return "0"
    parts = []
    for key in sorted(combo, key=lambda w: (len(w), w)):
        parts.append(f"{format_rational(combo[key])} {space.fmt_word(key, sep)}")
    return " + ".join(parts)


# -- permutations and Koszul signs ---------------------------------------------

class Permutation:
    """A bijection of {0..n-1}; ``images[i]`` is the position factor i moves to."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other: apply ``other`` first."""
        if len(self) != len(other):
            raise ArityError("size mismatch")
        return Permutation(self.images[other.images[i]] for i in range(len(other)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def inversions(self):
        im = self.images
        n = len(im)
        return [(p, q) for p in range(n) for q in range(p + 1, n) if im[p] > im[q]]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def koszul_sign(degrees, sigma: Permutation) -> int:
    if len(degrees) != len(sigma):
        raise ArityError(f"{len(degrees)} degrees for a permutation of size {len(sigma)}")
    kappa = sum(degrees[p] * degrees[q] for p, q in sigma.inversions())
    return -1 if kappa % 2 else 1


def permute_tensor(sigma: Permutation, word, degrees):
    """Apply the symmetry isomorphism: factor i lands in position sigma(i).

    Returns ``(sign, permuted_word)``.
    """
    if len(word) != len(sigma) or len(degrees) != len(sigma):
        raise ArityError("word length does not match the permutation")
    out = [None] * len(word)
    for i, x in enumerate(word):
        out[sigma(i)] = x
    return koszul_sign(degrees, sigma), tuple(out)


@lru_cache(maxsize=None)
def interleave_sign(piece_degrees) -> int:
    """Sign of regrouping (x_1^1..x_1^k)...(x_s^1..x_s^k) as (x_1^1..x_s^1)...(x_1^k..x_s^k).

    ``piece_degrees[a][c]`` is the degree of the c-th piece of factor a.
    This is the block permutation of the iterated coproduct on a tensor
    product of tensor coalgebras.
    """
    s = len(piece_degrees)
    if s <= 1:
        return 1
    k = len(piece_degrees[0])
    # positions in source order (a, c) -> target order (c, a)
    images = [c * s + a for a in range(s) for c in range(k)]
    degs = [piece_degrees[a][c] for a in range(s) for c in range(k)]
    return koszul_sign(degs, Permutation(images))


# -- multilinear maps -----------------------------------------------------------

class MultiMap:
    """A homogeneous multilinear map V^{(x)a} -> W^{(x)b} of fixed degree.

    Either a ``table`` of structure constants ``{input tuple: {output tuple: coeff}}``
    (missing inputs map to zero) or a lazy ``rule`` computing one input tuple
    at a time. Rule results are cached and checked for homogeneity as they
    are produced.
    """

    def __init__(self, space, in_arity, out_arity, degree, table=None, rule=None,
                 name="", target=None):
        self.space = space
        self.target = target if target is not None else space
        self.in_arity = int(in_arity)
        self.out_arity = int(out_arity)
        self.degree = int(degree)
        self.name = name
        self._rule = rule
        self._table = {}
        self._complete = rule is None
        if table is not None:
            for inp, out in table.items():
                inp = tuple(inp)
                clean = {}
                for w, c in out.items():
                    add_term(clean, tuple(w), Fraction(c))
                self._check(inp, clean)
                if clean:
                    self._table[inp] = clean

    def _check(self, inp, out):
        if len(inp) != self.in_arity:
            raise ArityError(f"{self.name or 'map'}: input {inp} has arity {len(inp)}, expected {self.in_arity}")
        want = self.space.word_degree(inp) + self.degree
        for w in out:
            if len(w) != self.out_arity:
                raise ArityError(f"{self.name or 'map'}: output {w} has length {len(w)}, expected {self.out_arity}")
            if self.target.word_degree(w) != want:
                raise HomogeneityError(
                    f"{self.name or 'map'}: {self.space.fmt_word(inp)} -> "
                    f"{self.target.fmt_word(w)} breaks degree {self.degree}")

    def __call__(self, inp) -> dict:
        inp = tuple(inp)
        hit = self._table.get(inp)
        if hit is not None:
            return hit
        if self._complete:
            if len(inp) != self.in_arity:
                raise ArityError(f"{self.name or 'map'}: arity {len(inp)} != {self.in_arity}")
            return {}
        out = self._rule(inp)
        out = {k: v for k, v in out.items() if v}
        self._check(inp, out)
        self._table[inp] = out
        return out

    def apply(self, element: dict) -> dict:
        """Linear extension to a combination of input tuples."""
        acc = {}
        for inp, c in element.items():
            add_scaled(acc, self(inp), c)
        return acc

    @property
    def is_lazy(self) -> bool:
        return not self._complete

    def inputs(self):
        return self.space.bounded_words(self.in_arity)

    def materialize(self) -> "MultiMap":
        """Evaluate on every basis tuple (within weight caps) and freeze."""
        if self._complete:
            return self
        table = {}
        for inp in self.inputs():
            out = self(inp)
            if out:
                table[inp] = out
        return MultiMap(self.space, self.in_arity, self.out_arity, self.degree,
                        table=table, name=self.name, target=self.target)

    @property
    def table(self) -> dict:
        return self.materialize()._table

    def is_zero(self) -> bool:
        return all(not self(inp) for inp in self.inputs())

    def equals(self, other: "MultiMap") -> bool:
        if (self.in_arity, self.out_arity) != (other.in_arity, other.out_arity):
            return False
        return all(self(inp) == other(inp) for inp in self.inputs())

    def first_difference(self, other: "MultiMap"):
        for inp in self.inputs():
            if self(inp) != other(inp):
                return inp
        return None

    def __repr__(self):
        kind = "lazy" if self.is_lazy else f"{len(self._table)} entries"
        return f"MultiMap({self.name or '?'}: {self.in_arity}->{self.out_arity}, deg {self.degree}, {kind})"


def identity_map(space: GradedSpace) -> MultiMap:
    return MultiMap(space, 1, 1, 0, table={(g,): {(g,): ONE} for g in range(space.dim)}, name="id")


def zero_map(space, in_arity, out_arity, degree, target=None) -> MultiMap:
    return MultiMap(space, in_arity, out_arity, degree, table={}, name="0", target=target)


def apply_map_tensor(maps, word, space=None) -> dict:
    """Evaluate (f_1 x ... x f_r) on a word split into blocks by the in-arities.

    Sign ``(-1)^{sum_{a<b} |f_b| |x_a|}`` where ``|x_a|`` is the total degree
    of the a-th block.
    """
    word = tuple(word)
    need = sum(f.in_arity for f in maps)
    if need != len(word):
        raise ArityError(f"maps consume {need} factors, word has {len(word)}")
    if space is None:
        space = maps[0].space if maps else None
    acc = {(): 1}
    pos = 0
    seen_degree = 0
    for f in maps:
        block = word[pos:pos + f.in_arity]
        pos += f.in_arity
        out = f(block)
        if not out:
            return {}
        sign = -1 if (f.degree * seen_degree) % 2 else 1
        seen_degree += space.word_degree(block) if space is not None else 0
        nxt = {}
        for w, c in acc.items():
            for w2, c2 in out.items():
                add_term(nxt, w + w2, sign * c * c2)
        acc = nxt
        if not acc:
            return {}
    return acc


def compose_multimap(outer: MultiMap, inners) -> MultiMap:
    """outer o (inner_1 x ... x inner_r) with Koszul signs from apply_map_tensor."""
    inners = list(inners)
    if sum(f.out_arity for f in inners) != outer.in_arity:
        raise ArityError("inner out-arities do not match the outer in-arity")
    space = inners[0].space if inners else outer.space
    in_arity = sum(f.in_arity for f in inners)
    degree = outer.degree + sum(f.degree for f in inners)

    def rule(inp):
        mid = apply_map_tensor(inners, inp, space)
        return outer.apply(mid)

    m = MultiMap(space, in_arity, outer.out_arity, degree, rule=rule,
                 name=f"{outer.name}o({','.join(f.name for f in inners)})", target=outer.target)
    if not outer.is_lazy and not any(f.is_lazy for f in inners):
        return m.materialize()
    return m


def map_sum(maps, name="") -> MultiMap:
    """Sum of maps with a common signature."""
    maps = list(maps)
    f0 = maps[0]
    for f in maps[1:]:
        if (f.in_arity, f.out_arity, f.degree) != (f0.in_arity, f0.out_arity, f0.degree):
            raise ArityError("cannot add maps of different signatures")

    def rule(inp):
        acc = {}
        for f in maps:
            add_scaled(acc, f(inp))
        return acc

    return MultiMap(f0.space, f0.in_arity, f0.out_arity, f0.degree, rule=rule,
                    name=name or "+".join(f.name for f in maps), target=f0.target)


def table_from_function(space, in_arity, out_arity, degree, fn, name="", target=None) -> MultiMap:
    return MultiMap(space, in_arity, out_arity, degree, rule=fn, name=name, target=target).materialize()
