"""A-infinity, multibrace and B-infinity structures on T^c(V).

Structure maps are :class:`~binfty.graded.MultiMap` families: ``m_n`` of
degree -1 for the A-infinity part and ``m_{i,j}`` (stored as maps of arity
i+j) of degree 0 for the multibrace part. Unit components m_{0,1} = m_{1,0}
= id and m_{0,n} = m_{n,0} = 0 (n != 1) are conventions applied during
expansion and are never stored.

Law checks evaluate both sides on every basis tuple within the caps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ArityError, AxiomError, CapError, HomogeneityError
from .graded import (
    ONE, GradedSpace, MultiMap, Permutation, add_scaled, add_term, apply_map_tensor,
    fmt_combo, identity_map, permute_tensor, zero_map,
)
from .tcoalg import CoalgebraMap, Coderivation, shuffle_linear_part

DEFAULT_AINF_CAP = 5
DEFAULT_MB_CAP = 6
DEFAULT_COMPAT_CAP = 6


def compositions(total: int, parts: int, positive: bool = False):
    """Sequences of ``parts`` nonnegative (or positive) integers summing to ``total``."""
    lo = 1 if positive else 0
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= lo:
            yield (total,)
        return
    for first in range(lo, total - lo * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, positive):
            yield (first,) + rest


@dataclass(frozen=True)
class CompositionIndex:
    parts: tuple
    total: int

    def __post_init__(self):
        if any(p < 0 for p in self.parts):
            raise ValueError("parts must be nonnegative")
        if sum(self.parts) != self.total:
            raise ValueError(f"parts {self.parts} do not sum to {self.total}")

    @classmethod
    def all(cls, total, r, positive=False):
        return [cls(p, total) for p in compositions(total, r, positive)]


def _vec_to_words(vec: dict) -> dict:
    return {(g,): c for g, c in vec.items()}


def _fmt_vec(space, vec):
    return fmt_combo(space, _vec_to_words(vec))


@dataclass
class LawReport:
    """Per-arity verdicts for one law family, with the first counterexample."""

    law: str
    verdicts: dict = field(default_factory=dict)
    counterexample: dict | None = None
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def record(self, arity, ok, witness=None):
        prev = self.verdicts.get(arity, True)
        self.verdicts[arity] = prev and ok
        if not ok and self.counterexample is None:
            self.counterexample = dict(witness or {}, arity=arity)

    def merge(self, other: "LawReport") -> "LawReport":
        for a, ok in other.verdicts.items():
            self.record(a, ok, other.counterexample if not ok else None)
        return self

    def lines(self) -> list[str]:
        out = []
        for arity in sorted(self.verdicts, key=lambda a: (a if isinstance(a, tuple) else (a,))):
            tag = "PASS" if self.verdicts[arity] else "FAIL"
            out.append(f"{tag} {self.law} {_fmt_arity(arity)}")
        if self.counterexample is not None:
            ce = self.counterexample
            out.append(f"  witness {self.law} {_fmt_arity(ce['arity'])}: {ce.get('inputs')}")
            out.append(f"    lhs = {ce.get('lhs')}")
            out.append(f"    rhs = {ce.get('rhs')}")
        return out

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "passed": self.passed,
            "verdicts": [{"arity": _fmt_arity(a), "pass": ok}
                         for a, ok in sorted(self.verdicts.items(), key=lambda t: (t[0] if isinstance(t[0], tuple) else (t[0],)))],
            "counterexample": self.counterexample,
        }


def _fmt_arity(a):
    if isinstance(a, tuple):
        return "(" + ",".join(str(x) for x in a) + ")"
    return str(a)


# -- containers ---------------------------------------------------------------------

class AInfinity:
    """Degree -1 maps m_n: V^{(x)n} -> V, 1 <= n <= arity_cap."""

    def __init__(self, space: GradedSpace, m: dict, arity_cap: int | None = None, word_cap=None):
        self.space = space
        self.arity_cap = arity_cap if arity_cap is not None else max(m, default=1)
        self.word_cap = word_cap
        if 0 in m:
            raise ArityError("m_0 must be absent")
        for n, f in m.items():
            if f.degree != -1:
                raise HomogeneityError(f"m_{n} must have degree -1")
            if (f.in_arity, f.out_arity) != (n, 1):
                raise ArityError(f"m_{n} has signature {f.in_arity}->{f.out_arity}")
            if n > self.arity_cap:
                raise CapError(f"m_{n} beyond arity cap {self.arity_cap}")
        self.m = dict(m)
        self._coder = None

    def m_n(self, n: int) -> MultiMap:
        if n < 1 or n > self.arity_cap:
            raise CapError(f"m_{n} outside 1..{self.arity_cap}")
        f = self.m.get(n)
        if f is None:
            f = self.m[n] = zero_map(self.space, n, 1, -1)
        return f

    def linear_part(self, word) -> dict:
        if not word:
            return {}
        return {w[0]: c for w, c in self.m_n(len(word))(word).items()}

    def coderivation(self) -> Coderivation:
        if self._coder is None:
            self._coder = Coderivation(self.linear_part, self.space, -1, self.word_cap, name="d")
        return self._coder


class Multibrace:
    """Degree 0 maps m_{i,j}: V^{(x)i} (x) V^{(x)j} -> V for i, j >= 1, i+j <= arity_cap.

    ``m[(i, j)]`` is a MultiMap of in-arity i+j.
    """

    def __init__(self, space: GradedSpace, m: dict, arity_cap: int | None = None, word_cap=None):
        self.space = space
        self.arity_cap = arity_cap if arity_cap is not None else max((i + j for i, j in m), default=2)
        self.word_cap = word_cap
        for (i, j), f in m.items():
            if i < 1 or j < 1:
                raise ArityError("unit components are fixed by convention and may not be stored")
            if f.degree != 0:
                raise HomogeneityError(f"m_{i},{j} must have degree 0")
            if (f.in_arity, f.out_arity) != (i + j, 1):
                raise ArityError(f"m_{i},{j} has signature {f.in_arity}->{f.out_arity}")
            if i + j > self.arity_cap:
                raise CapError(f"m_{i},{j} beyond arity cap {self.arity_cap}")
        self.m = dict(m)
        self._product = None
        self._id = identity_map(space)

    def component(self, i: int, j: int) -> MultiMap:
        """m_{i,j} including the unit conventions for i = 0 or j = 0."""
        if i == 0 or j == 0:
            if i + j == 1:
                return self._id
            return zero_map(self.space, i + j, 1, 0)
        if i + j > self.arity_cap:
            raise CapError(f"m_{i},{j} beyond arity cap {self.arity_cap}")
        f = self.m.get((i, j))
        if f is None:
            f = self.m[i, j] = zero_map(self.space, i + j, 1, 0)
        return f

    def mu1(self, X) -> dict:
        x, y = X
        if not x:
            return {y[0]: ONE} if len(y) == 1 else {}
        if not y:
            return {x[0]: ONE} if len(x) == 1 else {}
        return {w[0]: c for w, c in self.component(len(x), len(y))(tuple(x) + tuple(y)).items()}

    def product(self) -> CoalgebraMap:
        """The multiplication mu on T^c(V) (x) T^c(V)."""
        if self._product is None:
            self._product = CoalgebraMap(self.mu1, self.space, self.space, 2, self.word_cap, name="mu")
        return self._product


@dataclass
class BInfinity:
    a: AInfinity
    b: Multibrace

    def __post_init__(self):
        if self.a.space != self.b.space:
            raise ValueError("A-infinity and multibrace parts live on different spaces")

    @property
    def space(self):
        return self.a.space


# -- literal component formulas -----------------------------------------------------

def coderivation_components(a: AInfinity, n: int, k: int) -> MultiMap:
    """m_n^k = sum_{i+1+j=k} id^i (x) m_{n-i-j} (x) id^j."""
    if n > a.arity_cap:
        raise CapError(f"n = {n} beyond arity cap {a.arity_cap}")
    space = a.space
    ident = identity_map(space)

    def rule(word):
        acc = {}
        for i in range(k):
            j = k - 1 - i
            inner = n - i - j
            if inner < 1:
                continue
            maps = [ident] * i + [a.m_n(inner)] + [ident] * j
            add_scaled(acc, apply_map_tensor(maps, word, space))
        return acc

    return MultiMap(space, n, k, -1, rule=rule, name=f"m_{n}^{k}")


def block_interleaving(i_parts, j_parts) -> Permutation:
    """Letter permutation (x^1..x^r)(y^1..y^r) -> (x^1 y^1)...(x^r y^r)."""
    r = len(i_parts)
    target_starts = []
    pos = 0
    for a in range(r):
        target_starts.append((pos, pos + i_parts[a]))
        pos += i_parts[a] + j_parts[a]
    images = []
    for a in range(r):
        images.extend(range(target_starts[a][0], target_starts[a][0] + i_parts[a]))
    for a in range(r):
        images.extend(range(target_starts[a][1], target_starts[a][1] + j_parts[a]))
    return Permutation(images)


def coalgebra_map_components(b: Multibrace, i: int, j: int, r: int) -> MultiMap:
    """m_{i,j}^r = sum over C_r^i x C_r^j of (m_{i1,j1} x ... x m_{ir,jr}) Delta_r^{i,j}."""
    if i + j > b.arity_cap and r < i + j:
        raise CapError(f"i+j = {i + j} beyond arity cap {b.arity_cap}")
    space = b.space

    def rule(word):
        acc = {}
        if r < 1 or r > i + j:
            return acc
        degs = [space.degrees[g] for g in word]
        for ip in compositions(i, r):
            for jp in compositions(j, r):
                if any(p == 0 and q == 0 for p, q in zip(ip, jp)):
                    continue
                sigma = block_interleaving(ip, jp)
                sign, moved = permute_tensor(sigma, word, degs)
                maps = [b.component(p, q) for p, q in zip(ip, jp)]
                add_scaled(acc, apply_map_tensor(maps, moved, space), sign)
        return acc

    return MultiMap(space, i + j, r, 0, rule=rule, name=f"m_{i},{j}^{r}")


# -- law checkers ------------------------------------------------------------------

def _split(word, sizes):
    out, pos = [], 0
    for s in sizes:
        out.append(tuple(word[pos:pos + s]))
        pos += s
    return out


def _witness(space, blocks, lhs, rhs):
    return {
        "inputs": " | ".join(space.fmt_word(b) for b in blocks),
        "lhs": _fmt_vec(space, lhs),
        "rhs": _fmt_vec(space, rhs),
    }


def check_a_infinity(a: AInfinity, cap: int = DEFAULT_AINF_CAP) -> LawReport:
    """sum m_{i+1+j}(id^i (x) m_{n-i-j} (x) id^j) = 0 on V^{(x)n}, n <= cap."""
    cap = min(cap, a.arity_cap)
    d = a.coderivation()
    report = LawReport("A-inf (d^2=0)")
    space = a.space
    for n in range(1, cap + 1):
        report.verdicts.setdefault(n, True)
        for w in space.bounded_words(n):
            val = {}
            for v, c in d.on_basis(w).items():
                add_scaled(val, a.linear_part(v), c)
            if val:
                report.record(n, False, _witness(space, [w], val, {}))
                break
    return report


def check_multibrace(b: Multibrace, cap: int = DEFAULT_MB_CAP) -> LawReport:
    """mu_1(mu x id) = mu_1(id x mu) on V^i (x) V^j (x) V^k, i+j+k <= cap."""
    cap = min(cap, b.arity_cap)
    mu = b.product()
    report = LawReport("multibrace (assoc)")
    space = b.space
    for total in range(3, cap + 1):
        for ijk in compositions(total, 3, positive=True):
            report.verdicts.setdefault(ijk, True)
            for word in space.bounded_words(total):
                x, y, z = _split(word, ijk)
                lhs, rhs = {}, {}
                for w, c in mu.on_basis((x, y)).items():
                    add_scaled(lhs, b.mu1((w, z)), c)
                for w, c in mu.on_basis((y, z)).items():
                    add_scaled(rhs, b.mu1((x, w)), c)
                if lhs != rhs:
                    report.record(ijk, False, _witness(space, [x, y, z], lhs, rhs))
                    break
    return report


def check_compatibility(s: BInfinity, cap: int = DEFAULT_COMPAT_CAP) -> LawReport:
    """d_1 mu = mu_1(d x id + id x d) on V^i (x) V^j, i+j <= cap."""
    a, b = s.a, s.b
    cap = min(cap, b.arity_cap, a.arity_cap)
    mu = b.product()
    d = a.coderivation()
    space = s.space
    report = LawReport("compatibility")
    for total in range(2, cap + 1):
        for ij in compositions(total, 2, positive=True):
            report.verdicts.setdefault(ij, True)
            for word in space.bounded_words(total):
                x, y = _split(word, ij)
                lhs, rhs = {}, {}
                for w, c in mu.on_basis((x, y)).items():
                    add_scaled(lhs, a.linear_part(w), c)
                for w, c in d.on_basis(x).items():
                    add_scaled(rhs, b.mu1((w, y)), c)
                sign = -1 if space.word_degree(x) % 2 else 1
                for w, c in d.on_basis(y).items():
                    add_scaled(rhs, b.mu1((x, w)), sign * c)
                if lhs != rhs:
                    report.record(ij, False, _witness(space, [x, y], lhs, rhs))
                    break
    return report


def check_b_infinity(s: BInfinity, ainf_cap=DEFAULT_AINF_CAP, mb_cap=DEFAULT_MB_CAP,
                     compat_cap=DEFAULT_COMPAT_CAP) -> list[LawReport]:
    return [check_a_infinity(s.a, ainf_cap), check_multibrace(s.b, mb_cap),
            check_compatibility(s, compat_cap)]


# -- shuffles and quasi-trivial structures -----------------------------------------

def shuffle_product(x: dict, y: dict, space: GradedSpace, cap=None) -> dict:
    """Signed shuffle product on T^c(V), extended from eps (x) p1 + p1 (x) eps."""
    sh = CoalgebraMap(shuffle_linear_part, space, space, 2, cap, name="shuffle")
    acc = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            add_scaled(acc, sh.on_basis((w1, w2)), c1 * c2)
    return acc


def quasi_shuffle_multibrace(space: GradedSpace, bullet: MultiMap, arity_cap=DEFAULT_MB_CAP,
                             word_cap=None) -> Multibrace:
    """Multibrace with m_{1,1} = bullet and all other m_{i,j} (i, j >= 1) zero."""
    if (bullet.in_arity, bullet.out_arity) != (2, 1):
        raise ArityError("bullet must be a binary operation")
    if bullet.degree != 0:
        raise HomogeneityError("bullet must have degree 0")
    return Multibrace(space, {(1, 1): bullet}, arity_cap, word_cap)


def check_associative(op: MultiMap, law="associativity") -> LawReport:
    space = op.space
    report = LawReport(law)
    report.verdicts[3] = True
    for x, y, z in space.bounded_words(3):
        lhs = {}
        for (u,), c in op((x, y)).items():
            add_scaled(lhs, op((u, z)), c)
        rhs = {}
        for (u,), c in op((y, z)).items():
            add_scaled(rhs, op((x, u)), c)
        if lhs != rhs:
            report.record(3, False, {"inputs": space.fmt_word((x, y, z)),
                                     "lhs": fmt_combo(space, lhs), "rhs": fmt_combo(space, rhs)})
            break
    return report


def check_square_zero(diff: MultiMap) -> LawReport:
    space = diff.space
    report = LawReport("d^2=0")
    report.verdicts[1] = True
    for (g,) in space.bounded_words(1):
        val = diff.apply(diff((g,)))
        if val:
            report.record(1, False, {"inputs": space.names[g], "lhs": fmt_combo(space, val), "rhs": "0"})
            break
    return report


def check_leibniz(op: MultiMap, diff: MultiMap, law="Leibniz") -> LawReport:
    """diff(x.y) = diff(x).y + (-1)^{|x|} x.diff(y)."""
    space = op.space
    report = LawReport(law)
    report.verdicts[2] = True
    for x, y in space.bounded_words(2):
        lhs = diff.apply(op((x, y)))
        rhs = {}
        for (u,), c in diff((x,)).items():
            add_scaled(rhs, op((u, y)), c)
        sign = -1 if space.degrees[x] % 2 else 1
        for (u,), c in diff((y,)).items():
            add_scaled(rhs, op((x, u)), sign * c)
        if lhs != rhs:
            report.record(2, False, {"inputs": space.fmt_word((x, y)),
                                     "lhs": fmt_combo(space, lhs), "rhs": fmt_combo(space, rhs)})
            break
    return report


def quasi_trivial_b_infinity(space: GradedSpace, bullet: MultiMap, diff: MultiMap,
                             arity_cap=DEFAULT_MB_CAP, word_cap=None) -> BInfinity:
    """m_{1,1} = bullet, m_1 = diff, every other structure map zero."""
    for rep in (check_associative(bullet, "bullet associativity"), check_square_zero(diff),
                check_leibniz(bullet, diff)):
        if not rep.passed:
            raise AxiomError(rep.law, rep.counterexample.get("inputs"))
    a = AInfinity(space, {1: diff}, arity_cap, word_cap)
    b = quasi_shuffle_multibrace(space, bullet, arity_cap, word_cap)
    return BInfinity(a, b)


def structures_equal(s: BInfinity, t: BInfinity, cap: int):
    """First differing component name within cap, or None."""
    for n in range(1, cap + 1):
        if not s.a.m_n(n).equals(t.a.m_n(n)):
            return f"m_{n}"
    for total in range(2, cap + 1):
        for i, j in compositions(total, 2, positive=True):
            if not s.b.component(i, j).equals(t.b.component(i, j)):
                return f"m_{i},{j}"
    return None
