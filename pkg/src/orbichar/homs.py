"""Hom(A, B), Mono(A, B) and their orbits under a chosen ω(B) ≤ Aut(B).

Sources ``A`` are finitely generated: a finite group, ``Z^k``, a finite
group times ``Z^k``, or a finite presentation.  Every homomorphism is stored
as a tuple; for finite sources it is the full image vector, otherwise the
images of the generators.  Post-composition with an automorphism acts
entrywise on either form.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError
from .groups import (Budget, FiniteGroup, Homomorphism, automorphisms, direct_product,
                     normal_subgroups, popcount, quotient, search_finite_homs)


# -- source specs ---------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    group: FiniteGroup

    @property
    def label(self) -> str:
        return self.group.name

    @property
    def has_free_factor(self) -> bool:
        return False


@dataclass(frozen=True)
class FreeAbelian:
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise DomainError("rank must be nonnegative")

    @property
    def label(self) -> str:
        return "1" if self.rank == 0 else ("Z" if self.rank == 1 else f"Z^{self.rank}")

    @property
    def has_free_factor(self) -> bool:
        return self.rank > 0


@dataclass(frozen=True)
class ProductWithFree:
    finite: FiniteGroup
    rank: int = 1

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("ProductWithFree needs rank >= 1")

    @property
    def label(self) -> str:
        z = "Z" if self.rank == 1 else f"Z^{self.rank}"
        return f"{self.finite.name}x{z}"

    @property
    def has_free_factor(self) -> bool:
        return True


@dataclass(frozen=True)
class Presentation:
    """Generators ``0..ngens-1``; a relator is a tuple of signed 1-based
    generator indices (``i+1`` for generator ``i``, ``-(i+1)`` for its
    inverse)."""

    ngens: int
    relators: tuple[tuple[int, ...], ...] = ()
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.ngens < 0:
            raise DomainError("generator count must be nonnegative")
        rels = tuple(tuple(int(s) for s in r) for r in self.relators)
        for r in rels:
            if any(s == 0 or abs(s) > self.ngens for s in r):
                raise DomainError(f"relator {r} references an unknown generator")
        object.__setattr__(self, "relators", rels)

    @property
    def label(self) -> str:
        return "pres:{" + format_presentation(self) + "}"

    @property
    def has_free_factor(self) -> bool:
        # not decidable in general; only syntactic Z factors are tracked
        return False


FgGroupSpec = Finite | FreeAbelian | ProductWithFree | Presentation


def is_finite_spec(a) -> bool:
    return isinstance(a, Finite) or (isinstance(a, FreeAbelian) and a.rank == 0)


def finite_group_of(a) -> FiniteGroup:
    if isinstance(a, Finite):
        return a.group
    if isinstance(a, FreeAbelian) and a.rank == 0:
        return FiniteGroup([[0]], label="triv")
    raise DomainError(f"source {a.label} is not realized as a finite group")


def to_presentation(a) -> Presentation:
    """A presentation of any source spec.  Finite groups use the Cayley
    graph on their generators: one relator per edge outside a BFS tree."""
    if isinstance(a, Presentation):
        return a
    if isinstance(a, FreeAbelian):
        return Presentation(a.rank, _commutators(a.rank))
    if isinstance(a, ProductWithFree):
        return presentation_product(to_presentation(Finite(a.finite)), to_presentation(FreeAbelian(a.rank)))
    g = a.group
    gens = g.generators()
    word: dict[int, tuple[int, ...]] = {0: ()}
    order = [0]
    rels = []
    for x in order:
        for i, s in enumerate(gens):
            y = g.table[x][s]
            if y not in word:
                word[y] = word[x] + (i + 1,)
                order.append(y)
    for x in order:
        for i, s in enumerate(gens):
            y = g.table[x][s]
            if word[y] != word[x] + (i + 1,):
                rels.append(_free_reduce(word[x] + (i + 1,) + tuple(-v for v in reversed(word[y]))))
    rels = tuple(sorted(set(r for r in rels if r)))
    return Presentation(len(gens), rels)


def _free_reduce(w: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for s in w:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def _commutators(k: int) -> tuple[tuple[int, ...], ...]:
    return tuple((-(i + 1), -(j + 1), i + 1, j + 1) for i in range(k) for j in range(i + 1, k))


def presentation_product(p: Presentation, q: Presentation) -> Presentation:
    m = p.ngens
    shifted = tuple(tuple(s + m if s > 0 else s - m for s in r) for r in q.relators)
    comm = tuple((-(i + 1), -(m + j + 1), i + 1, m + j + 1) for i in range(m) for j in range(q.ngens))
    return Presentation(m + q.ngens, p.relators + shifted + comm)


def spec_product(a, b):
    """The direct product of two source specs, in the narrowest variant."""
    if isinstance(a, Presentation) or isinstance(b, Presentation):
        return presentation_product(to_presentation(a), to_presentation(b))

    def split(s):
        if isinstance(s, Finite):
            return s.group, 0
        if isinstance(s, FreeAbelian):
            return None, s.rank
        return s.finite, s.rank

    fa, ra = split(a)
    fb, rb = split(b)
    if fa is None:
        fin = fb
    elif fb is None:
        fin = fa
    else:
        fin = direct_product(fa, fb)
    rank = ra + rb
    if fin is None:
        return FreeAbelian(rank)
    if rank == 0:
        return Finite(fin)
    return ProductWithFree(fin, rank)


# -- presentation text ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\^)|(-?\d+)|([()\[\],*=]))")


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: a b; rels: a^2, (a b)^3, [a, b], a^3 = b^2``.

    Words are whitespace- or ``*``-separated generator names; ``(w)^k``
    raises a subword to an integer power (negative allowed); ``[u, v]`` is
    the commutator ``u^-1 v^-1 u v``; ``u = v`` means ``u v^-1``; ``1`` is
    the empty word.
    """
    text = text.strip()
    m = re.fullmatch(r"gens\s*:\s*([^;]*?)\s*(?:;\s*rels\s*:\s*(.*))?", text, re.S)
    if not m:
        raise DomainError("presentation must look like 'gens: ...; rels: ...'")
    names = tuple(m.group(1).split())
    if len(set(names)) != len(names):
        raise DomainError("duplicate generator name")
    for nm in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
            raise DomainError(f"bad generator name {nm!r}")
    index = {nm: i for i, nm in enumerate(names)}
    rels_text = (m.group(2) or "").strip()
    tokens = []
    pos = 0
    while pos < len(rels_text):
        t = _TOKEN.match(rels_text, pos)
        if not t or t.end() == pos:
            if rels_text[pos:].strip() == "":
                break
            raise DomainError(f"cannot parse relators near {rels_text[pos:pos + 10]!r}")
        tokens.append(t.group(1) or t.group(2) or t.group(3) or t.group(4))
        pos = t.end()
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise DomainError(f"expected {expected or 'token'} in relators, got {tok!r}")
        i += 1
        return tok

    def word(stop) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        while peek() is not None and peek() not in stop:
            if peek() == "*":
                take()
                continue
            out = out + factor()
        return out

    def factor() -> tuple[int, ...]:
        tok = take()
        if tok == "(":
            w = word({")"})
            take(")")
        elif tok == "[":
            u = word({","})
            take(",")
            v = word({"]"})
            take("]")
            w = inv(u) + inv(v) + u + v
        elif tok == "1":
            w = ()
        elif tok in index:
            w = (index[tok] + 1,)
        else:
            raise DomainError(f"unknown generator {tok!r}")
        if peek() == "^":
            take()
            k = int(take())
            w = w * k if k >= 0 else inv(w) * (-k)
        return w

    def inv(w):
        return tuple(-s for s in reversed(w))

    rels = []
    while peek() is not None:
        lhs = word({",", "="})
        if peek() == "=":
            take()
            lhs = lhs + inv(word({","}))
        rels.append(_free_reduce(lhs))
        if peek() == ",":
            take()
    return Presentation(len(names), tuple(r for r in rels if r), names)


def format_presentation(p: Presentation) -> str:
    names = p.names or tuple(f"x{i}" for i in range(p.ngens))
    rels = []
    for r in p.relators:
        rels.append(" ".join(names[abs(s) - 1] + ("^-1" if s < 0 else "") for s in r))
    s = "gens: " + " ".join(names)
    if rels:
        s += "; rels: " + ", ".join(rels)
    return s


# -- enumeration ------------------------------------------------------------

@dataclass(frozen=True)
class HomSet:
    source: object
    target: FiniteGroup
    homs: tuple[tuple[int, ...], ...]
    gen_positions: tuple[int, ...]

    def __len__(self):
        return len(self.homs)

    def __iter__(self):
        return iter(self.homs)

    def generator_images(self, i: int) -> tuple[int, ...]:
        h = self.homs[i]
        return tuple(h[p] for p in self.gen_positions)

    def image_mask(self, i: int) -> int:
        if isinstance(self.source, Finite):
            m = 0
            for y in self.homs[i]:
                m |= 1 << y
            return m
        return self.target.closure(self.homs[i])

    def homomorphism(self, i: int) -> Homomorphism:
        if not isinstance(self.source, Finite):
            raise DomainError("only finite sources have full image vectors")
        return Homomorphism(self.source.group, self.target, self.homs[i])


def _commuting_tuples(b: FiniteGroup, k: int, within: int, budget: Budget) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix: tuple[int, ...], allowed: int):
        if len(prefix) == k:
            out.append(prefix)
            return
        m, h = allowed, 0
        while m:
            if m & 1:
                budget.spend()
                rec(prefix + (h,), allowed & b.centralizer_mask(h))
            m >>= 1
            h += 1

    rec((), within)
    return out


def _eval_word(b: FiniteGroup, imgs, w) -> int:
    t, inv = b.table, b.inverse
    x = 0
    for s in w:
        x = t[x][imgs[s - 1] if s > 0 else inv[imgs[-s - 1]]]
    return x


def _presentation_homs(p: Presentation, b: FiniteGroup, budget: Budget) -> list[tuple[int, ...]]:
    by_last: dict[int, list] = {}
    for r in p.relators:
        by_last.setdefault(max(abs(s) for s in r), []).append(r)
    out = []
    imgs: list[int] = []

    def rec(j: int):
        if j == p.ngens:
            out.append(tuple(imgs))
            return
        for h in range(b.order):
            budget.spend()
            imgs.append(h)
            if all(_eval_word(b, imgs, r) == 0 for r in by_last.get(j + 1, ())):
                rec(j + 1)
            imgs.pop()

    rec(0)
    return out


def enumerate_homs(a, b: FiniteGroup, budget: int | None = None) -> HomSet:
    """All homomorphisms ``a -> b`` in deterministic depth-first order."""
    return _enumerate(a, b, budget)


@lru_cache(maxsize=8192)
def _enumerate(a, b: FiniteGroup, budget: int | None) -> HomSet:
    bud = Budget(budget)
    if isinstance(a, Finite):
        homs = search_finite_homs(a.group, b, budget=bud)
        return HomSet(a, b, tuple(homs), a.group.generators())
    if isinstance(a, FreeAbelian):
        homs = _commuting_tuples(b, a.rank, b.full_mask, bud)
        return HomSet(a, b, tuple(homs), tuple(range(a.rank)))
    if isinstance(a, ProductWithFree):
        fgens = a.finite.generators()
        homs = []
        for phi in search_finite_homs(a.finite, b, budget=bud):
            imgs = tuple(phi[g] for g in fgens)
            cent = b.full_mask
            for h in imgs:
                cent &= b.centralizer_mask(h)
            for tail in _commuting_tuples(b, a.rank, cent, bud):
                homs.append(imgs + tail)
        return HomSet(a, b, tuple(homs), tuple(range(len(fgens) + a.rank)))
    if isinstance(a, Presentation):
        homs = _presentation_homs(a, b, bud)
        return HomSet(a, b, tuple(homs), tuple(range(a.ngens)))
    raise DomainError(f"unknown source spec {a!r}")


def enumerate_monos(a, b: FiniteGroup, budget: int | None = None) -> HomSet:
    g = finite_group_of(a)
    return _enumerate_monos(g, b, budget)


@lru_cache(maxsize=8192)
def _enumerate_monos(g: FiniteGroup, b: FiniteGroup, budget: int | None) -> HomSet:
    homs = search_finite_homs(g, b, injective=True, budget=Budget(budget))
    return HomSet(Finite(g), b, tuple(homs), g.generators())


# -- ω-orbits ----------------------------------------------------------------

class Omega(enum.Enum):
    TRIVIAL = "trivial"
    INNER = "inner"
    FULL_AUT = "aut"

    @classmethod
    def parse(cls, s: "str | Omega") -> "Omega":
        if isinstance(s, Omega):
            return s
        s = s.strip().lower()
        if s in ("full", "fullaut", "full_aut", "automorphisms"):
            s = "aut"
        try:
            return cls(s)
        except ValueError:
            raise DomainError(f"unknown omega {s!r} (trivial, inner, aut)") from None


def omega_action(b: FiniteGroup, w: Omega) -> list[tuple[int, ...]]:
    """Image vectors of a generating family of ω(b)."""
    w = Omega.parse(w)
    if w is Omega.TRIVIAL:
        return []
    if w is Omega.INNER:
        return [tuple(b.conj(g, y) for y in range(b.order)) for g in b.generators()]
    return [h.images for h in automorphisms(b, "full")]


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int):
        x, y = self.find(x), self.find(y)
        if x != y:
            if y < x:
                x, y = y, x
            self.parent[y] = x
            self.count -= 1


def orbit_partition(homs: HomSet, w) -> list[list[int]]:
    """Indices of ``homs`` grouped into ω(target)-orbits."""
    keys = [homs.generator_images(i) for i in range(len(homs))]
    index = {k: i for i, k in enumerate(keys)}
    uf = UnionFind(len(keys))
    for theta in omega_action(homs.target, w):
        for i, k in enumerate(keys):
            uf.union(i, index[tuple(theta[y] for y in k)])
    groups: dict[int, list[int]] = {}
    for i in range(len(keys)):
        groups.setdefault(uf.find(i), []).append(i)
    return list(groups.values())


def rep_count(a, b: FiniteGroup, w="inner", budget: int | None = None) -> int:
    """|Rep_ω(A, B)| = number of ω(B)-orbits on Hom(A, B)."""
    return _rep_count(a, b, Omega.parse(w), budget)


@lru_cache(maxsize=16384)
def _rep_count(a, b, w, budget):
    return len(orbit_partition(enumerate_homs(a, b, budget), w))


def frep_count(a, b: FiniteGroup, w="inner", budget: int | None = None) -> int:
    """|FRep_ω(A, B)| = number of ω(B)-orbits on Mono(A, B)."""
    return _frep_count(finite_group_of(a), b, Omega.parse(w), budget)


@lru_cache(maxsize=16384)
def _frep_count(g, b, w, budget):
    return len(orbit_partition(enumerate_monos(Finite(g), b, budget), w))


def hom_decomposition_report(a: FiniteGroup, b: FiniteGroup, budget: int | None = None) -> dict:
    """Both sides of |Hom(A,B)| = Σ_{K⊴A} |Mono(A/K,B)| and of the orbit
    version for every ω choice."""
    quotients = [quotient(a, k)[0] for k in normal_subgroups(a)]
    rep = {"hom": (len(enumerate_homs(Finite(a), b, budget)),
                   sum(len(enumerate_monos(Finite(q), b, budget)) for q in quotients))}
    for w in Omega:
        rep[w.value] = (rep_count(Finite(a), b, w, budget),
                        sum(frep_count(Finite(q), b, w, budget) for q in quotients))
    return rep


def hom_decomposition_check(a: FiniteGroup, b: FiniteGroup, budget: int | None = None) -> bool:
    return all(l == r for l, r in hom_decomposition_report(a, b, budget).values())


def kernels_constant_on_orbits(a: FiniteGroup, b: FiniteGroup, w="inner") -> bool:
    homs = enumerate_homs(Finite(a), b)
    for orb in orbit_partition(homs, w):
        kers = {homs.homomorphism(i).kernel().mask for i in orb}
        if len(kers) != 1:
            return False
    return True


def image_order(homs: HomSet, i: int) -> int:
    return popcount(homs.image_mask(i))
