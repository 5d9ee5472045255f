"""Finite groups stored as dense multiplication tables.

Elements are the integers ``0..n-1`` with the identity pinned to ``0``.
Subgroups and other element sets are Python ints used as bitsets.
Structural data (orders, subgroup lattice, conjugacy classes, ...) is
computed on first use and then kept on the group object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .errors import LIMITS, BudgetExceeded, CapExceeded, DomainError, check_order


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class FiniteGroup:
    """A group given by its Cayley table, ``table[a][b] = a*b``."""

    def __init__(self, table, label: str | None = None):
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise DomainError("multiplication table must be a non-empty square array")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise DomainError("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(arr[0], idx) and np.array_equal(arr[:, 0], idx)):
            raise DomainError("element 0 must be the identity")
        srt = np.sort(arr, axis=1)
        if not (np.all(srt == idx) and np.all(np.sort(arr, axis=0) == idx[:, None])):
            raise DomainError("table is not a latin square")
        left = arr[arr[:, :, None], idx[None, None, :]]
        right = arr[idx[:, None, None], arr[None, :, :]]
        if not np.array_equal(left, right):
            raise DomainError("table is not associative")

        self.order = n
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in arr)
        self.inverse: tuple[int, ...] = tuple(row.index(0) for row in self.table)
        self.identity = 0
        self.label = label
        self._cache: dict = {}

    def __repr__(self):
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def name(self) -> str:
        return self.label or f"G{self.order}"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverse[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def orders(self) -> tuple[int, ...]:
        c = self._cache
        if "orders" not in c:
            out = []
            for a in range(self.order):
                k, x = 1, a
                while x != 0:
                    x = self.table[x][a]
                    k += 1
                out.append(k)
            c["orders"] = tuple(out)
        return c["orders"]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.orders)

    def closure(self, elements: Iterable[int]) -> int:
        """Bitset of the subgroup generated by ``elements``."""
        gens = [g for g in set(elements) if g != 0]
        mask, found = 1, [0]
        t = self.table
        for x in found:
            for g in gens:
                y = t[x][g]
                if not mask >> y & 1:
                    mask |= 1 << y
                    found.append(y)
        return mask

    def generators(self) -> tuple[int, ...]:
        """Greedy small generating set: repeatedly add the element that
        enlarges the generated subgroup most (ties to the smaller index)."""
        c = self._cache
        if "gens" not in c:
            gens: list[int] = []
            span = 1
            while span != self.full_mask:
                best, best_span = -1, 0
                for g in range(1, self.order):
                    if span >> g & 1:
                        continue
                    s = self.closure(gens + [g])
                    if popcount(s) > popcount(best_span):
                        best, best_span = g, s
                gens.append(best)
                span = best_span
            c["gens"] = tuple(gens)
        return c["gens"]

    def centralizer_mask(self, x: int) -> int:
        c = self._cache.setdefault("cent", {})
        if x not in c:
            t = self.table
            c[x] = sum(1 << g for g in range(self.order) if t[g][x] == t[x][g])
        return c[x]

    def center_mask(self) -> int:
        m = self.full_mask
        for g in self.generators():
            m &= self.centralizer_mask(g)
        return m

    def conj_mask(self, g: int, mask: int) -> int:
        return sum(1 << self.conj(g, x) for x in bits(mask))

    def to_spec(self) -> dict:
        return {"name": self.name, "table": [list(r) for r in self.table]}


class Subgroup:
    """A subgroup of ``parent`` stored as a member bitset."""

    __slots__ = ("parent", "mask")

    def __init__(self, parent: FiniteGroup, mask: int, check: bool = False):
        self.parent = parent
        self.mask = mask
        if check:
            if not mask & 1 or parent.closure(bits(mask)) != mask:
                raise DomainError("element set is not a subgroup")
            assert parent.order % self.order == 0

    @classmethod
    def generated(cls, parent: FiniteGroup, elements: Iterable[int]) -> "Subgroup":
        return cls(parent, parent.closure(elements))

    @property
    def order(self) -> int:
        return popcount(self.mask)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self):
        return hash(self.mask)

    def __lt__(self, other: "Subgroup"):
        return (self.order, self.mask) < (other.order, other.mask)

    def __repr__(self):
        return f"Subgroup(order={self.order}, mask={self.mask:#x})"

    def is_normal(self) -> bool:
        g = self.parent
        return all(g.conj_mask(x, self.mask) == self.mask for x in g.generators())

    def conjugate(self, x: int) -> "Subgroup":
        return Subgroup(self.parent, self.parent.conj_mask(x, self.mask))

    def as_group(self) -> tuple[FiniteGroup, "Homomorphism"]:
        """The subgroup as a standalone group, with its inclusion map."""
        cache = self.parent._cache.setdefault("subgroup_groups", {})
        if self.mask not in cache:
            members = self.elements
            pos = {x: i for i, x in enumerate(members)}
            t = self.parent.table
            table = [[pos[t[a][b]] for b in members] for a in members]
            label = self.parent.name if self.mask == self.parent.full_mask else None
            grp = FiniteGroup(table, label=label)
            cache[self.mask] = (grp, Homomorphism(grp, self.parent, members))
        return cache[self.mask]


@dataclass(frozen=True)
class SubgroupConjClass:
    parent: FiniteGroup
    representatives: tuple[Subgroup, ...]

    @property
    def canonical(self) -> Subgroup:
        return self.representatives[0]

    @property
    def subgroup_order(self) -> int:
        return self.canonical.order

    def __len__(self):
        return len(self.representatives)

    def __contains__(self, s: Subgroup) -> bool:
        return s in self.representatives

    def masks(self) -> frozenset[int]:
        return frozenset(s.mask for s in self.representatives)


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A map between finite groups recorded as its full image vector."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.order:
            raise DomainError("image vector length differs from source order")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.source is other.source
                and self.target is other.target and self.images == other.images)

    def __hash__(self):
        return hash(self.images)

    def is_valid(self) -> bool:
        s, t, im = self.source.table, self.target.table, self.images
        if im[0] != 0:
            return False
        n = self.source.order
        return all(im[s[a][b]] == t[im[a]][im[b]] for a in range(n) for b in range(n))

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, sum(1 << x for x, y in enumerate(self.images) if y == 0))

    def image(self) -> Subgroup:
        m = 0
        for y in self.images:
            m |= 1 << y
        return Subgroup(self.target, m)

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.source.order == self.target.order

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """``self ∘ inner``"""
        if inner.target is not self.source:
            raise DomainError("cannot compose: target/source mismatch")
        return Homomorphism(inner.source, self.target, tuple(self.images[y] for y in inner.images))

    def inverse(self) -> "Homomorphism":
        if not self.is_bijective():
            raise DomainError("not bijective")
        inv = [0] * self.target.order
        for x, y in enumerate(self.images):
            inv[y] = x
        return Homomorphism(self.target, self.source, tuple(inv))


def identity_hom(g: FiniteGroup) -> Homomorphism:
    return Homomorphism(g, g, tuple(range(g.order)))


# -- constructors ---------------------------------------------------------

def group_from_elements(gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                        label: str | None = None, cap: int | None = None) -> FiniteGroup:
    """Close ``gens`` under ``mul`` and index the result (identity first, then
    breadth-first order)."""
    cap = LIMITS.order_cap if cap is None else cap
    elems = [identity]
    index = {identity: 0}
    for x in elems:
        for g in gens:
            y = mul(x, g)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise CapExceeded(f"generated group exceeds order cap {cap}")
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table, label=label)


def compose_perm(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p∘q)(i) = p(q(i))"""
    return tuple(p[i] for i in q)


def build_from_generators(degree: int, generators: Sequence[Sequence[int]],
                          label: str | None = None, cap: int | None = None) -> FiniteGroup:
    """Permutation group on ``0..degree-1`` generated by image arrays.

    Products compose right to left: ``(p*q)(i) = p(q(i))``.
    """
    if degree < 1:
        raise DomainError("degree must be positive")
    perms = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if sorted(g) != list(range(degree)):
            raise DomainError(f"generator {list(g)} is not a permutation of 0..{degree - 1}")
        perms.append(g)
    return group_from_elements(perms, compose_perm, tuple(range(degree)), label=label, cap=cap)


def direct_product(a: FiniteGroup, b: FiniteGroup, label: str | None = None) -> FiniteGroup:
    """Pairs ``(i, j)`` are encoded as ``i * |b| + j``."""
    check_order(a.order * b.order, "direct product")
    m = b.order
    ta, tb = a.table, b.table
    table = [[ta[i][k] * m + tb[j][l] for k in range(a.order) for l in range(m)]
             for i in range(a.order) for j in range(m)]
    if label is None and a.label and b.label:
        label = f"{a.label}x{b.label}"
    return FiniteGroup(table, label=label)


def product_projections(a: FiniteGroup, b: FiniteGroup, prod: FiniteGroup):
    m = b.order
    return (Homomorphism(prod, a, tuple(x // m for x in range(prod.order))),
            Homomorphism(prod, b, tuple(x % m for x in range(prod.order))))


# -- subgroup structure ---------------------------------------------------

def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, bitset)."""
    c = g._cache
    if "subgroups" not in c:
        check_order(g.order)
        cyclic = {g.closure([x]): x for x in range(g.order)}
        gens_of = {m: ((x,) if x else ()) for m, x in cyclic.items()}
        frontier = list(gens_of)
        while frontier:
            nxt = []
            for s in frontier:
                for cm, x in cyclic.items():
                    if cm & ~s:
                        j = g.closure(gens_of[s] + (x,))
                        if j not in gens_of:
                            gens_of[j] = gens_of[s] + (x,)
                            nxt.append(j)
            frontier = nxt
        c["subgroups"] = sorted(Subgroup(g, m) for m in gens_of)
    return list(c["subgroups"])


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    c = g._cache
    if "normal" not in c:
        c["normal"] = [s for s in all_subgroups(g) if s.is_normal()]
    return list(c["normal"])


def subgroup_classes(g: FiniteGroup) -> list[SubgroupConjClass]:
    """Conjugacy classes of subgroups, ordered by canonical representative."""
    c = g._cache
    if "subclasses" not in c:
        seen: set[int] = set()
        out = []
        for s in all_subgroups(g):
            if s.mask in seen:
                continue
            conj = {g.conj_mask(x, s.mask) for x in range(g.order)}
            seen |= conj
            reps = tuple(sorted(Subgroup(g, m) for m in conj))
            out.append(SubgroupConjClass(g, reps))
        c["subclasses"] = out
    return list(c["subclasses"])


def subgroup_class_of(s: Subgroup) -> SubgroupConjClass:
    for cls in subgroup_classes(s.parent):
        if s.mask in cls.masks():
            return cls
    raise DomainError("not a subgroup of its parent")


def quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, Homomorphism]:
    """``g/n`` on coset indices (cosets ordered by least element) with the
    projection map."""
    if n.parent is not g:
        raise DomainError("subgroup belongs to a different group")
    if not n.is_normal():
        raise DomainError("quotient by a non-normal subgroup")
    key = ("quotient", n.mask)
    if key not in g._cache:
        coset_of = [-1] * g.order
        reps = []
        members = n.elements
        t = g.table
        for a in range(g.order):
            if coset_of[a] < 0:
                for x in members:
                    coset_of[t[a][x]] = len(reps)
                reps.append(a)
        table = [[coset_of[t[a][b]] for b in reps] for a in reps]
        q = FiniteGroup(table)
        g._cache[key] = (q, Homomorphism(g, q, tuple(coset_of)))
    return g._cache[key]


def conjugacy_classes(g: FiniteGroup) -> list[list[int]]:
    c = g._cache
    if "classes" not in c:
        seen = [False] * g.order
        out = []
        for x in range(g.order):
            if not seen[x]:
                cls = sorted({g.conj(y, x) for y in range(g.order)})
                for y in cls:
                    seen[y] = True
                out.append(cls)
        c["classes"] = out
    return [list(cl) for cl in c["classes"]]


def centralizer(g: FiniteGroup, s: Subgroup | Iterable[int]) -> Subgroup:
    elems = s.elements if isinstance(s, Subgroup) else s
    m = g.full_mask
    for x in elems:
        m &= g.centralizer_mask(x)
    return Subgroup(g, m)


def center(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, g.center_mask())


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    t, inv = g.table, g.inverse
    comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(g.order) for b in range(g.order)}
    return Subgroup(g, g.closure(comms))


# -- homomorphism search from a finite source ------------------------------

def extend_on_generators(src: FiniteGroup, gens: Sequence[int], tgt: FiniteGroup,
                         imgs: Sequence[int]) -> list[int] | None:
    """Extend ``gens[i] -> imgs[i]`` over ``<gens>`` along the Cayley graph.

    Returns the partial image list (``-1`` outside ``<gens>``) or ``None`` if
    some Cayley-graph edge is inconsistent, i.e. no homomorphism exists.
    """
    ts, tt = src.table, tgt.table
    phi = [-1] * src.order
    phi[0] = 0
    found = [0]
    for x in found:
        px = phi[x]
        for g, h in zip(gens, imgs):
            y = ts[x][g]
            v = tt[px][h]
            if phi[y] < 0:
                phi[y] = v
                found.append(y)
            elif phi[y] != v:
                return None
    return phi


class Budget:
    def __init__(self, limit: int | None = None):
        self.limit = LIMITS.budget if limit is None else limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(f"enumeration budget {self.limit} exceeded")


def search_finite_homs(src: FiniteGroup, tgt: FiniteGroup, *, injective: bool = False,
                       budget: Budget | None = None) -> list[tuple[int, ...]]:
    """All homomorphisms ``src -> tgt`` as full image vectors, in depth-first
    order over images of ``src.generators()``."""
    budget = budget or Budget()
    gens = src.generators()
    if injective and (src.order > tgt.order or tgt.order % src.order):
        return []
    so, to = src.orders, tgt.orders
    cands = []
    for g in gens:
        if injective:
            cands.append([h for h in range(tgt.order) if to[h] == so[g]])
        else:
            cands.append([h for h in range(tgt.order) if so[g] % to[h] == 0])
    out: list[tuple[int, ...]] = []
    imgs: list[int] = []

    def rec(j: int, phi: list[int]):
        if j == len(gens):
            out.append(tuple(phi))
            return
        for h in cands[j]:
            budget.spend()
            imgs.append(h)
            nxt = extend_on_generators(src, gens[: j + 1], tgt, imgs)
            if nxt is not None:
                vals = [v for v in nxt if v >= 0]
                if not injective or len(set(vals)) == len(vals):
                    rec(j + 1, nxt)
            imgs.pop()

    if not gens:
        return [tuple([0])]
    rec(0, [0])
    return out


def automorphisms(g: FiniteGroup, kind: str = "full") -> list[Homomorphism]:
    """Automorphisms of ``g``: ``trivial`` (identity only), ``inner``
    (one conjugation per coset of the center) or ``full``."""
    kind = {"aut": "full", "fullaut": "full"}.get(kind.lower(), kind.lower())
    if kind == "trivial":
        return [identity_hom(g)]
    if kind == "inner":
        seen: dict[tuple[int, ...], None] = {}
        for x in range(g.order):
            seen.setdefault(tuple(g.conj(x, y) for y in range(g.order)), None)
        return [Homomorphism(g, g, im) for im in seen]
    if kind == "full":
        c = g._cache
        if "aut" not in c:
            check_order(g.order, "automorphism search on group")
            c["aut"] = search_finite_homs(g, g, injective=True)
        return [Homomorphism(g, g, im) for im in c["aut"]]
    raise DomainError(f"unknown automorphism kind {kind!r}")
