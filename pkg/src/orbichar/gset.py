"""Finite G-sets: fixed points, isotropy strata, orbits, induction."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import LIMITS, CapExceeded, DomainError
from .groups import (FiniteGroup, Homomorphism, Subgroup, SubgroupConjClass, bits,
                     direct_product, popcount, subgroup_classes)


class GSet:
    """A finite set ``0..size-1`` with a left action; ``action[x][g] = g·x``."""

    def __init__(self, group: FiniteGroup, action: Sequence[Sequence[int]], check: bool = True):
        self.group = group
        self.action: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in action)
        self.size = len(self.action)
        self._cache: dict = {}
        if check:
            self._check()

    def _check(self):
        n, t = self.group.order, self.group.table
        for x, row in enumerate(self.action):
            if len(row) != n:
                raise DomainError("action row length differs from group order")
            if row[0] != x:
                raise DomainError("identity does not act trivially")
            if any(not 0 <= v < self.size for v in row):
                raise DomainError("action value out of range")
        # g·(h·x) = (gh)·x
        act = self.action
        for x in range(self.size):
            ax = act[x]
            for h in range(n):
                ahx = act[ax[h]]
                th = [t[g][h] for g in range(n)]
                if any(ahx[g] != ax[th[g]] for g in range(n)):
                    raise DomainError("action is not a left action")

    def __repr__(self):
        return f"GSet({self.group.name}, size={self.size})"

    def __len__(self):
        return self.size

    def act(self, g: int, x: int) -> int:
        return self.action[x][g]

    @property
    def fix_masks(self) -> tuple[int, ...]:
        """Per group element, the bitset of points it fixes."""
        c = self._cache
        if "fix" not in c:
            masks = [0] * self.group.order
            for x, row in enumerate(self.action):
                for g, y in enumerate(row):
                    if y == x:
                        masks[g] |= 1 << x
            c["fix"] = tuple(masks)
        return c["fix"]

    def fixed_mask(self, elements: Iterable[int]) -> int:
        m = (1 << self.size) - 1
        fm = self.fix_masks
        for g in elements:
            m &= fm[g]
        return m

    def isotropy(self, x: int) -> Subgroup:
        return Subgroup(self.group, sum(1 << g for g, y in enumerate(self.action[x]) if y == x))

    def orbits(self) -> list[list[int]]:
        c = self._cache
        if "orbits" not in c:
            seen = [False] * self.size
            out = []
            for x in range(self.size):
                if not seen[x]:
                    orb = sorted(set(self.action[x]))
                    for y in orb:
                        seen[y] = True
                    out.append(orb)
            c["orbits"] = out
        return [list(o) for o in c["orbits"]]

    def subset(self, points: Iterable[int]) -> "GSet":
        """The G-set on an invariant subset (points renumbered in order)."""
        pts = sorted(set(points))
        pos = {p: i for i, p in enumerate(pts)}
        try:
            return GSet(self.group, [[pos[y] for y in self.action[p]] for p in pts], check=False)
        except KeyError:
            raise DomainError("subset is not invariant") from None

    def restrict(self, sub: Subgroup, points: Iterable[int] | None = None) -> "GSet":
        """Restrict the action to ``sub`` (as a standalone group) on an
        optional ``sub``-invariant subset of points."""
        grp, emb = sub.as_group()
        pts = range(self.size) if points is None else sorted(set(points))
        pos = {p: i for i, p in enumerate(pts)}
        try:
            act = [[pos[self.action[p][emb.images[c]]] for c in range(grp.order)] for p in pts]
        except KeyError:
            raise DomainError("points are not invariant under the subgroup") from None
        return GSet(grp, act, check=False)

    def to_spec(self, group_ref=None) -> dict:
        return {"group": group_ref if group_ref is not None else self.group.to_spec(),
                "size": self.size, "action": [list(r) for r in self.action]}


# -- standard G-sets -------------------------------------------------------

def coset_space(g: FiniteGroup, k: Subgroup) -> GSet:
    """``G/K`` with cosets ``hK`` numbered by least member."""
    if k.parent is not g:
        raise DomainError("subgroup of a different group")
    t = g.table
    members = k.elements
    coset_of = [-1] * g.order
    reps = []
    for a in range(g.order):
        if coset_of[a] < 0:
            for x in members:
                coset_of[t[a][x]] = len(reps)
            reps.append(a)
    return GSet(g, [[coset_of[t[h][r]] for h in range(g.order)] for r in reps], check=False)


def point(g: FiniteGroup) -> GSet:
    """The one-point G-set ``G/G``."""
    return GSet(g, [[0] * g.order], check=False)


def regular(g: FiniteGroup) -> GSet:
    """G acting on itself by left translation."""
    t = g.table
    return GSet(g, [[t[h][x] for h in range(g.order)] for x in range(g.order)], check=False)


def trivial_action(g: FiniteGroup, size: int) -> GSet:
    return GSet(g, [[x] * g.order for x in range(size)], check=False)


# -- operations ------------------------------------------------------------

def fixed_points(x: GSet, k: Subgroup) -> frozenset[int]:
    if k.parent is not x.group:
        raise DomainError("subgroup of a different group")
    return frozenset(bits(x.fixed_mask(k.elements)))


def strict_isotropy_stratum(x: GSet, kclass: SubgroupConjClass) -> frozenset[int]:
    """Points whose isotropy subgroup belongs to ``kclass``."""
    masks = kclass.masks()
    return frozenset(p for p in range(x.size) if x.isotropy(p).mask in masks)


def class_fixed_points(x: GSet, kclass: SubgroupConjClass) -> frozenset[int]:
    """Points whose isotropy subgroup contains some member of ``kclass``."""
    m = 0
    for s in kclass.representatives:
        m |= x.fixed_mask(s.elements)
    return frozenset(bits(m))


def isotropy_strata(x: GSet) -> dict[SubgroupConjClass, frozenset[int]]:
    return {cls: strict_isotropy_stratum(x, cls) for cls in subgroup_classes(x.group)}


def orbits(x: GSet) -> list[list[int]]:
    return x.orbits()


def quotient_size(x: GSet) -> int:
    return len(x.orbits())


def burnside_count(x: GSet) -> int:
    total = sum(popcount(m) for m in x.fix_masks)
    q, r = divmod(total, x.group.order)
    assert r == 0
    return q


def induce(x: GSet, h: FiniteGroup, embedding: Homomorphism, cap: int | None = None) -> GSet:
    """``Ind_G^H X = (H × X)/~`` along an injective ``embedding: G -> H``.

    Points are ``(i, p) -> i*|X| + p`` where ``i`` indexes the left cosets
    ``t_i G`` of the embedded subgroup (numbered by least member, so
    ``t_0`` is the identity) and ``h·(t_i, p) = (t_j, g·p)`` for
    ``h t_i = t_j g``.
    """
    g = x.group
    if embedding.source is not g or embedding.target is not h:
        raise DomainError("embedding must map the G-set's group into h")
    if not embedding.is_injective():
        raise DomainError("embedding is not injective")
    cap = LIMITS.gset_cap if cap is None else cap
    m = h.order // g.order
    if m * x.size > cap:
        raise CapExceeded(f"induced set of size {m * x.size} exceeds size cap {cap}")
    t = h.table
    pre = {y: a for a, y in enumerate(embedding.images)}
    coset = [-1] * h.order
    part = [0] * h.order  # y = t_{coset[y]} · emb(part[y])
    reps = []
    for a in range(h.order):
        if coset[a] < 0:
            for s, y in enumerate(embedding.images):
                coset[t[a][y]] = len(reps)
                part[t[a][y]] = s
            reps.append(a)
    assert len(reps) == m and all(pre[t[h.inverse[reps[coset[y]]]][y]] == part[y] for y in range(h.order))
    n = x.size
    act = []
    for i, ti in enumerate(reps):
        moves = [(coset[t[k][ti]], part[t[k][ti]]) for k in range(h.order)]
        for p in range(n):
            act.append([j * n + x.action[p][s] for j, s in moves])
    return GSet(h, act, check=False)


def disjoint_union(x: GSet, y: GSet) -> GSet:
    if x.group is not y.group:
        raise DomainError("disjoint union needs a common group")
    off = x.size
    return GSet(x.group, [list(r) for r in x.action] + [[v + off for v in r] for r in y.action],
                check=False)


def product(x: GSet, y: GSet, group: FiniteGroup | None = None) -> GSet:
    """``X × Y`` over ``G1 × G2``; element ``(g1, g2)`` is ``g1*|G2| + g2`` and
    point ``(p, q)`` is ``p*|Y| + q``."""
    g1, g2 = x.group, y.group
    prod = group if group is not None else direct_product(g1, g2)
    if prod.order != g1.order * g2.order:
        raise DomainError("product group has the wrong order")
    m, ny = g2.order, y.size
    act = []
    for p in range(x.size):
        for q in range(ny):
            act.append([x.action[p][e // m] * ny + y.action[q][e % m] for e in range(prod.order)])
    return GSet(prod, act, check=False)


def equivariant_isomorphism(x: GSet, y: GSet) -> list[int] | None:
    """A G-equivariant bijection ``x -> y`` as a point map, or ``None``.

    Orbits are matched by exact stabilizer of their least point; within a
    candidate target orbit the map is forced, then verified pointwise.
    """
    if x.group is not y.group or x.size != y.size:
        return None
    g = x.group
    y_orbits = y.orbits()
    y_stabs: dict[int, list[int]] = {}
    for q in range(y.size):
        y_stabs.setdefault(y.isotropy(q).mask, []).append(q)
    orbit_of_y = {}
    for i, o in enumerate(y_orbits):
        for q in o:
            orbit_of_y[q] = i
    used: set[int] = set()
    f = [-1] * x.size

    def rec(orbs: list[list[int]]) -> bool:
        if not orbs:
            return True
        o, rest = orbs[0], orbs[1:]
        p = o[0]
        stab = x.isotropy(p).mask
        for q in y_stabs.get(stab, []):
            if orbit_of_y[q] in used or len(y_orbits[orbit_of_y[q]]) != len(o):
                continue
            used.add(orbit_of_y[q])
            for e in range(g.order):
                f[x.action[p][e]] = y.action[q][e]
            if rec(rest):
                return True
            used.discard(orbit_of_y[q])
        return False

    if not rec(x.orbits()):
        return None
    if sorted(f) != list(range(y.size)):
        return None
    if any(f[x.action[p][e]] != y.action[f[p]][e] for p in range(x.size) for e in range(g.order)):
        return None
    return f


def are_equivalent(x: GSet, y: GSet) -> bool:
    return equivariant_isomorphism(x, y) is not None
