"""Isomorphism testing, canonical keys and Krull-Schmidt factorization.

The canonical form of a group is the lexicographically least relabelled
multiplication table among the labelings induced by its minimal generating
tuples.  A generating tuple ``(t1..td)`` labels elements by breadth-first
search on the right Cayley graph (identity first, generators tried in
order), so any isomorphism carries the family of labelings of one group onto
that of the other.  The family is cut down further to tuples whose
(element order, class size) profile is lexicographically greatest, which is
also an isomorphism invariant.
"""

from __future__ import annotations

import threading
from collections import Counter

from .errors import check_order
from .groups import (FiniteGroup, Homomorphism, Subgroup, conjugacy_classes,
                     derived_subgroup, normal_subgroups, quotient)

CanonicalKey = bytes

_lock = threading.Lock()


def fingerprint(g: FiniteGroup) -> tuple:
    """Cheap isomorphism invariant: order, element-order multiset, center
    size, class sizes and the abelianization's order profile."""
    c = g._cache
    if "fingerprint" not in c:
        d = derived_subgroup(g)
        ab, _ = quotient(g, d)
        cls = sorted(Counter((len(k), g.orders[k[0]]) for k in conjugacy_classes(g)).items())
        c["fingerprint"] = (
            g.order,
            tuple(sorted(Counter(g.orders).items())),
            bin(g.center_mask()).count("1"),
            tuple(cls),
            tuple(sorted(Counter(ab.orders).items())),
        )
    return c["fingerprint"]


def _class_size(g: FiniteGroup) -> list[int]:
    out = [0] * g.order
    for k in conjugacy_classes(g):
        for x in k:
            out[x] = len(k)
    return out


def _profile(g: FiniteGroup, x: int, csize: list[int]) -> tuple[int, int]:
    # larger is preferred
    return (g.orders[x], -csize[x])


def minimal_generating_tuples(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All generating tuples of minimum length whose per-entry profile
    sequence is lexicographically greatest."""
    if g.order == 1:
        return [()]
    csize = _class_size(g)
    # minimum generating length, searching one element per cyclic subgroup
    cyc_reps = {}
    for x in range(1, g.order):
        cyc_reps.setdefault(g.closure([x]), x)
    reps = sorted(cyc_reps.values())

    def exists(k, span, chosen):
        if span == g.full_mask:
            return True
        if k == 0:
            return False
        for x in reps:
            if not span >> x & 1 and exists(k - 1, g.closure(chosen + [x]), chosen + [x]):
                return True
        return False

    d = 1
    while not exists(d, 1, []):
        d += 1

    best_prof: tuple | None = None
    found: list[tuple[int, ...]] = []
    elems = sorted(range(1, g.order), key=lambda x: _profile(g, x, csize), reverse=True)

    def rec(chosen: list[int], span: int, prof: tuple):
        nonlocal best_prof, found
        if best_prof is not None and prof < best_prof[: len(prof)]:
            return
        if len(chosen) == d:
            if span != g.full_mask:
                return
            if best_prof is None or prof > best_prof:
                best_prof, found = prof, []
            found.append(tuple(chosen))
            return
        for x in elems:
            if span >> x & 1:
                continue
            p = prof + (_profile(g, x, csize),)
            if best_prof is not None and p < best_prof[: len(p)]:
                break  # elems sorted by descending profile
            rec(chosen + [x], g.closure(chosen + [x]), p)

    rec([], 1, ())
    return found


def _bfs_labels(g: FiniteGroup, gens: tuple[int, ...]) -> list[int]:
    t = g.table
    order = [0]
    seen = {0}
    for x in order:
        for s in gens:
            y = t[x][s]
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def _canonical(g: FiniteGroup) -> tuple[bytes, tuple[int, ...]]:
    c = g._cache
    if "canon" in c:
        return c["canon"]
    check_order(g.order, "canonical form of group")
    n = g.order
    t = g.table
    best: list[list[int]] | None = None
    best_order: list[int] | None = None
    for gens in minimal_generating_tuples(g):
        order = _bfs_labels(g, gens)
        lab = [0] * n
        for i, x in enumerate(order):
            lab[x] = i
        rows = []
        decided = best is None
        for i in range(n):
            ti = t[order[i]]
            row = [lab[ti[x]] for x in order]
            if not decided:
                if row < best[i]:
                    decided = True
                elif row > best[i]:
                    rows = None
                    break
            rows.append(row)
        if rows is not None and (best is None or rows < best):
            best, best_order = rows, order
    width = 1 if n <= 256 else 2
    key = n.to_bytes(4, "big") + b"".join(v.to_bytes(width, "big") for row in best for v in row)
    with _lock:
        c.setdefault("canon", (key, tuple(best_order)))
    return c["canon"]


def canonical_key(g: FiniteGroup) -> CanonicalKey:
    return _canonical(g)[0]


def canonical_table(key: CanonicalKey) -> list[list[int]]:
    n = int.from_bytes(key[:4], "big")
    width = 1 if n <= 256 else 2
    body = key[4:]
    vals = [int.from_bytes(body[i:i + width], "big") for i in range(0, len(body), width)]
    return [vals[i * n:(i + 1) * n] for i in range(n)]


def key_order(key: CanonicalKey) -> int:
    return int.from_bytes(key[:4], "big")


def sort_key(key: CanonicalKey) -> tuple[int, bytes]:
    return (key_order(key), key)


def isomorphism(a: FiniteGroup, b: FiniteGroup) -> Homomorphism | None:
    """An isomorphism ``a -> b`` or ``None``."""
    if a is b:
        return Homomorphism(a, b, tuple(range(a.order)))
    if a.order != b.order or fingerprint(a) != fingerprint(b):
        return None
    ka, la = _canonical(a)
    kb, lb = _canonical(b)
    if ka != kb:
        return None
    img = [0] * a.order
    for x, y in zip(la, lb):
        img[x] = y
    return Homomorphism(a, b, tuple(img))


def are_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    return isomorphism(a, b) is not None


_KS_MEMO: dict[bytes, tuple[bytes, ...]] = {}


def krull_schmidt_factors(g: FiniteGroup) -> tuple[CanonicalKey, ...]:
    """Canonical keys of the indecomposable direct factors of ``g``, sorted
    by (order, key).  The trivial group has no factors."""
    check_order(g.order, "Krull-Schmidt search on group")
    key = canonical_key(g)
    if key in _KS_MEMO:
        return _KS_MEMO[key]
    if g.order == 1:
        res: tuple[bytes, ...] = ()
    else:
        res = (key,)
        normals = [n for n in normal_subgroups(g) if 1 < n.order < g.order]
        for n in normals:
            comp = next((m for m in normals
                         if m.order * n.order == g.order and m.mask & n.mask == 1), None)
            if comp is not None:
                res = tuple(sorted(krull_schmidt_factors(n.as_group()[0])
                                   + krull_schmidt_factors(comp.as_group()[0]), key=sort_key))
                break
    with _lock:
        _KS_MEMO.setdefault(key, res)
    return _KS_MEMO[key]


def is_indecomposable(g: FiniteGroup) -> bool:
    return len(krull_schmidt_factors(g)) == 1


def internal_direct_factors(g: FiniteGroup) -> list[tuple[Subgroup, Subgroup]]:
    """Pairs of nontrivial normal subgroups giving an internal direct product."""
    normals = [n for n in normal_subgroups(g) if 1 < n.order < g.order]
    return [(n, m) for n in normals for m in normals
            if n.mask < m.mask and n.order * m.order == g.order and n.mask & m.mask == 1]
