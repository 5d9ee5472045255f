"""Catalog of all groups of order at most 16, one per isomorphism class.

Each group is produced by closing a short list of explicit generators inside
a concrete model (integers mod n, semidirect-product pairs, dicyclic pairs,
permutations, Pauli words).  The per-order counts follow the classical
classification of small groups; tests only machine-check pairwise
non-isomorphism and orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, UnsupportedError
from .groups import FiniteGroup, build_from_generators, direct_product, group_from_elements

CATALOG_MAX = 16

EXPECTED_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                   11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}


def cyclic(n: int, label: str | None = None) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([[0]], label=label or "triv")
    return group_from_elements([1], lambda a, b: (a + b) % n, 0, label=label or f"Z{n}", cap=n)


def metacyclic(m: int, n: int, r: int, label: str) -> FiniteGroup:
    """Z_m ⋊ Z_n where the generator of Z_n acts by multiplication by r."""
    if pow(r, n, m) != 1 % m:
        raise DomainError(f"{r} has no order dividing {n} mod {m}")

    def mul(x, y):
        return ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % n)

    return group_from_elements([(1, 0), (0, 1)], mul, (0, 0), label=label, cap=m * n)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n (symmetries of an n-gon)."""
    return metacyclic(n, 2, -1 % n, f"D{n}")


def dicyclic(n: int, label: str) -> FiniteGroup:
    """<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>, order 4n."""
    m = 2 * n

    def mul(p, q):
        (k1, j1), (k2, j2) = p, q
        if j1 == 0:
            return ((k1 + k2) % m, j2)
        if j2 == 0:
            return ((k1 - k2) % m, 1)
        return ((k1 - k2 + n) % m, 0)

    return group_from_elements([(1, 0), (0, 1)], mul, (0, 0), label=label, cap=4 * n)


def _sg16_3() -> FiniteGroup:
    # (Z4 x Z2) ⋊ Z2, the Z2 acting by (x, y) -> (x, x + y)
    def act(c, v):
        return v if c == 0 else (v[0], (v[0] + v[1]) % 2)

    def mul(p, q):
        (v1, c1), (v2, c2) = p, q
        w = act(c1, v2)
        return (((v1[0] + w[0]) % 4, (v1[1] + w[1]) % 2), (c1 + c2) % 2)

    gens = [((1, 0), 0), ((0, 1), 0), ((0, 0), 1)]
    return group_from_elements(gens, mul, ((0, 0), 0), label="(Z4xZ2):Z2", cap=16)


def _pauli() -> FiniteGroup:
    # i^k X^x Z^z ; Z X = -X Z
    def mul(p, q):
        (k1, x1, z1), (k2, x2, z2) = p, q
        return ((k1 + k2 + 2 * z1 * x2) % 4, x1 ^ x2, z1 ^ z2)

    return group_from_elements([(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul, (0, 0, 0),
                               label="Pauli", cap=16)


def _a4() -> FiniteGroup:
    return build_from_generators(4, [(1, 2, 0, 3), (1, 0, 3, 2)], label="A4")


def _s3() -> FiniteGroup:
    return build_from_generators(3, [(1, 2, 0), (1, 0, 2)], label="S3")


def _prod(*names: str, label: str) -> Callable[[], FiniteGroup]:
    def build():
        g = catalog_group(names[0])
        for nm in names[1:]:
            g = direct_product(g, catalog_group(nm))
        g.label = label
        return g
    return build


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    build: Callable[[], FiniteGroup]
    small_id: tuple[int, int]
    aliases: tuple[str, ...] = ()


def _c(n, sid, aliases=()):
    return CatalogEntry(f"Z{n}" if n > 1 else "triv", n, lambda: cyclic(n), (n, sid), aliases)


ENTRIES: tuple[CatalogEntry, ...] = (
    _c(1, 1, ("Z1", "1", "trivial")),
    _c(2, 1, ("C2",)),
    _c(3, 1, ("C3",)),
    _c(4, 1, ("C4",)),
    CatalogEntry("Z2xZ2", 4, _prod("Z2", "Z2", label="Z2xZ2"), (4, 2), ("V4", "Z2^2")),
    _c(5, 1),
    _c(6, 2, ("Z3xZ2",)),
    CatalogEntry("S3", 6, _s3, (6, 1), ("D3",)),
    _c(7, 1),
    _c(8, 1),
    CatalogEntry("Z4xZ2", 8, _prod("Z4", "Z2", label="Z4xZ2"), (8, 2), ("Z2xZ4",)),
    CatalogEntry("D4", 8, lambda: dihedral(4), (8, 3)),
    CatalogEntry("Q8", 8, lambda: dicyclic(2, "Q8"), (8, 4)),
    CatalogEntry("Z2^3", 8, _prod("Z2", "Z2", "Z2", label="Z2^3"), (8, 5), ("Z2xZ2xZ2",)),
    _c(9, 1),
    CatalogEntry("Z3xZ3", 9, _prod("Z3", "Z3", label="Z3xZ3"), (9, 2), ("Z3^2",)),
    CatalogEntry("D5", 10, lambda: dihedral(5), (10, 1)),
    _c(10, 2),
    _c(11, 1),
    CatalogEntry("Dic3", 12, lambda: dicyclic(3, "Dic3"), (12, 1), ("Z3:Z4",)),
    _c(12, 2),
    CatalogEntry("A4", 12, _a4, (12, 3)),
    CatalogEntry("D6", 12, lambda: dihedral(6), (12, 4)),
    CatalogEntry("Z6xZ2", 12, _prod("Z6", "Z2", label="Z6xZ2"), (12, 5), ("Z2xZ6",)),
    _c(13, 1),
    CatalogEntry("D7", 14, lambda: dihedral(7), (14, 1)),
    _c(14, 2),
    _c(15, 1),
    _c(16, 1),
    CatalogEntry("Z4xZ4", 16, _prod("Z4", "Z4", label="Z4xZ4"), (16, 2)),
    CatalogEntry("(Z4xZ2):Z2", 16, _sg16_3, (16, 3)),
    CatalogEntry("Z4:Z4", 16, lambda: metacyclic(4, 4, 3, "Z4:Z4"), (16, 4)),
    CatalogEntry("Z8xZ2", 16, _prod("Z8", "Z2", label="Z8xZ2"), (16, 5), ("Z2xZ8",)),
    CatalogEntry("M16", 16, lambda: metacyclic(8, 2, 5, "M16"), (16, 6)),
    CatalogEntry("D8", 16, lambda: dihedral(8), (16, 7)),
    CatalogEntry("SD16", 16, lambda: metacyclic(8, 2, 3, "SD16"), (16, 8)),
    CatalogEntry("Q16", 16, lambda: dicyclic(4, "Q16"), (16, 9)),
    CatalogEntry("Z4xZ2xZ2", 16, _prod("Z4", "Z2", "Z2", label="Z4xZ2xZ2"), (16, 10)),
    CatalogEntry("D4xZ2", 16, _prod("D4", "Z2", label="D4xZ2"), (16, 11)),
    CatalogEntry("Q8xZ2", 16, _prod("Q8", "Z2", label="Q8xZ2"), (16, 12)),
    CatalogEntry("Pauli", 16, _pauli, (16, 13), ("D4oZ4",)),
    CatalogEntry("Z2^4", 16, _prod("Z2", "Z2", "Z2", "Z2", label="Z2^4"), (16, 14)),
)

_BY_NAME = {}
for _e in ENTRIES:
    for _n in (_e.name,) + _e.aliases:
        _BY_NAME[_n.lower()] = _e

_BUILT: dict[str, FiniteGroup] = {}


def catalog_names() -> list[str]:
    return [e.name for e in ENTRIES]


def entry(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name.strip().lower()]
    except KeyError:
        raise DomainError(f"unknown catalog group {name!r}") from None


def catalog_group(name: str) -> FiniteGroup:
    """The (shared, cached) catalog representative called ``name``."""
    e = entry(name)
    if e.name not in _BUILT:
        g = e.build()
        g.label = e.name
        assert g.order == e.order, e.name
        _BUILT[e.name] = g
    return _BUILT[e.name]


def small_groups_catalog(max_order: int = CATALOG_MAX) -> list[FiniteGroup]:
    if max_order > CATALOG_MAX:
        raise UnsupportedError(f"catalog only covers orders up to {CATALOG_MAX}")
    if max_order < 1:
        raise DomainError("max_order must be positive")
    return [catalog_group(e.name) for e in ENTRIES if e.order <= max_order]
