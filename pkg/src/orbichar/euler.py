"""Generalized orbifold Euler characteristics of finite G-sets.

All values are exact ``Fraction``s.  On a finite set with the discrete
topology the Euler characteristic of any fixed-point set is its size.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, IntegralityError
from .groups import FiniteGroup, Subgroup, bits, centralizer, conjugacy_classes, direct_product, popcount
from .gset import GSet, point, product
from .homs import FreeAbelian, HomSet, ProductWithFree, enumerate_homs, orbit_partition
from .ring import RingElement, representative


def _fixed_count(x: GSet, homs: HomSet, i: int) -> int:
    return popcount(x.fixed_mask(homs.generator_images(i)))


def chi_A_direct(a, x: GSet, budget: int | None = None) -> Fraction:
    """(1/|G|) Σ_{φ ∈ Hom(A, G)} |X^{φ(A)}|"""
    homs = enumerate_homs(a, x.group, budget)
    total = sum(_fixed_count(x, homs, i) for i in range(len(homs)))
    val = Fraction(total, x.group.order)
    if a.has_free_factor and val.denominator != 1:
        raise IntegralityError(f"chi^({a.label}) = {val} is not an integer")
    return val


def chi_A_recursive(a1, a2, x: GSet, budget: int | None = None) -> Fraction:
    """Σ over conjugacy classes [φ] in Hom(A1, G) of
    χ^(A2)(X^{φ(A1)}, C_G(φ(A1)))."""
    g = x.group
    homs = enumerate_homs(a1, g, budget)
    total = Fraction(0)
    for orb in orbit_partition(homs, "inner"):
        i = orb[0]
        img = homs.generator_images(i)
        cent = centralizer(g, img)
        pts = bits(x.fixed_mask(img))
        total += chi_A_direct(a2, x.restrict(cent, pts), budget)
    return total


def chi_higher_order(k: int, x: GSet, form: str = "averaged") -> Fraction:
    """Order-k orbifold Euler characteristic.

    ``averaged``: commuting (k+1)-tuples, i.e. χ^(Z^{k+1}).  ``recurrent``:
    Σ_{[g] ∈ Conj G} χ^(k-1)(X^<g>, C_G(g)), bottoming out at k = -1.
    k = -1 uses the empty-tuple reading χ(X)/|G| (the Euler-Satake value).
    """
    if k < -1:
        raise DomainError("order must be >= -1")
    if k == -1:
        return Fraction(x.size, x.group.order)
    if form == "averaged":
        return chi_A_direct(FreeAbelian(k + 1), x)
    if form != "recurrent":
        raise DomainError(f"unknown form {form!r}")
    g = x.group
    total = Fraction(0)
    for cls in conjugacy_classes(g):
        r = cls[0]
        cent = Subgroup(g, g.centralizer_mask(r))
        total += chi_higher_order(k - 1, x.restrict(cent, bits(x.fix_masks[r])), "recurrent")
    return total


def chi_orb(x: GSet) -> Fraction:
    return chi_higher_order(1, x)


def euler_satake(x: GSet) -> Fraction:
    return chi_higher_order(-1, x)


@lru_cache(maxsize=65536)
def _chi_on_point(a, key: bytes) -> Fraction:
    return chi_A_direct(a, point(representative(key)))


def chi_A_on_ring(a, r: RingElement) -> Fraction:
    """Linear extension of T^G -> χ^(A)(G/G, G) = |Hom(A, G)| / |G|."""
    return sum((v * _chi_on_point(a, k) for k, v in r.items()), Fraction(0))


def multiplicativity_check(a, x1: GSet, x2: GSet) -> bool:
    prod = product(x1, x2, direct_product(x1.group, x2.group))
    return chi_A_direct(a, prod) == chi_A_direct(a, x1) * chi_A_direct(a, x2)


def additivity_check(a, x: GSet, y) -> bool:
    ys = set(y)
    rest = set(range(x.size)) - ys
    return chi_A_direct(a, x) == chi_A_direct(a, x.subset(ys)) + chi_A_direct(a, x.subset(rest))


def times_Z(finite: FiniteGroup):
    """The source spec A'×Z for a finite A' (plain Z when A' is trivial)."""
    return FreeAbelian(1) if finite.order == 1 else ProductWithFree(finite, 1)
