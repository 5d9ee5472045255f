import random

import pytest
from hypothesis import given, settings, strategies as st

from orbichar.catalog import catalog_group, cyclic, small_groups_catalog
from orbichar.errors import CapExceeded
from orbichar.groups import all_subgroups, direct_product, subgroup_classes
from orbichar.gset import GSet, coset_space, point, regular
from orbichar.harness import random_gset
from orbichar.iso import canonical_key
from orbichar.ring import (RingElement, from_polynomial, polynomial_view, relation_check_additivity,
                           relation_check_induction, ring_add, ring_mul, universal_euler)

T = RingElement.T
S3 = catalog_group("S3")
Z2, Z3 = cyclic(2), cyclic(3)


def test_unit_and_zero():
    a = 2 * T(Z2) - T(S3)
    assert ring_add(a, RingElement.zero()) == a
    assert a * RingElement.one() == a
    assert RingElement.one() == T(catalog_group("triv"))
    assert (a - a).is_zero()


def test_products():
    assert T(Z2) * T(Z3) == T(cyclic(6))
    v = T(Z2) * T(Z2)
    assert v == T(catalog_group("Z2xZ2")) and v != T(cyclic(4))
    with pytest.raises(CapExceeded):
        ring_mul(T(catalog_group("D4")), T(catalog_group("Q8")), cap=24)


def test_coefficients_and_order():
    r = T(S3) + 3 * T(Z2) - T(catalog_group("triv"))
    assert r.coefficient(Z2) == 3 and r.coefficient(cyclic(2)) == 3
    assert r.total() == 3
    # iteration runs by increasing group order
    assert [v for _, v in r.items()] == [-1, 3, 1]


def test_universal_euler_examples():
    assert universal_euler(point(S3)) == T(S3)
    assert universal_euler(regular(S3)) == T(catalog_group("triv"))
    k = min(s for s in all_subgroups(S3) if s.order == 2)
    assert universal_euler(coset_space(S3, k)) == T(Z2)
    assert universal_euler(regular(Z2)) == T(catalog_group("triv"))


@pytest.mark.parametrize("g", small_groups_catalog(12), ids=lambda g: g.name)
def test_universal_euler_total_is_orbit_count(g):
    x = random_gset(g, random.Random(7 * g.order), max_orbits=4)
    assert universal_euler(x).total() == len(x.orbits())
    for cls in subgroup_classes(g):
        gk, _ = cls.canonical.as_group()
        assert universal_euler(coset_space(g, cls.canonical)) == T(gk)


def test_relations():
    x = regular(S3)
    assert relation_check_additivity(x, [])
    assert relation_check_additivity(x, range(6))
    k = min(s for s in all_subgroups(S3) if s.order == 2)
    g, emb = k.as_group()
    assert relation_check_induction(point(g), S3, emb)
    assert universal_euler(point(g)) == T(Z2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(small_groups_catalog(12)), st.integers(0, 10**6))
def test_additivity_on_orbit_unions(g, seed):
    rng = random.Random(seed)
    x = random_gset(g, rng, max_orbits=4)
    orbs = x.orbits()
    chosen = [p for o in orbs if rng.random() < 0.5 for p in o]
    assert relation_check_additivity(x, chosen)


def test_polynomial_view():
    z2, z3, z4 = (canonical_key(cyclic(n)) for n in (2, 3, 4))
    assert polynomial_view(T(cyclic(6))) == {tuple(sorted([(z2, 1), (z3, 1)])): 1}
    assert polynomial_view(T(cyclic(4))) == {((z4, 1),): 1}
    assert polynomial_view(RingElement.one()) == {(): 1}
    r = 2 * T(catalog_group("Z2xZ2")) - T(S3) + T(cyclic(12))
    assert from_polynomial(polynomial_view(r)) == r


def _elements(max_order):
    return st.lists(st.tuples(st.sampled_from(small_groups_catalog(max_order)), st.integers(-3, 3)),
                    max_size=3)


# factor orders bounded so triple products stay within the default order cap
@settings(max_examples=30, deadline=None)
@given(_elements(3), _elements(3), _elements(2))
def test_ring_axioms(a, b, c):
    a, b, c = (RingElement.from_terms(t) for t in (a, b, c))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


def test_product_of_gsets_gives_product_in_ring():
    from orbichar.gset import product

    k = min(s for s in all_subgroups(S3) if s.order == 2)
    x = coset_space(S3, k)
    y = regular(Z3)
    xy = product(x, y, direct_product(S3, Z3))
    assert universal_euler(xy) == universal_euler(x) * universal_euler(y)
    empty = GSet(S3, [])
    assert universal_euler(empty).is_zero()
