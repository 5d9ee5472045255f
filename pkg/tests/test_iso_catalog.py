from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from orbichar.catalog import EXPECTED_COUNTS, catalog_group, catalog_names, cyclic, small_groups_catalog
from orbichar.errors import DomainError, UnsupportedError
from orbichar.groups import FiniteGroup, direct_product
from orbichar.iso import (are_isomorphic, canonical_key, canonical_table, is_indecomposable,
                          isomorphism, key_order, krull_schmidt_factors)

PER_ORDER = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]
ALL = small_groups_catalog(16)


def test_catalog_sizes():
    counts = Counter(g.order for g in ALL)
    assert [counts[n] for n in range(1, 17)] == PER_ORDER
    assert len(small_groups_catalog(1)) == 1
    assert len(small_groups_catalog(8)) == 14
    # sum of the per-order counts up to 12
    assert len(small_groups_catalog(12)) == 24
    assert [EXPECTED_COUNTS[n] for n in range(1, 17)] == PER_ORDER


def test_catalog_limits_and_lookup():
    with pytest.raises(UnsupportedError):
        small_groups_catalog(17)
    with pytest.raises(DomainError):
        catalog_group("nope")
    assert catalog_group("s3") is catalog_group("S3")
    assert len(catalog_names()) == 42


def test_catalog_pairwise_distinct_by_profile():
    for a, b in combinations(ALL, 2):
        if a.order == b.order:
            assert oracles.element_profile(a.table) != oracles.element_profile(b.table), (a.name, b.name)


def test_catalog_pairwise_distinct_by_iso_search():
    for a, b in combinations(ALL, 2):
        assert not are_isomorphic(a, b)
        assert canonical_key(a) != canonical_key(b)


@pytest.mark.parametrize("a,b", [(x, y) for x, y in combinations(small_groups_catalog(8), 2)
                                 if x.order == y.order], ids=lambda g: g.name)
def test_small_distinct_by_bijection_oracle(a, b):
    assert not oracles.brute_isomorphic(a.table, b.table)


def test_iso_examples():
    z6, z2, z3 = cyclic(6), cyclic(2), cyclic(3)
    z2z3 = direct_product(z2, z3)
    assert are_isomorphic(z6, z6)
    assert are_isomorphic(z6, z2z3) and oracles.brute_isomorphic(z6.table, z2z3.table)
    assert not are_isomorphic(cyclic(4), catalog_group("Z2xZ2"))
    assert not oracles.brute_isomorphic(cyclic(4).table, catalog_group("Z2xZ2").table)
    assert canonical_key(z6) == canonical_key(z2z3)
    assert canonical_key(cyclic(4)) != canonical_key(catalog_group("Z2xZ2"))
    assert key_order(canonical_key(catalog_group("triv"))) == 1


@pytest.mark.parametrize("g", ALL, ids=lambda g: g.name)
def test_canonical_table_roundtrip(g):
    k = canonical_key(g)
    assert isinstance(k, bytes) and key_order(k) == g.order
    h = FiniteGroup(canonical_table(k))
    assert canonical_key(h) == k
    phi = isomorphism(g, h)
    assert phi is not None and phi.is_valid() and phi.is_bijective()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([g for g in ALL if g.order <= 12]), st.randoms(use_true_random=False))
def test_relabelling_invariance(g, rnd):
    perm = list(range(1, g.order))
    rnd.shuffle(perm)
    h = FiniteGroup(oracles.relabel(g.table, [0] + perm))
    assert canonical_key(h) == canonical_key(g)
    phi = isomorphism(g, h)
    assert phi.is_valid() and phi.is_bijective()


def test_krull_schmidt_examples():
    z2, z3, z4 = (canonical_key(cyclic(n)) for n in (2, 3, 4))
    assert sorted(krull_schmidt_factors(cyclic(6))) == sorted([z2, z3])
    assert krull_schmidt_factors(cyclic(4)) == (z4,)
    assert krull_schmidt_factors(catalog_group("S3")) == (canonical_key(catalog_group("S3")),)
    assert krull_schmidt_factors(catalog_group("triv")) == ()
    assert sorted(krull_schmidt_factors(catalog_group("Z2^4"))) == [z2] * 4
    assert is_indecomposable(catalog_group("Q8")) and not is_indecomposable(catalog_group("Q8xZ2"))


@pytest.mark.parametrize("a,b", [("Z2", "S3"), ("Z4", "Z2xZ2"), ("Z3", "Z4"), ("S3", "Z2"),
                                 ("Q8", "Z2"), ("D4", "Z2"), ("Z6", "Z2")])
def test_krull_schmidt_of_product_is_union(a, b):
    ga, gb = catalog_group(a), catalog_group(b)
    p = direct_product(ga, gb)
    assert sorted(krull_schmidt_factors(p)) == sorted(krull_schmidt_factors(ga) + krull_schmidt_factors(gb))


@pytest.mark.parametrize("g", ALL, ids=lambda g: g.name)
def test_krull_schmidt_factors_multiply_back(g):
    from orbichar.ring import representative

    keys = krull_schmidt_factors(g)
    prod = catalog_group("triv")
    for k in keys:
        assert is_indecomposable(representative(k))
        prod = direct_product(prod, representative(k))
    assert canonical_key(prod) == canonical_key(g)
