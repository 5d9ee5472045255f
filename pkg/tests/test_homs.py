import pytest

import oracles
from orbichar.catalog import catalog_group, cyclic, small_groups_catalog
from orbichar.errors import BudgetExceeded, DomainError
from orbichar.groups import direct_product
from orbichar.homs import (Finite, FreeAbelian, Omega, Presentation, ProductWithFree,
                           enumerate_homs, enumerate_monos, format_presentation, frep_count,
                           hom_decomposition_check, hom_decomposition_report,
                           kernels_constant_on_orbits, parse_presentation, rep_count, spec_product,
                           to_presentation)

S3 = catalog_group("S3")
TRIV = catalog_group("triv")
UPTO8 = small_groups_catalog(8)


def test_spec_examples():
    assert len(enumerate_homs(Finite(cyclic(2)), S3)) == 4
    assert len(enumerate_homs(FreeAbelian(2), S3)) == 18
    for a in [Finite(S3), FreeAbelian(3), ProductWithFree(cyclic(2), 1)]:
        assert len(enumerate_homs(a, TRIV)) == 1
        assert rep_count(a, TRIV, "aut") == 1
    assert len(enumerate_monos(Finite(cyclic(3)), S3)) == 2
    assert len(enumerate_monos(Finite(cyclic(2)), cyclic(3))) == 0
    assert rep_count(Finite(cyclic(2)), S3, "inner") == 2
    assert frep_count(Finite(cyclic(2)), cyclic(2), "inner") == 1


def test_free_abelian_rank_zero():
    assert len(enumerate_homs(FreeAbelian(0), S3)) == 1


@pytest.mark.parametrize("g", UPTO8, ids=lambda g: g.name)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_commuting_tuples_match_naive_filter(g, k):
    homs = enumerate_homs(FreeAbelian(k), g)
    got = [homs.generator_images(i) for i in range(len(homs))]
    assert len(got) == len(set(got))
    assert set(got) == set(oracles.commuting_tuples(g.table, k))


@pytest.mark.parametrize("b", small_groups_catalog(6), ids=lambda g: g.name)
@pytest.mark.parametrize("a", small_groups_catalog(6), ids=lambda g: g.name)
def test_finite_homs_match_graph_oracle(a, b):
    homs = enumerate_homs(Finite(a), b)
    gens = a.generators()
    got = {homs.generator_images(i) for i in range(len(homs))}
    assert len(got) == len(homs)
    assert got == set(oracles.homs_via_graphs(a.table, gens, b.table))
    monos = {homs.generator_images(i) for i in range(len(homs)) if homs.homomorphism(i).is_injective()}
    m = enumerate_monos(Finite(a), b)
    assert {m.generator_images(i) for i in range(len(m))} == monos


@pytest.mark.parametrize("b", UPTO8, ids=lambda g: g.name)
def test_product_with_free_matches_naive(b):
    z2 = cyclic(2)
    homs = enumerate_homs(ProductWithFree(z2, 1), b)
    naive = [(x, y) for x in range(b.order) for y in range(b.order)
             if b.table[x][x] == 0 and b.table[x][y] == b.table[y][x]]
    assert {homs.generator_images(i) for i in range(len(homs))} == set(naive)


@pytest.mark.parametrize("b", small_groups_catalog(16), ids=lambda g: g.name)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_cyclic_presentation_agrees_with_finite(n, b):
    p = parse_presentation(f"gens: x; rels: x^{n}")
    assert len(enumerate_homs(p, b)) == len(enumerate_homs(Finite(cyclic(n)), b))
    assert rep_count(p, b, "inner") == rep_count(Finite(cyclic(n)), b, "inner")


@pytest.mark.parametrize("name", ["S3", "Q8", "D4", "Z2xZ2", "A4"])
def test_cayley_presentation_reproduces_hom_counts(name):
    g = catalog_group(name)
    p = to_presentation(Finite(g))
    for b in UPTO8:
        assert len(enumerate_homs(p, b)) == len(enumerate_homs(Finite(g), b))


def test_presentation_parsing():
    p = parse_presentation("gens: a b; rels: a^2, b^3, (a b)^2")
    assert p.ngens == 2 and len(p.relators) == 3
    assert len(enumerate_homs(p, S3)) == len(enumerate_homs(Finite(S3), S3)) == 10
    q = parse_presentation("gens: a b; rels: [a, b]")
    assert len(enumerate_homs(q, S3)) == 18
    eq = parse_presentation("gens: a b; rels: a b = b a")
    assert len(enumerate_homs(eq, S3)) == 18
    assert parse_presentation(format_presentation(p)) == p
    with pytest.raises(DomainError):
        parse_presentation("gens: a; rels: b^2")
    with pytest.raises(DomainError):
        Presentation(1, ((2,),))


def test_spec_product_variants():
    z2 = cyclic(2)
    assert spec_product(FreeAbelian(1), FreeAbelian(2)) == FreeAbelian(3)
    assert spec_product(Finite(z2), FreeAbelian(1)) == ProductWithFree(z2, 1)
    p = spec_product(Finite(z2), Finite(cyclic(3)))
    assert isinstance(p, Finite) and p.group.order == 6
    mixed = spec_product(parse_presentation("gens: x; rels: x^2"), FreeAbelian(1))
    assert len(enumerate_homs(mixed, S3)) == len(enumerate_homs(ProductWithFree(z2, 1), S3))


@pytest.mark.parametrize("name", ["Z2xZ2", "S3", "Z4", "Z6", "Z3", "Z5"])
def test_orbit_counts_against_brute_aut(name):
    b = catalog_group(name)
    auts = oracles.brute_automorphisms(b.table)
    inner = oracles.inner_maps(b.table)
    for a in small_groups_catalog(6):
        homs = enumerate_homs(Finite(a), b)
        tuples = [homs.generator_images(i) for i in range(len(homs))]
        assert rep_count(Finite(a), b, "trivial") == len(tuples)
        assert rep_count(Finite(a), b, "inner") == oracles.orbit_count(b.table, tuples, inner)
        assert rep_count(Finite(a), b, "aut") == oracles.orbit_count(b.table, tuples, auts)


@pytest.mark.parametrize("b", UPTO8, ids=lambda g: g.name)
def test_omega_monotone_and_kernels(b):
    for a in UPTO8:
        t, i, f = (rep_count(Finite(a), b, w) for w in Omega)
        assert t >= i >= f
        assert t == len(enumerate_homs(Finite(a), b))
        for w in Omega:
            assert kernels_constant_on_orbits(a, b, w)


def test_decomposition_examples():
    z4, z2 = cyclic(4), cyclic(2)
    rep = hom_decomposition_report(z4, z2)
    assert rep["inner"] == (2, 2)
    assert [frep_count(Finite(q), z2) for q in (TRIV, z2, z4)] == [1, 1, 0]
    assert hom_decomposition_check(TRIV, S3)
    assert hom_decomposition_report(TRIV, S3)["hom"] == (1, 1)
    assert hom_decomposition_check(S3, S3)
    lhs, rhs = hom_decomposition_report(S3, S3)["inner"]
    assert lhs == rhs == 3


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_homs(FreeAbelian(3), catalog_group("D4"), budget=5)
    with pytest.raises(BudgetExceeded):
        enumerate_homs(Finite(direct_product(S3, cyclic(2))), catalog_group("Q8"), budget=3)


def test_monos_need_finite_source():
    with pytest.raises(DomainError):
        enumerate_monos(FreeAbelian(1), S3)
    with pytest.raises(DomainError):
        Omega.parse("sideways")
