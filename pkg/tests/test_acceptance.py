"""Acceptance criteria 1-10, one test each.

Every test records a ``[PASS]``/``[FAIL]`` line; the lines are printed at the
end of the run under "acceptance criteria".
"""

import random
from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

import oracles
from orbichar.catalog import catalog_group, cyclic, small_groups_catalog
from orbichar.errors import LIMITS
from orbichar.euler import chi_A_direct, chi_A_on_ring, chi_A_recursive, chi_higher_order
from orbichar.groups import conjugacy_classes
from orbichar.gset import induce, point, regular
from orbichar.harness import (build_matrices, coset_gsets, forward_values, nested_pairs,
                              random_gset, reconstruct, universal_from_chi, universe)
from orbichar.homs import (Finite, FreeAbelian, Omega, ProductWithFree, hom_decomposition_report,
                           presentation_product, to_presentation)
from orbichar.iso import are_isomorphic
from orbichar.linalg import rank
from orbichar.ring import RingElement, universal_euler

SEED = 20240601
PER_ORDER = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]
INDUCTION_SPECS = [FreeAbelian(1), FreeAbelian(2), ProductWithFree(catalog_group("Z2"), 1),
                   ProductWithFree(catalog_group("S3"), 1)]


def _induction_matrix():
    """(H, G, X, Ind X) over nested catalog pairs with |H| <= 12 and coset X."""
    out = []
    for h, g, emb in nested_pairs(12):
        for x in coset_gsets(g):
            y = induce(x, h, emb, cap=LIMITS.gset_cap)
            assert y.size <= LIMITS.gset_cap
            out.append((h, g, x, y))
    return out


@pytest.mark.criterion(1, "catalog integrity: per-order counts, pairwise non-isomorphic")
def test_criterion_1_catalog(criterion):
    groups = small_groups_catalog(16)
    counts = Counter(g.order for g in groups)
    assert [counts[n] for n in range(1, 17)] == PER_ORDER
    pairs = [(a, b) for a, b in combinations(groups, 2) if a.order == b.order]
    for a, b in pairs:
        assert oracles.element_profile(a.table) != oracles.element_profile(b.table)
        assert not are_isomorphic(a, b)
    criterion.note(f"{len(groups)} groups, {len(pairs)} same-order pairs separated")


@pytest.mark.criterion(2, "averaged and recurrent chi^(k) agree, k in {0,1,2}")
def test_criterion_2_higher_order_forms(criterion):
    rng = random.Random(SEED)
    groups = small_groups_catalog(12)
    checks = 0
    for g in groups:
        sets = [regular(g)] + coset_gsets(g)
        for x in sets:
            for k in (0, 1, 2):
                assert chi_higher_order(k, x, "averaged") == chi_higher_order(k, x, "recurrent")
                checks += 1
    for _ in range(20):
        g = rng.choice(groups)
        x = random_gset(g, rng, max_orbits=3)
        for k in (0, 1, 2):
            assert chi_higher_order(k, x, "averaged") == chi_higher_order(k, x, "recurrent")
            checks += 1
    criterion.note(f"{checks} comparisons")


@pytest.mark.criterion(3, "chi^(0) = orbit count, chi^(1)(point) = #conjugacy classes")
def test_criterion_3_orbit_and_class_counts(criterion):
    rng = random.Random(SEED + 3)
    checks = 0
    for g in small_groups_catalog(12):
        assert chi_higher_order(1, point(g)) == len(oracles.conj_classes(g.table)) == len(conjugacy_classes(g))
        for x in [point(g), regular(g), random_gset(g, rng, 4)] + coset_gsets(g):
            assert chi_higher_order(0, x) == oracles.burnside_orbits(x.action, g.order)
            checks += 1
    criterion.note(f"{checks} G-sets")


def _product_source(a1, a2):
    if a1.order * a2.order <= LIMITS.order_cap:
        from orbichar.groups import direct_product

        return Finite(direct_product(a1, a2))
    return presentation_product(to_presentation(Finite(a1)), to_presentation(Finite(a2)))


@pytest.mark.criterion(4, "recursive chi^(A1xA2) = direct, |A_i| <= 6, targets <= 8")
def test_criterion_4_recursion(criterion):
    sources = small_groups_catalog(6)
    targets = small_groups_catalog(8)
    checks = 0
    for a1 in sources:
        for a2 in sources:
            prod = _product_source(a1, a2)
            for g in targets:
                for x in coset_gsets(g):
                    assert chi_A_recursive(Finite(a1), Finite(a2), x) == chi_A_direct(prod, x)
                    checks += 1
    criterion.note(f"{checks} comparisons")


@pytest.mark.criterion(5, "induction: chi^(A)(X,G) = chi^(A)(Ind_G^H X, H), |H| <= 12")
def test_criterion_5_induction(criterion):
    checks = 0
    for h, g, x, y in _induction_matrix():
        for a in INDUCTION_SPECS:
            assert chi_A_direct(a, x) == chi_A_direct(a, y)
            checks += 1
    criterion.note(f"{checks} comparisons")


@pytest.mark.criterion(6, "factoring through R: chi^(A)(X) = chi^(A)(chi^un(X))")
def test_criterion_6_ring_factoring(criterion):
    checks = 0
    for h, g, x, y in _induction_matrix():
        for z in (x, y):
            u = universal_euler(z)
            for a in INDUCTION_SPECS:
                assert chi_A_direct(a, z) == chi_A_on_ring(a, u)
                checks += 1
    criterion.note(f"{checks} comparisons")


@pytest.mark.criterion(7, "|Rep_w(A,B)| = sum_K |FRep_w(A/K,B)|, |A|,|B| <= 8, all w")
def test_criterion_7_rep_decomposition(criterion):
    groups = small_groups_catalog(8)
    checks = 0
    for a in groups:
        for b in groups:
            rep = hom_decomposition_report(a, b)
            for w in Omega:
                lhs, rhs = rep[w.value]
                assert lhs == rhs
                checks += 1
            assert rep["hom"][0] == rep["hom"][1]
    criterion.note(f"{checks} identities")


@pytest.mark.criterion(8, "moment matrix full rank: 14 (order <= 8), 28 (order <= 15)")
def test_criterion_8_full_rank(criterion):
    n8, _ = build_matrices(8)
    assert len(n8.universe) == 14
    assert rank(n8.rows()) == 14 == sympy.Matrix(n8.rows()).rank()
    n15, _ = build_matrices(15)
    assert len(n15.universe) == 28
    assert rank(n15.rows()) == 28 == sympy.Matrix(n15.rows()).rank()
    criterion.note("rank 14/14, 28/28")


@pytest.mark.criterion(9, "main theorem round trip: reconstruct(forward(r)) = r; chi-to-chi^un")
def test_criterion_9_round_trip(criterion):
    rng = random.Random(SEED + 9)
    u = universe(8)
    for _ in range(50):
        support = rng.sample(range(len(u)), rng.randint(1, len(u)))
        r = RingElement({u.keys[i]: rng.randint(-5, 5) for i in support})
        assert reconstruct(forward_values(r, 8), 8) == r
    groups = small_groups_catalog(8)
    for _ in range(20):
        x = random_gset(rng.choice(groups), rng, max_orbits=4)
        assert universal_from_chi(x, 8) == universal_euler(x)
    criterion.note("50 ring elements, 20 G-sets")


@pytest.mark.criterion(10, "integrality with a Z factor; chi^(-1)(point,G) = 1/|G|")
def test_criterion_10_integrality(criterion):
    checks = 0
    for h, g, x, y in _induction_matrix():
        for z in (x, y):
            for a in INDUCTION_SPECS:
                assert chi_A_direct(a, z).denominator == 1
                checks += 1
    for g in small_groups_catalog(16):
        assert chi_higher_order(-1, point(g)) == Fraction(1, g.order)
    criterion.note(f"{checks} values integral")
