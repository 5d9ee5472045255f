"""Machine checks of the counting lemmas and the reconstruction of χ^un
from the χ^(A'×Z) values.

The universe of order ``m`` is the catalog restricted to orders ``<= m``,
sorted by (order, canonical key).  Rows of every matrix are source groups
``A'`` and columns are target classes ``G``, both in universe order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .catalog import catalog_group, small_groups_catalog
from .errors import DomainError, IntegralityError
from .euler import chi_A_direct, chi_A_on_ring, times_Z
from .groups import (FiniteGroup, Homomorphism, direct_product, normal_subgroups, quotient,
                     subgroup_classes)
from .gset import GSet, coset_space, disjoint_union, induce, product
from .homs import (Finite, FreeAbelian, Omega, ProductWithFree, frep_count,
                   hom_decomposition_report, rep_count)
from .iso import CanonicalKey, canonical_key, sort_key
from .linalg import kernel_basis, mat_vec, rank, solve
from .ring import RingElement, register, ring_mul, universal_euler


@dataclass(frozen=True)
class Universe:
    groups: tuple[FiniteGroup, ...]
    keys: tuple[CanonicalKey, ...]

    def __len__(self):
        return len(self.groups)

    def index(self, key: CanonicalKey) -> int:
        try:
            return self.keys.index(key)
        except ValueError:
            raise DomainError("group class outside the universe") from None

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.groups]


@lru_cache(maxsize=None)
def universe(max_order: int) -> Universe:
    pairs = sorted(((register(g), g) for g in small_groups_catalog(max_order)),
                   key=lambda kg: sort_key(kg[0]))
    return Universe(tuple(g for _, g in pairs), tuple(k for k, _ in pairs))


@dataclass(frozen=True)
class CountMatrix:
    universe: Universe
    omega: Omega
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


class MomentMatrix(CountMatrix):
    """``N[A'][G] = |Rep_ω(A', G)|``"""


class FrepMatrix(CountMatrix):
    """``F[A'][G] = |FRep_ω(A', G)|``"""


@dataclass(frozen=True)
class QuotientCounts:
    """``Z[A][B]`` = number of normal ``K ⊴ A`` with ``A/K ≅ B``."""

    entries: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def quotient_counts(max_order: int) -> QuotientCounts:
    u = universe(max_order)
    rows = []
    for a in u.groups:
        row = [0] * len(u)
        for k in normal_subgroups(a):
            row[u.index(canonical_key(quotient(a, k)[0]))] += 1
        rows.append(tuple(row))
    return QuotientCounts(tuple(rows))


@lru_cache(maxsize=None)
def _build(max_order: int, w: Omega):
    u = universe(max_order)
    n = tuple(tuple(rep_count(Finite(a), g, w) for g in u.groups) for a in u.groups)
    f = tuple(tuple(frep_count(Finite(a), g, w) for g in u.groups) for a in u.groups)
    return MomentMatrix(u, w, n), FrepMatrix(u, w, f)


def build_matrices(max_order: int, w="inner") -> tuple[MomentMatrix, FrepMatrix]:
    return _build(max_order, Omega.parse(w))


def decomposition_consistent(n: MomentMatrix, f: FrepMatrix) -> bool:
    """Entrywise ``N[A][G] = Σ_{K⊴A} F[A/K][G]``."""
    z = quotient_counts(_max_order_of(n.universe)).entries
    size = len(n.universe)
    return all(n[a, j] == sum(z[a][b] * f[b, j] for b in range(size))
               for a in range(size) for j in range(size))


def _max_order_of(u: Universe) -> int:
    return max(g.order for g in u.groups)


def frep_triangular(f: FrepMatrix) -> bool:
    """No monomorphism from a later universe group into an earlier one."""
    size = len(f.universe)
    return all(f[j, i] == 0 for i in range(size) for j in range(i + 1, size))


def verify_vanishing_theorem(max_order: int, w="inner") -> dict:
    n, f = build_matrices(max_order, w)
    size = len(n.universe)
    r = rank(n.rows())
    diag = [f[i, i] for i in range(size)]
    report = {
        "max_order": max_order,
        "omega": Omega.parse(w).value,
        "columns": size,
        "rank": r,
        "full_rank": r == size,
        "frep_rank": rank(f.rows()),
        "frep_triangular": frep_triangular(f),
        "frep_diagonal": diag,
        "diagonal_nonzero": all(d >= 1 for d in diag),
        "decomposition_consistent": decomposition_consistent(n, f),
    }
    report["passed"] = all(report[k] for k in ("full_rank", "frep_triangular",
                                                "diagonal_nonzero", "decomposition_consistent"))
    return report


def verify_reduction_lemma(max_order: int, w="inner", trials: int = 100, seed: int = 0) -> dict:
    """For integer vectors ``a``: ``N·a = 0`` iff ``F·a = 0``.

    Random vectors exercise the full universe.  Because the full matrices
    are nonsingular, the lemma is also checked on every quotient-closed row
    set ``{A : |A| <= m}``, where kernels are nontrivial: each kernel vector
    of one truncated matrix must lie in the kernel of the other.
    """
    n, f = build_matrices(max_order, w)
    size = len(n.universe)
    rng = random.Random(seed)
    vectors = [[0] * size] + [[rng.randint(-3, 3) for _ in range(size)] for _ in range(trials)]
    counterexamples = []
    for v in vectors:
        nz = not any(mat_vec(n.rows(), v))
        fz = not any(mat_vec(f.rows(), v))
        if nz != fz:
            counterexamples.append(v)
    truncated = []
    orders = sorted({g.order for g in n.universe.groups})
    for m in orders[:-1]:
        rows = [i for i, g in enumerate(n.universe.groups) if g.order <= m]
        nr = [n.entries[i] for i in rows]
        fr = [f.entries[i] for i in rows]
        kn, kf = kernel_basis(nr), kernel_basis(fr)
        ok = (all(not any(mat_vec(fr, v)) for v in kn)
              and all(not any(mat_vec(nr, v)) for v in kf)
              and len(kn) == len(kf))
        truncated.append({"row_max_order": m, "kernel_dim": len(kn), "ok": ok})
        if not ok:
            counterexamples.append({"row_max_order": m})
    return {
        "max_order": max_order,
        "omega": Omega.parse(w).value,
        "seed": seed,
        "vectors": len(vectors),
        "truncated": truncated,
        "counterexamples": counterexamples,
        "passed": not counterexamples,
    }


def _normalize_values(values: Mapping, u: Universe) -> list[Fraction]:
    by_key: dict[bytes, Fraction] = {}
    for k, v in values.items():
        if isinstance(k, FiniteGroup):
            k = canonical_key(k)
        elif isinstance(k, str):
            k = canonical_key(catalog_group(k))
        by_key[bytes(k)] = Fraction(v)
    extra = set(by_key) - set(u.keys)
    if extra:
        raise DomainError(f"{len(extra)} value(s) for groups outside the universe")
    missing = [u.groups[i].name for i, k in enumerate(u.keys) if k not in by_key]
    if missing:
        raise DomainError(f"missing values for {', '.join(missing)}")
    return [by_key[k] for k in u.keys]


def reconstruct(values: Mapping, max_order: int) -> RingElement:
    """The unique ``r`` in R supported on classes of order ``<= max_order``
    with ``χ^(A'×Z)(r) = values[A']`` for every universe group ``A'``.

    Keys of ``values`` may be canonical keys, catalog names or groups.
    """
    u = universe(max_order)
    rhs = _normalize_values(values, u)
    n, _ = build_matrices(max_order, Omega.INNER)
    sol = solve(n.rows(), rhs)
    bad = [(u.groups[i].name, s) for i, s in enumerate(sol) if s.denominator != 1]
    if bad:
        raise IntegralityError(f"non-integral coefficients {bad}")
    return RingElement({k: int(s) for k, s in zip(u.keys, sol)})


def forward_values(r: RingElement, max_order: int) -> dict[CanonicalKey, Fraction]:
    """``χ^(A'×Z)(r)`` for every universe group ``A'``, evaluated through R."""
    u = universe(max_order)
    return {k: chi_A_on_ring(times_Z(g), r) for k, g in zip(u.keys, u.groups)}


def chi_values(x: GSet, max_order: int) -> dict[CanonicalKey, Fraction]:
    """``χ^(A'×Z)(X, G)`` by direct enumeration over Hom(A'×Z, G)."""
    u = universe(max_order)
    return {k: chi_A_direct(times_Z(g), x) for k, g in zip(u.keys, u.groups)}


def universal_from_chi(x: GSet, max_order: int) -> RingElement:
    return reconstruct(chi_values(x, max_order), max_order)


# -- test-matrix builders ---------------------------------------------------

def coset_gsets(g: FiniteGroup) -> list[GSet]:
    """``G/K`` for one ``K`` per conjugacy class of subgroups."""
    return [coset_space(g, cls.canonical) for cls in subgroup_classes(g)]


def nested_pairs(max_order: int) -> list[tuple[FiniteGroup, FiniteGroup, Homomorphism]]:
    """``(H, G, G -> H)`` for every catalog ``H`` and subgroup class of it."""
    out = []
    for h in small_groups_catalog(max_order):
        for cls in subgroup_classes(h):
            g, emb = cls.canonical.as_group()
            out.append((h, g, emb))
    return out


def random_gset(g: FiniteGroup, rng: random.Random, max_orbits: int = 3,
                max_size: int | None = None) -> GSet:
    """Disjoint union of 1..max_orbits random coset spaces of ``g``."""
    classes = subgroup_classes(g)
    x = None
    for _ in range(rng.randint(1, max_orbits)):
        k = rng.choice(classes).canonical
        y = coset_space(g, k)
        if max_size is not None and x is not None and x.size + y.size > max_size:
            break
        x = y if x is None else disjoint_union(x, y)
    return x


# -- verification drivers used by the CLI ----------------------------------

def default_induction_specs():
    return [FreeAbelian(1), FreeAbelian(2), ProductWithFree(catalog_group("Z2"), 1),
            ProductWithFree(catalog_group("S3"), 1)]


def verify_lemma_decomp(max_order: int) -> dict:
    """|Hom(A,B)| = Σ_K |Mono(A/K,B)| and its ω-orbit version for all
    catalog ``A, B`` of order ``<= max_order``."""
    groups = small_groups_catalog(max_order)
    failures = []
    checks = 0
    for a in groups:
        for b in groups:
            rep = hom_decomposition_report(a, b)
            checks += len(rep)
            for what, (lhs, rhs) in rep.items():
                if lhs != rhs:
                    failures.append({"A": a.name, "B": b.name, "count": what, "lhs": lhs, "rhs": rhs})
    return {"max_order": max_order, "checks": checks, "failures": failures, "passed": not failures}


def verify_induction(max_order: int, specs=None) -> dict:
    """χ^(A)(X,G) = χ^(A)(Ind_G^H X, H) and χ^un(X,G) = χ^un(Ind X, H) over
    nested catalog pairs and coset G-sets, plus the factorization of each
    χ^(A) through R."""
    specs = specs or default_induction_specs()
    failures = []
    checks = 0
    for h, g, emb in nested_pairs(max_order):
        for x in coset_gsets(g):
            y = induce(x, h, emb)
            ux = universal_euler(x)
            checks += 1
            if ux != universal_euler(y):
                failures.append({"H": h.name, "G_order": g.order, "X_size": x.size, "check": "chi_un"})
            for a in specs:
                lhs, rhs = chi_A_direct(a, x), chi_A_direct(a, y)
                ring = chi_A_on_ring(a, ux)
                checks += 2
                if lhs != rhs or lhs != ring:
                    failures.append({"H": h.name, "G_order": g.order, "X_size": x.size,
                                     "A": a.label, "direct": str(lhs), "induced": str(rhs),
                                     "ring": str(ring)})
    return {"max_order": max_order, "specs": [a.label for a in specs], "checks": checks,
            "failures": failures, "passed": not failures}


def verify_multiplicativity(max_order: int, specs=None, cap: int | None = None) -> dict:
    """χ^(A)(X1×X2, G1×G2) = χ^(A)(X1,G1)·χ^(A)(X2,G2) and the matching
    identity for χ^un, over coset sets of catalog pairs within the cap."""
    from .errors import LIMITS

    cap = LIMITS.order_cap if cap is None else cap
    specs = specs or default_induction_specs()
    groups = small_groups_catalog(max_order)
    failures = []
    checks = 0
    for i, g1 in enumerate(groups):
        for g2 in groups[i:]:
            if g1.order * g2.order > cap:
                continue
            prod = direct_product(g1, g2)
            for x1 in coset_gsets(g1):
                for x2 in coset_gsets(g2):
                    xy = product(x1, x2, prod)
                    checks += 1
                    if universal_euler(xy) != ring_mul(universal_euler(x1), universal_euler(x2), cap):
                        failures.append({"G1": g1.name, "G2": g2.name, "check": "chi_un"})
                    for a in specs:
                        checks += 1
                        if chi_A_direct(a, xy) != chi_A_direct(a, x1) * chi_A_direct(a, x2):
                            failures.append({"G1": g1.name, "G2": g2.name, "A": a.label})
    return {"max_order": max_order, "specs": [a.label for a in specs], "checks": checks,
            "failures": failures, "passed": not failures}
