"""The ring R: integer combinations of isomorphism classes of finite groups,
multiplied by direct product; and the universal Euler characteristic."""

from __future__ import annotations

import threading
from typing import Iterable, Iterator, Mapping

from .errors import LIMITS, CapExceeded, DomainError
from .groups import FiniteGroup, Homomorphism, direct_product, subgroup_classes
from .gset import GSet, induce
from .iso import CanonicalKey, canonical_key, canonical_table, krull_schmidt_factors, sort_key

_REPS: dict[CanonicalKey, FiniteGroup] = {}
_reps_lock = threading.Lock()


def register(g: FiniteGroup) -> CanonicalKey:
    """Canonical key of ``g``, remembering ``g`` as the class representative
    if none is known yet."""
    key = canonical_key(g)
    with _reps_lock:
        _REPS.setdefault(key, g)
    return key


def representative(key: CanonicalKey) -> FiniteGroup:
    with _reps_lock:
        g = _REPS.get(key)
    if g is None:
        g = FiniteGroup(canonical_table(key))
        with _reps_lock:
            g = _REPS.setdefault(key, g)
    return g


class RingElement:
    """Finite sum ``Σ a_K T^K`` over isomorphism classes ``K``.

    Stored as a mapping from canonical key to nonzero integer; iteration is
    in (group order, key bytes) order.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[CanonicalKey, int] | None = None):
        items = {}
        for k, v in (coeffs or {}).items():
            v = int(v)
            if v:
                items[bytes(k)] = v
        self._coeffs = dict(sorted(items.items(), key=lambda kv: sort_key(kv[0])))

    @classmethod
    def T(cls, g: FiniteGroup, coeff: int = 1) -> "RingElement":
        return cls({register(g): coeff})

    @classmethod
    def zero(cls) -> "RingElement":
        return cls()

    @classmethod
    def one(cls) -> "RingElement":
        return cls({register(FiniteGroup([[0]], label="triv")): 1})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[FiniteGroup, int]]) -> "RingElement":
        out = cls()
        for g, c in terms:
            out = out + cls.T(g, c)
        return out

    def items(self) -> Iterator[tuple[CanonicalKey, int]]:
        return iter(self._coeffs.items())

    def keys(self):
        return self._coeffs.keys()

    def coefficient(self, g: FiniteGroup | CanonicalKey) -> int:
        key = g if isinstance(g, bytes) else canonical_key(g)
        return self._coeffs.get(key, 0)

    def total(self) -> int:
        return sum(self._coeffs.values())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        return isinstance(other, RingElement) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __add__(self, other: "RingElement") -> "RingElement":
        d = dict(self._coeffs)
        for k, v in other._coeffs.items():
            d[k] = d.get(k, 0) + v
        return RingElement(d)

    def __neg__(self) -> "RingElement":
        return RingElement({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "RingElement":
        if not isinstance(n, int):
            return NotImplemented
        return RingElement({k: n * v for k, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return ring_mul(self, other)

    def __repr__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k, v in self._coeffs.items():
            parts.append(f"{v:+d}*T[{representative(k).name}]")
        return " ".join(parts)


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


_PRODUCT_MEMO: dict[tuple[bytes, bytes], bytes] = {}


def _key_product(k1: CanonicalKey, k2: CanonicalKey, cap: int) -> CanonicalKey:
    pair = (k1, k2) if k1 <= k2 else (k2, k1)
    if pair not in _PRODUCT_MEMO:
        g1, g2 = representative(pair[0]), representative(pair[1])
        if g1.order * g2.order > cap:
            raise CapExceeded(f"product of orders {g1.order}·{g2.order} exceeds order cap {cap}")
        _PRODUCT_MEMO[pair] = register(direct_product(g1, g2))
    return _PRODUCT_MEMO[pair]


def ring_mul(a: RingElement, b: RingElement, cap: int | None = None) -> RingElement:
    """Convolution: ``T^G1 · T^G2 = T^(G1 × G2)``."""
    cap = LIMITS.order_cap if cap is None else cap
    d: dict[bytes, int] = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = _key_product(k1, k2, cap)
            d[k] = d.get(k, 0) + v1 * v2
    return RingElement(d)


def universal_euler(x: GSet) -> RingElement:
    """Σ over subgroup classes [K] of (#orbits with isotropy in [K]) · T^K."""
    g = x.group
    classes = subgroup_classes(g)
    cls_of = {}
    for i, cls in enumerate(classes):
        for m in cls.masks():
            cls_of[m] = i
    counts: dict[int, int] = {}
    for orb in x.orbits():
        i = cls_of[x.isotropy(orb[0]).mask]
        counts[i] = counts.get(i, 0) + 1
    d: dict[bytes, int] = {}
    for i, n in counts.items():
        key = register(classes[i].canonical.as_group()[0])
        d[key] = d.get(key, 0) + n
    return RingElement(d)


def relation_check_additivity(x: GSet, y: Iterable[int]) -> bool:
    """χ^un(X) = χ^un(Y) + χ^un(X∖Y) for an invariant subset Y."""
    ys = set(y)
    rest = set(range(x.size)) - ys
    return universal_euler(x) == universal_euler(x.subset(ys)) + universal_euler(x.subset(rest))


def relation_check_induction(x: GSet, h: FiniteGroup, embedding: Homomorphism) -> bool:
    return universal_euler(x) == universal_euler(induce(x, h, embedding))


Monomial = tuple[tuple[CanonicalKey, int], ...]


def polynomial_view(a: RingElement) -> dict[Monomial, int]:
    """Rewrite every ``T^G`` as the monomial in indecomposable classes given
    by the Krull-Schmidt factors of ``G``."""
    out: dict[Monomial, int] = {}
    for k, v in a.items():
        factors = krull_schmidt_factors(representative(k))
        mono: dict[bytes, int] = {}
        for f in factors:
            mono[f] = mono.get(f, 0) + 1
        m = tuple(sorted(mono.items(), key=lambda kv: sort_key(kv[0])))
        out[m] = out.get(m, 0) + v
    return out


def from_polynomial(poly: Mapping[Monomial, int]) -> RingElement:
    out = RingElement()
    for mono, v in poly.items():
        term = RingElement.one()
        for key, e in mono:
            if e < 0:
                raise DomainError("negative exponent")
            for _ in range(e):
                term = term * RingElement({key: 1})
        out = out + v * term
    return out
