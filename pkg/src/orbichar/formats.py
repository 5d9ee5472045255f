"""Text grammar for group and source specs, and the JSON/CSV file formats.

Group names (finite groups)::

    name    := catalog name (case-insensitive, e.g. triv, Z2xZ2, S3, D4, Q8, Pauli)
             | Zn | Zn^k | Sn | Dn | factor ('x' factor)*

``Dn`` is dihedral of order ``2n``.  Source specs additionally allow the
factors ``Z`` (infinite cyclic), ``Z^k`` (free abelian of rank k) and
``pres:{gens: ...; rels: ...}``; ``x`` at top level (outside brackets) is the
direct product.

Group file::

    {"name": str, "degree": int, "generators": [[int, ...], ...]}
    {"name": str, "table": [[int, ...], ...]}

G-set file (``action[point][element] = element · point``)::

    {"group": <name or inline group spec>, "size": int, "action": [[int, ...], ...]}

Ring element file, sorted by (group order, canonical key)::

    [{"group": <name or inline group spec>, "coeff": int}, ...]

Values file for reconstruction (values are ints or "p/q" strings)::

    {"max_order": int, "values": {<group name>: value, ...}}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .catalog import CATALOG_MAX, catalog_group, cyclic, dihedral, small_groups_catalog
from .errors import DomainError
from .groups import FiniteGroup, build_from_generators, direct_product
from .gset import GSet, coset_space, point, regular
from .homs import Finite, FreeAbelian, parse_presentation, spec_product
from .iso import CanonicalKey, canonical_key, canonical_table, fingerprint, key_order
from .ring import RingElement, register, representative


def split_top_level(text: str, sep: str = "x") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return cyclic(1)
    gens = [tuple(list(range(1, n)) + [0]), tuple([1, 0] + list(range(2, n)))]
    return build_from_generators(n, gens, label=f"S{n}")


def parse_group(text: str) -> FiniteGroup:
    """A finite group from a name in the grammar above."""
    text = text.strip()
    try:
        return catalog_group(text)
    except DomainError:
        pass
    parts = split_top_level(text)
    if len(parts) > 1:
        g = parse_group(parts[0])
        for p in parts[1:]:
            g = direct_product(g, parse_group(p))
        g.label = text
        return g
    m = re.fullmatch(r"Z(\d+)\^(\d+)", text)
    if m:
        g = cyclic(int(m.group(1)))
        out = g
        for _ in range(int(m.group(2)) - 1):
            out = direct_product(out, g)
        out.label = text
        return out
    m = re.fullmatch(r"([ZSD])(\d+)", text)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise DomainError(f"bad group name {text!r}")
        if kind == "Z":
            return cyclic(n)
        if kind == "S":
            return _symmetric(n)
        return dihedral(n) if n > 2 else direct_product(cyclic(2), cyclic(n), label=text)
    raise DomainError(f"unknown group {text!r}")


def parse_source(text: str):
    """A finitely generated source spec from the grammar above."""
    text = text.strip()
    try:
        return Finite(catalog_group(text))
    except DomainError:
        pass
    out = None
    for part in split_top_level(text):
        if part == "Z":
            spec = FreeAbelian(1)
        elif re.fullmatch(r"Z\^\d+", part):
            spec = FreeAbelian(int(part[2:]))
        elif part.startswith("pres:"):
            body = part[5:].strip()
            if body.startswith("{") and body.endswith("}"):
                body = body[1:-1]
            spec = parse_presentation(body)
        elif not part:
            raise DomainError(f"empty factor in {text!r}")
        else:
            spec = Finite(parse_group(part))
        out = spec if out is None else spec_product(out, spec)
    return out


# -- groups --------------------------------------------------------------

def group_from_spec(spec) -> FiniteGroup:
    if isinstance(spec, str):
        return parse_group(spec)
    if not isinstance(spec, dict):
        raise DomainError("group spec must be a name or an object")
    name = spec.get("name")
    if "table" in spec:
        return FiniteGroup(spec["table"], label=name)
    if "generators" in spec:
        return build_from_generators(int(spec["degree"]), spec["generators"], label=name)
    if name:
        return parse_group(name)
    raise DomainError("group spec needs 'table' or 'degree'+'generators'")


def group_to_spec(g: FiniteGroup) -> dict:
    return {"name": g.name, "table": [list(r) for r in g.table]}


def class_name(key: CanonicalKey) -> str | None:
    """Catalog name of an isomorphism class, if it is in the catalog."""
    n = key_order(key)
    if n > CATALOG_MAX:
        return None
    fp = fingerprint(representative(key))
    for g in small_groups_catalog(n):
        if g.order == n and fingerprint(g) == fp and canonical_key(g) == key:
            return g.name
    return None


def key_ref(key: CanonicalKey):
    name = class_name(key)
    if name is not None:
        return name
    return {"name": f"G{key_order(key)}", "table": canonical_table(key)}


# -- G-sets --------------------------------------------------------------

def gset_from_spec(spec: dict) -> GSet:
    g = group_from_spec(spec["group"])
    action = spec["action"]
    if len(action) != int(spec["size"]):
        raise DomainError("size does not match the action array")
    return GSet(g, action)


def gset_to_spec(x: GSet) -> dict:
    try:
        same = catalog_group(x.group.name) is x.group
    except DomainError:
        same = False
    return x.to_spec(x.group.name if same else group_to_spec(x.group))


def parse_gset(text: str) -> GSet:
    """``point:NAME``, ``regular:NAME``, ``cosets:NAME:i`` (``G/K`` for the
    i-th subgroup class) or a path to a G-set JSON file."""
    m = re.fullmatch(r"(point|regular|cosets):([^:]+)(?::(\d+))?", text.strip())
    if m:
        g = parse_group(m.group(2))
        if m.group(1) == "point":
            return point(g)
        if m.group(1) == "regular":
            return regular(g)
        from .groups import subgroup_classes

        classes = subgroup_classes(g)
        i = int(m.group(3) or 0)
        if not 0 <= i < len(classes):
            raise DomainError(f"subgroup class index {i} out of range (0..{len(classes) - 1})")
        return coset_space(g, classes[i].canonical)
    with open(text) as fh:
        return gset_from_spec(json.load(fh))


# -- ring elements -------------------------------------------------------

def ring_to_json(r: RingElement) -> list[dict]:
    return [{"group": key_ref(k), "coeff": v} for k, v in r.items()]


def ring_from_json(data: list) -> RingElement:
    out = RingElement()
    for item in data:
        out = out + RingElement({register(group_from_spec(item["group"])): int(item["coeff"])})
    return out


def format_ring(r: RingElement) -> str:
    if r.is_zero():
        return "0"
    terms = []
    for k, v in r.items():
        name = class_name(k) or f"G{key_order(k)}"
        terms.append(f"{v}*T[{name}]")
    return " + ".join(terms).replace("+ -", "- ")


# -- values ----------------------------------------------------------------

def fraction_str(q: Fraction) -> str:
    return str(Fraction(q))


def parse_fraction(v) -> Fraction:
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise DomainError(f"bad value {v!r}")


def values_from_json(data: dict) -> tuple[dict, int | None]:
    vals = {}
    for name, v in data["values"].items():
        vals[canonical_key(catalog_group(name))] = parse_fraction(v)
    return vals, data.get("max_order")


def values_to_json(values: dict, max_order: int) -> dict:
    out = {}
    for k, v in values.items():
        out[class_name(k)] = fraction_str(v)
    return {"max_order": max_order, "values": out}


def dumps(obj) -> str:
    """Deterministic JSON."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


__all__ = ["parse_group", "parse_source", "parse_gset", "group_from_spec", "group_to_spec",
           "gset_from_spec", "gset_to_spec", "ring_to_json", "ring_from_json", "format_ring",
           "values_from_json", "values_to_json", "dumps", "class_name", "key_ref",
           "parse_fraction", "fraction_str", "split_top_level"]
