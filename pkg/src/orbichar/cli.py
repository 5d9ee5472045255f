"""Command line interface.

Exit codes: 0 success / all checks pass, 1 a verification failed, 2 usage
or input error, 3 order cap or enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import formats
from .catalog import small_groups_catalog
from .errors import BudgetExceeded, CapExceeded, OrbicharError, set_limits
from .euler import chi_A_direct, chi_A_on_ring, chi_A_recursive
from .groups import all_subgroups, conjugacy_classes, normal_subgroups, subgroup_classes
from .homs import (Finite, FreeAbelian, Omega, ProductWithFree, enumerate_homs,
                   rep_count)
from .iso import canonical_key, isomorphism, krull_schmidt_factors
from .ring import universal_euler

OK, FAILED, USAGE, LIMIT = 0, 1, 2, 3


@dataclass
class RunConfig:
    order_cap: int
    budget: int
    omega: Omega
    fmt: str
    seed: int
    out: str | None


class UsageError(Exception):
    pass


def _emit(cfg: RunConfig, payload: dict, rows: list[list] | None = None, text: str | None = None):
    if cfg.fmt == "json":
        s = formats.dumps(payload)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows or [[k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v]
                          for k, v in sorted(payload.items())]:
            w.writerow(r)
        s = buf.getvalue()
    else:
        s = (text if text is not None else "\n".join(f"{k}: {v}" for k, v in sorted(payload.items()))) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(s)
    else:
        sys.stdout.write(s)


# -- groups ------------------------------------------------------------------

def cmd_groups(cfg: RunConfig, args) -> int:
    if args.action == "list":
        if args.order is not None:
            groups = [g for g in small_groups_catalog(min(args.order, 16)) if g.order == args.order]
        else:
            groups = small_groups_catalog(args.max_order or 16)
        rows = [[g.name, g.order, int(g.is_abelian()), len(conjugacy_classes(g))] for g in groups]
        payload = {"groups": [{"name": r[0], "order": r[1], "abelian": bool(r[2]), "classes": r[3]}
                              for r in rows]}
        text = "\n".join(f"{r[0]:<12} order {r[1]:>2}  classes {r[3]}" for r in rows)
        _emit(cfg, payload, [["name", "order", "abelian", "classes"]] + rows, text)
        return OK
    if args.action == "show":
        if len(args.names) != 1:
            raise UsageError("groups show takes one group")
        g = formats.parse_group(args.names[0])
        factors = [formats.class_name(k) or f"G{int.from_bytes(k[:4], 'big')}"
                   for k in krull_schmidt_factors(g)]
        payload = {
            "name": g.name,
            "order": g.order,
            "table": [list(r) for r in g.table],
            "conjugacy_classes": conjugacy_classes(g),
            "subgroup_orders": [s.order for s in all_subgroups(g)],
            "subgroup_classes": [[c.subgroup_order, len(c)] for c in subgroup_classes(g)],
            "normal_subgroup_orders": [s.order for s in normal_subgroups(g)],
            "krull_schmidt": factors,
            "key": canonical_key(g).hex(),
        }
        _emit(cfg, payload)
        return OK
    if args.action == "iso":
        if len(args.names) != 2:
            raise UsageError("groups iso takes two groups")
        a, b = (formats.parse_group(n) for n in args.names)
        phi = isomorphism(a, b)
        payload = {"a": args.names[0], "b": args.names[1], "isomorphic": phi is not None,
                   "witness": list(phi.images) if phi else None}
        _emit(cfg, payload, [["a", "b", "isomorphic"], [args.names[0], args.names[1], phi is not None]],
              "true" if phi else "false")
        return OK
    raise UsageError(f"unknown groups action {args.action}")


# -- homs ----------------------------------------------------------------------

def cmd_hom(cfg: RunConfig, args) -> int:
    src = formats.parse_source(args.source)
    tgt = formats.parse_group(args.target)
    if args.action == "count":
        value = len(enumerate_homs(src, tgt, cfg.budget))
    else:
        value = rep_count(src, tgt, cfg.omega, cfg.budget)
    payload = {"action": args.action, "source": args.source, "target": args.target, "value": value}
    if args.action == "orbits":
        payload["omega"] = cfg.omega.value
    _emit(cfg, payload, [["source", "target", args.action], [args.source, args.target, value]], str(value))
    return OK


# -- chi -------------------------------------------------------------------------

def _split_for_recursion(a):
    """A = A1 × A2 split used by the recursive mode."""
    if isinstance(a, ProductWithFree):
        return Finite(a.finite), FreeAbelian(a.rank)
    if isinstance(a, FreeAbelian) and a.rank >= 1:
        return FreeAbelian(1), FreeAbelian(a.rank - 1)
    return a, FreeAbelian(0)


def chi_value(a, x, mode: str, budget: int | None = None) -> Fraction:
    if mode == "direct":
        return chi_A_direct(a, x, budget)
    if mode == "recursive":
        a1, a2 = _split_for_recursion(a)
        return chi_A_recursive(a1, a2, x, budget)
    if mode == "ring":
        return chi_A_on_ring(a, universal_euler(x))
    raise UsageError(f"unknown mode {mode}")


def cmd_chi(cfg: RunConfig, args) -> int:
    a = formats.parse_source(args.source)
    x = formats.parse_gset(args.gset)
    modes = ["direct", "recursive", "ring"] if args.mode == "all" else [args.mode]
    values = {m: chi_value(a, x, m, cfg.budget) for m in modes}
    agree = len(set(values.values())) == 1
    payload = {"source": args.source, "gset": args.gset, "group": x.group.name, "size": x.size,
               "values": {m: formats.fraction_str(v) for m, v in values.items()}, "agree": agree}
    rows = [["A", "group", "gset", "mode", "value"]]
    rows += [[args.source, x.group.name, args.gset, m, formats.fraction_str(v)] for m, v in values.items()]
    _emit(cfg, payload, rows, " ".join(formats.fraction_str(v) for v in values.values()))
    return OK if agree else FAILED


# -- verify ---------------------------------------------------------------------

def cmd_verify(cfg: RunConfig, args) -> int:
    from . import harness

    m = args.max_order
    if args.what == "theorem":
        report = harness.verify_vanishing_theorem(m, cfg.omega)
    elif args.what == "reduction":
        report = harness.verify_reduction_lemma(m, cfg.omega, trials=args.trials, seed=cfg.seed)
    elif args.what == "lemma-decomp":
        report = harness.verify_lemma_decomp(m)
    elif args.what == "induction":
        report = harness.verify_induction(m)
    elif args.what == "multiplicativity":
        report = harness.verify_multiplicativity(m)
    else:
        raise UsageError(f"unknown check {args.what}")
    report = {"check": args.what, "seed": cfg.seed, **report}
    verdict = "pass" if report["passed"] else "FAIL"
    summary = f"{args.what} max_order={m}: {verdict}"
    if "rank" in report:
        summary += f" (rank {report['rank']} of {report['columns']})"
    _emit(cfg, report, text=summary)
    return OK if report["passed"] else FAILED


# -- reconstruct -------------------------------------------------------------

def cmd_reconstruct(cfg: RunConfig, args) -> int:
    from . import harness

    if args.from_gset:
        x = formats.parse_gset(args.from_gset)
        values = harness.chi_values(x, args.max_order)
        max_order = args.max_order
    elif args.values:
        with open(args.values) as fh:
            values, file_order = formats.values_from_json(json.load(fh))
        max_order = file_order or args.max_order
    else:
        raise UsageError("give a values file or --from-gset")
    r = harness.reconstruct(values, max_order)
    payload = formats.ring_to_json(r)
    if cfg.fmt == "json":
        s = formats.dumps(payload)
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(s)
        else:
            sys.stdout.write(s)
    else:
        rows = [["group", "coeff"]] + [[e["group"] if isinstance(e["group"], str) else json.dumps(e["group"]),
                                        e["coeff"]] for e in payload]
        _emit(cfg, {"element": payload}, rows, formats.format_ring(r))
    return OK


def cmd_forward(cfg: RunConfig, args) -> int:
    """Values file ``χ^(A'×Z)(r)`` for a ring element file (inverse of reconstruct)."""
    from . import harness

    with open(args.ring) as fh:
        r = formats.ring_from_json(json.load(fh))
    _emit(cfg, formats.values_to_json(harness.forward_values(r, args.max_order), args.max_order))
    return OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order-cap", type=int, default=24, help="largest constructed group order")
    common.add_argument("--budget", type=int, default=10**7, help="homomorphism search node budget")
    common.add_argument("--omega", default="inner", choices=["trivial", "inner", "aut"])
    common.add_argument("--format", default="json", choices=["json", "csv", "text"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output to FILE")

    p = argparse.ArgumentParser(prog="orbichar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("groups", parents=[common], help="inspect the catalog")
    g.add_argument("action", choices=["list", "show", "iso"])
    g.add_argument("names", nargs="*")
    g.add_argument("--order", type=int)
    g.add_argument("--max-order", type=int)
    g.set_defaults(func=cmd_groups)

    h = sub.add_parser("hom", parents=[common], help="count homomorphisms or their orbits")
    h.add_argument("action", choices=["count", "orbits"])
    h.add_argument("source")
    h.add_argument("target")
    h.set_defaults(func=cmd_hom)

    c = sub.add_parser("chi", parents=[common], help="evaluate chi^(A) on a G-set")
    c.add_argument("source")
    c.add_argument("gset", help="G-set JSON file, or point:NAME / regular:NAME / cosets:NAME:i")
    c.add_argument("--mode", default="direct", choices=["direct", "recursive", "ring", "all"])
    c.set_defaults(func=cmd_chi)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("what", choices=["lemma-decomp", "reduction", "theorem", "induction",
                                    "multiplicativity"])
    v.add_argument("--max-order", type=int, default=8)
    v.add_argument("--trials", type=int, default=100)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reconstruct", parents=[common], help="recover chi^un from chi^(A'xZ) values")
    r.add_argument("values", nargs="?")
    r.add_argument("--from-gset")
    r.add_argument("--max-order", type=int, default=8)
    r.set_defaults(func=cmd_reconstruct)

    f = sub.add_parser("forward", parents=[common], help="chi^(A'xZ) values of a ring element file")
    f.add_argument("ring")
    f.add_argument("--max-order", type=int, default=8)
    f.set_defaults(func=cmd_forward)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.order_cap, args.budget, Omega.parse(args.omega), args.format, args.seed, args.out)
    try:
        set_limits(order_cap=cfg.order_cap, budget=cfg.budget)
        return args.func(cfg, args)
    except (CapExceeded, BudgetExceeded) as e:
        print(f"orbichar: {e}", file=sys.stderr)
        return LIMIT
    except (UsageError, OrbicharError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"orbichar: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
