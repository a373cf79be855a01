"""Command line front end.

Exit codes: 0 success, 1 mathematical failure or mismatch, 2 usage error,
3 resource cap exceeded.  JSON output is deterministic for a fixed
configuration (sorted keys, no timings).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .algebra import (AlgebraError, check_filling_span, check_star_decomposition, group_algebra,
                      idempotent_generating, split_quaternion_algebra, surgery_plan, upper_triangular_algebra)
from .config import RunConfig
from .groups import DescriptorError, GroupOrderError, _is_prime, element_label, make_named_group
from .linalg import FactorBoundError
from .parsing import build_module, idempotent_source, module_ideal, parse_relation, parse_stabilizer
from .regulator import SUPPORTED_PRIMES, RegulatorError, biggroup, pairing_classes, regulator_constant_trivial
from .relations import LocalWitness, RelationError, is_Q_relation, zq_witness
from .repmod import RepresentationError, character_from_json
from .reproduce import SCOPE_STATEMENT, all_pass, run_suite
from .surfaces import ArtinError, NotRealizable, RamificationData, recover_ramification, surface_character

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _primes(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    bad = [n for n in out if not _is_prime(n)]
    if bad:
        raise argparse.ArgumentTypeError(f"not prime: {bad}")
    return out


def _factor_primes(text: str) -> tuple[int, ...]:
    out = _primes(text)
    if not out or any(p not in SUPPORTED_PRIMES for p in out):
        raise argparse.ArgumentTypeError(f"primes must be a nonempty subset of {SUPPORTED_PRIMES}")
    return out


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--max-group-order", type=int, default=RunConfig.max_group_order)
    p.add_argument("--direct-eval-cap", type=int, default=RunConfig.direct_eval_cap)
    p.add_argument("--witness-budget", type=int, default=RunConfig.witness_budget)
    p.add_argument("--factor-bound", type=int, default=RunConfig.factor_bound)
    p.add_argument("--q-list", type=_primes, default=RunConfig().q_list)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gassmann", description="Exact checks on group algebras, "
                                     "permutation-module relations and regulator constants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("idempotent", parents=[common], help="check Q[G] = Q[G]e (+) Q[G](1-e*)")
    p.add_argument("--group", default="gl2(3)")
    p.add_argument("--source", default="ideal:I3",
                   help="averaging:<subgroup> | conjugated:<subgroup>:<seed> | ideal:<module>")
    p.add_argument("--algebra", choices=("group", "split-quaternion", "upper-triangular"), default="group")

    p = sub.add_parser("regulator", parents=[common], help="regulator constants")
    p.add_argument("--primes", type=_factor_primes, help="product-group pipeline over the given primes")
    p.add_argument("--relation", help="explicit relation, e.g. \"up - up' @ gl2(3)\"")
    p.add_argument("--module", help="module on the relation's group, e.g. I3 or I3+trivial")

    p = sub.add_parser("relation", parents=[common], help="Q-relation check and local witnesses")
    p.add_argument("relation", help="\"LHS - RHS @ group\"")
    p.add_argument("--group", help="group when the relation has no '@' part")

    p = sub.add_parser("surgery", parents=[common], help="winding numbers and homology ledger")
    p.add_argument("--group", default="gl2(3)")
    p.add_argument("--module", default="I3")

    p = sub.add_parser("surface", parents=[common], help="surface characters")
    p.add_argument("mode", choices=("char", "recover"))
    p.add_argument("--group")
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--stab", action="append", default=[],
                   help="stabilizer: class name (e.g. C2#1) or subgroup descriptor, optional :count")
    p.add_argument("--character", help="comma-separated class values (recover mode)")
    p.add_argument("--input", help="JSON file with the same fields as the flags")

    sub.add_parser("reproduce", parents=[common], help="run the full reproduction suite")
    return parser


def _config(args) -> RunConfig:
    try:
        return RunConfig(seed=args.seed, format=args.format, max_group_order=args.max_group_order,
                         direct_eval_cap=args.direct_eval_cap, witness_budget=args.witness_budget,
                         factor_bound=args.factor_bound, q_list=tuple(args.q_list))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands -----------------------------------------------------------------------------------


def cmd_idempotent(args, cfg: RunConfig) -> tuple[dict, int]:
    if args.algebra == "split-quaternion":
        A = split_quaternion_algebra()
        e, label = A.basis(0), "E11"
    elif args.algebra == "upper-triangular":
        A = upper_triangular_algebra()
        e, label = A.basis(0), "E11"
    else:
        G = make_named_group(args.group, cfg.max_group_order)
        e, label = idempotent_source(G, args.source), args.source
        A = e.algebra
    result = check_star_decomposition(e)
    result.update(algebra=A.name, source=label, idempotent=e.to_json())
    return result, EXIT_OK


def cmd_regulator(args, cfg: RunConfig) -> tuple[dict, int]:
    if args.primes:
        rep = biggroup(args.primes, cfg.q_list, cfg.pairing_seeds, cfg.direct_eval_cap, cfg.witness_budget,
                       cfg.seed, cfg.factor_bound, cfg.max_group_order)
        out = rep.to_json()
        out["pairing_seeds"] = list(cfg.pairing_seeds)
        return out, EXIT_OK if rep.agrees else EXIT_MATH
    if not (args.relation and args.module):
        raise UsageError("regulator needs --primes, or both --relation and --module")
    theta = parse_relation(args.relation, max_order=cfg.max_group_order)
    if not is_Q_relation(theta):
        raise RelationError(f"{theta} is not a Q-relation")
    V = build_module(theta.group, args.module)
    classes = {k: v.value for k, v in pairing_classes(theta, V, cfg.pairing_seeds, cfg.factor_bound).items()}
    out = {"group": theta.group.name, "relation": str(theta), "module": V.label, "dim": V.dim,
           "classes": classes, "pairing_independent": len(set(classes.values())) == 1,
           "trivial_module_class": regulator_constant_trivial(theta, cfg.factor_bound).value,
           "pairing_seeds": list(cfg.pairing_seeds)}
    return out, EXIT_OK if out["pairing_independent"] else EXIT_MATH


def cmd_relation(args, cfg: RunConfig) -> tuple[dict, int]:
    theta = parse_relation(args.relation, args.group, cfg.max_group_order)
    qrel = is_Q_relation(theta)
    out = {"group": theta.group.name, "relation": str(theta), "q_relation": qrel, "witnesses": []}
    if not qrel:
        out["witness_search"] = "refused: not a Q-relation"
        return out, EXIT_OK
    for q in cfg.q_list:
        w = zq_witness(theta, q, cfg.witness_budget, cfg.seed)
        entry = w.to_json()
        entry["status"] = "witness" if isinstance(w, LocalWitness) else "inconclusive"
        out["witnesses"].append(entry)
    out["note"] = "local relations checked only for the listed primes; inconclusive is not a refutation"
    return out, EXIT_OK


def cmd_surgery(args, cfg: RunConfig) -> tuple[dict, int]:
    G = make_named_group(args.group, cfg.max_group_order)
    V = build_module(G, args.module)
    A = group_algebra(G)
    e = idempotent_generating(module_ideal(V, cfg.seed), A)
    plan = surgery_plan(G, e)
    out = {
        "group": G.name,
        "module": V.label,
        "dim": V.dim,
        "label": "algebraic bookkeeping only - no geometry computed",
        "denominator": plan.denominator,
        "winding_numbers": [[element_label(G, g), n] for g, n in enumerate(plan.winding_numbers)],
        "reconstructs": plan.reconstructs(),
        "filling_span": check_filling_span(G, e),
        "homology_ledger": [{k: ([str(Fraction(x)) for x in v] if k == "character" else v)
                             for k, v in row.items()} for row in plan.homology_ledger],
        "notes": plan.notes,
        "idempotent": e.to_json(),
    }
    ok = out["reconstructs"] and out["filling_span"]
    return out, EXIT_OK if ok else EXIT_MATH


def _load_input(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("surface input must be a JSON object")
    return data


def cmd_surface(args, cfg: RunConfig) -> tuple[dict, int]:
    data = _load_input(args.input)
    gdesc = data.get("group", args.group)
    if not gdesc:
        raise UsageError("surface needs --group (or 'group' in the input file)")
    G = make_named_group(gdesc, cfg.max_group_order)
    if args.mode == "char":
        genus = int(data.get("genus", args.genus))
        stabs = []
        for s in data.get("stabilizers", args.stab):
            stabs.extend(parse_stabilizer(G, s))
        rd = RamificationData(genus, tuple(stabs)).canonical()
        chi = surface_character(G, rd)
        return {"group": G.name, "input": rd.to_json(), "character": chi.to_json()}, EXIT_OK
    raw = data.get("character", args.character)
    if raw is None:
        raise UsageError("recover needs --character or 'character' in the input file")
    values = raw.split(",") if isinstance(raw, str) else [str(v) for v in raw]
    try:
        chi = character_from_json(G, [v.strip() for v in values])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    res = recover_ramification(G, chi)
    out = {"group": G.name, "character": chi.to_json()}
    if isinstance(res, NotRealizable):
        out.update(realizable=False, reason=res.reason)
    else:
        out.update(realizable=True, **res.to_json())
    return out, EXIT_OK


def cmd_reproduce(args, cfg: RunConfig) -> tuple[dict, int]:
    rows = run_suite(cfg)
    out = {"claims": [r.to_json() for r in rows], "all_pass": all_pass(rows), "scope": SCOPE_STATEMENT,
           "counts": {v: sum(r.verdict == v for r in rows) for v in ("pass", "fail", "inconclusive", "error", "scope")}}
    return out, EXIT_OK if out["all_pass"] else EXIT_MATH


COMMANDS = {
    "idempotent": (cmd_idempotent, ["star-decomposition"]),
    "regulator": (cmd_regulator, ["regulator-Ip", "regulator-I2", "product-group", "local-witness"]),
    "relation": (cmd_relation, ["q-relation", "local-witness"]),
    "surgery": (cmd_surgery, ["surgery-plan"]),
    "surface": (cmd_surface, ["surface-round-trip"]),
    "reproduce": (cmd_reproduce, ["all"]),
}


# -- rendering ------------------------------------------------------------------------------------


def envelope(command: str, cfg: RunConfig, result: dict, status: str) -> dict:
    return {"artifact": "gassmann", "version": __version__, "command": command, "config": cfg.to_json(),
            "anchors": COMMANDS.get(command, (None, []))[1], "status": status, "result": result}


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            flat = isinstance(v, list) and all(isinstance(x, (int, str, bool)) for x in v)
            nested = isinstance(v, dict) or (isinstance(v, list) and not flat)
            if nested and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render_table(result: dict) -> str:
    rows = [("claim", "expected", "computed", "verdict")]
    for r in result["claims"]:
        computed = r["computed"] if isinstance(r["computed"], str) else json.dumps(r["computed"], sort_keys=True)
        rows.append((r["claim"], json.dumps(r["expected"], sort_keys=True), computed[:70], r["verdict"]))
    widths = [max(len(str(row[i])) for row in rows) for i in range(3)]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(row[:3], widths)) + "  " + row[3] for row in rows]
    lines.append("")
    lines.append("scope: " + result["scope"])
    return "\n".join(lines)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    if doc["command"] == "reproduce" and "claims" in doc["result"]:
        head = f"gassmann {doc['version']} reproduce (seed {doc['config']['seed']})"
        return head + "\n" + render_table(doc["result"])
    return "\n".join(_text(doc))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
    except UsageError as exc:
        print(f"gassmann: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fn = COMMANDS[args.command][0]
    try:
        result, code = fn(args, cfg)
    except GroupOrderError as exc:
        return _fail(args.command, cfg, "cap exceeded", exc, EXIT_CAP)
    except (UsageError, DescriptorError, argparse.ArgumentTypeError) as exc:
        print(f"gassmann: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FactorBoundError, AlgebraError, RepresentationError, RelationError, RegulatorError, ArtinError,
            ArithmeticError, AssertionError) as exc:
        return _fail(args.command, cfg, "mathematical failure", exc, EXIT_MATH)
    status = "ok" if code == EXIT_OK else "mismatch"
    print(render(envelope(args.command, cfg, result, status), cfg.format))
    return code


def _fail(command: str, cfg: RunConfig, status: str, exc: Exception, code: int) -> int:
    doc = envelope(command, cfg, {"error": f"{type(exc).__name__}: {exc}"}, status)
    print(render(doc, cfg.format))
    print(f"gassmann: {status}: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
