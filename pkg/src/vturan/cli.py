"""Command-line front end: ``vturan <command> ...``.

Exit codes: 0 success, 1 guard violation / infeasible / inexact result,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional, Sequence

from . import chains
from .construct import best_construction, best_construction_size
from .core import MAX_FORMULA_DIM, check_dim, format_set, read_qfam, write_qfam
from .detect import contains_copy, is_free
from .pattern import Pattern, as_out_star, as_path, is_c4, parse_pattern, pattern_info
from .solver import DEFAULT_TIMEOUT, GuardError, exact_exv, export_wcnf


class UsageError(Exception):
    pass


def _pattern(spec: str) -> Pattern:
    try:
        return parse_pattern(spec)
    except OSError as exc:
        raise UsageError(f"cannot read pattern file: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def bounds_for(n: int, p: Pattern) -> dict:
    """Lower bound from the best construction and the best upper bound we know."""
    if not 1 <= n <= MAX_FORMULA_DIM:
        raise GuardError(f"n={n} outside 1..{MAX_FORMULA_DIM}")
    lower, construction = best_construction_size(n, p)
    info = pattern_info(p)
    k, r = as_path(p), as_out_star(p)
    out = {"pattern": str(p), "n": n, "lower": lower, "construction": construction}
    if k is not None and k <= n:
        out.update(upper=chains.formula_pk(n, k), certified=True, upper_method="formula_pk")
    elif construction in ("whole-cube", "drop-empty-set", "first-vertices") or (k is not None and k > n):
        out.update(upper=lower, certified=True, upper_method="trivial")
    elif r == 2:
        out.update(upper=2 ** (n - 1) + 1, certified=True, upper_method="v2_closed_form")
    elif is_c4(p) and n >= 3:
        out.update(upper=chains.formula_pk(n, 3), certified=True, upper_method="c4_closed_form")
    elif info.is_tree and 2 <= info.height <= p.m <= 16:
        out.update(upper=chains.tree_upper_estimate(n, info.height, p.m), certified=False,
                   upper_method="tree_upper_estimate (asymptotic-only)")
    else:
        out.update(upper=2 ** n, certified=True, upper_method="trivial")
    out["exact"] = bool(out["certified"] and out["lower"] == out["upper"])
    return out


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_construct(args) -> int:
    p = _pattern(args.pattern)
    n = check_dim(args.n)
    f, label = best_construction(n, p)
    free = is_free(f, p)
    if args.out:
        write_qfam(f, args.out)
    payload = {"pattern": str(p), "n": n, "construction": label, "size": len(f), "free": free}
    _emit(args, payload, f"{p} n={n} {label}: size {len(f)} ({'free' if free else 'NOT free'})")
    return 0 if free else 1


def _witness_text(p: Pattern, emb) -> str:
    return ", ".join(f"{x}->{format_set(v)}" for x, v in enumerate(emb))


def cmd_check(args) -> int:
    p = _pattern(args.pattern)
    f = read_qfam(args.family)
    if is_free(f, p):
        _emit(args, {"pattern": str(p), "n": f.n, "free": True, "witness": None}, "free")
        return 0
    emb = contains_copy(f, p)
    payload = {"pattern": str(p), "n": f.n, "free": False,
               "witness": [format_set(v) for v in emb]}
    _emit(args, payload, "not free\nwitness: " + _witness_text(p, emb))
    return 0


def cmd_exact(args) -> int:
    p = _pattern(args.pattern)
    res = exact_exv(args.n, p, method=args.method, timeout=args.timeout)
    if args.json or args.json_canonical:
        print(json.dumps(res.to_json(canonical=args.json_canonical)))
    else:
        status = "exact" if res.exact else f"inexact (upper {res.upper})"
        print(f"ex_v({p}, Q_{res.n}) = {res.value} [{status}; {res.method}, "
              f"{res.nodes} nodes, {res.elapsed * 1000:.0f} ms]")
        print("witness: " + " ".join(format_set(v) for v in res.witness))
    return 0 if res.exact else 1


def cmd_bound(args) -> int:
    p = _pattern(args.pattern)
    b = bounds_for(args.n, p)
    flag = "certified" if b["certified"] else "certified: false"
    _emit(args, b, f"{p} n={args.n}: lower {b['lower']} ({b['construction']}), "
                   f"upper {b['upper']} ({b['upper_method']}; {flag})")
    return 0


def cmd_chains(args) -> int:
    f = read_qfam(args.family)
    show_all = not (args.lubell or args.profile or args.fat or args.weight)
    out = {"n": f.n, "size": len(f)}
    lines = []
    if args.lubell or show_all:
        lv = chains.lubell(f)
        out["lubell_numerator"] = lv.numerator
        out["lubell"] = str(lv.value)
        lines.append(f"lubell: {lv.value} (numerator {lv.numerator} / {f.n}!)")
    if args.profile or show_all:
        prof = chains.chain_profile(f)
        out["profile"] = list(prof.counts)
        lines.append("profile: " + " ".join(f"C{t}={c}" for t, c in enumerate(prof.counts)))
    if args.fat:
        out["fat"] = {"k": args.fat, "count": chains.fat_chain_count(f, args.fat)}
        lines.append(f"fat chains (k={args.fat}): {out['fat']['count']}")
    if args.weight or show_all:
        out["total_chain_weight"] = chains.total_chain_weight(f)
        lines.append(f"total chain weight: {out['total_chain_weight']}")
    _emit(args, out, "\n".join(lines))
    return 0


def _parse_range(text: str) -> range:
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError:
        raise UsageError(f"bad --n-range {text!r}, expected a..b") from None
    if a > b:
        raise UsageError("empty --n-range")
    return range(a, b + 1)


def cmd_table(args) -> int:
    p = _pattern(args.pattern)
    if as_path(p) is None and as_out_star(p) != 2:
        raise UsageError("table supports P:<k> and V:2 only")
    rows = []
    for n in _parse_range(args.n_range):
        if as_out_star(p) == 2 and n < 2:
            continue
        b = bounds_for(n, p)
        rows.append([n, b["lower"], b["upper"], str(b["exact"]).lower(),
                     str(b["certified"]).lower(), b["upper_method"]])
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "lower", "upper", "exact", "certified", "method"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return 0


def cmd_export(args) -> int:
    p = _pattern(args.pattern)
    with open(args.wcnf, "w", encoding="utf-8") as fh:
        stats = export_wcnf(args.n, p, fh)
    print(f"wrote {args.wcnf}: {stats['nv']} vars, {stats['soft']} soft, {stats['hard']} hard clauses")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vturan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", help="build the best known construction")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", help="write the family as QFAM")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("check", help="test a QFAM family for pattern copies")
    s.add_argument("--pattern", required=True)
    s.add_argument("--family", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("exact", help="exact vertex Turan number by search")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=["auto", "bruteforce", "bnb"], default="auto")
    s.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    s.add_argument("--json", action="store_true")
    s.add_argument("--json-canonical", action="store_true",
                   help="JSON without elapsed_ms, byte-identical across runs")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("bound", help="lower and upper bounds")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("chains", help="chain statistics of a QFAM family")
    s.add_argument("--family", required=True)
    s.add_argument("--lubell", action="store_true")
    s.add_argument("--profile", action="store_true")
    s.add_argument("--fat", type=int, metavar="K")
    s.add_argument("--weight", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_chains)

    s = sub.add_parser("table", help="CSV table of bounds over a range of n")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n-range", required=True, metavar="A..B")
    s.add_argument("--csv", required=True)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("export", help="write a WCNF MaxSAT instance")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--wcnf", required=True)
    s.set_defaults(func=cmd_export)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vturan: error: {exc}", file=sys.stderr)
        return 2
    except (GuardError, ValueError, RuntimeError, OSError) as exc:
        print(f"vturan: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
