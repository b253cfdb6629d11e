"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 enumeration cap exceeded,
4 classification hypothesis violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys

from .cache import GroupProfile, SpectrumCache, default_cache_dir
from .census import classify_by_involutions, group_order_formula, verify_counterexample
from .engine import DEFAULT_CAP
from .errors import CapExceeded, GroupIdError, HypothesisViolated
from .groups import GroupId
from .scan import (
    build_catalog,
    compute_profile,
    conjecture15_scan,
    herzog_collision_scan,
    load_profiles,
    zar_scan,
)

EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_HYPOTHESIS = 4


class _Usage(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _bool(b: bool) -> str:
    return "true" if b else "false"


# -- group profile lookup -----------------------------------------------------------


def _cache(args) -> SpectrumCache | None:
    if args.no_cache:
        return None
    return SpectrumCache(args.cache_dir if args.cache_dir is not None else default_cache_dir())


def _profile(args) -> GroupProfile:
    try:
        gid = GroupId.parse(args.group)
    except GroupIdError as exc:
        raise _Usage(str(exc)) from None
    name = str(gid)
    expected = group_order_formula(gid.family)
    cache = _cache(args)
    if cache is not None:
        prof = cache.load(name, expected)
        if prof is not None:
            return prof
    prof = compute_profile(name, args.cap)
    if cache is not None:
        cache.store(prof)
    return prof


# -- commands -----------------------------------------------------------------------------


def cmd_spectrum(args) -> str:
    prof = _profile(args)
    items = prof.spectrum.items()
    if args.format == "json":
        return _dump_json(
            {
                "id": prof.id,
                "order": prof.order,
                "spectrum": {str(k): c for k, c in items},
                "primes": prof.spectrum.primes,
            }
        )
    if args.format == "csv":
        return _dump_csv(["k", "count"], items)
    head = f"{prof.id}: order {prof.order}\n"
    tail = "pi(G) = {" + ", ".join(map(str, prof.spectrum.primes)) + "}\n"
    return head + _table(["k", "I_k"], items) + tail


def cmd_involutions(args) -> str:
    prof = _profile(args)
    classes = prof.involution_classes
    total = sum(s for s, _ in classes)
    if args.format == "json":
        return _dump_json(
            {
                "id": prof.id,
                "order": prof.order,
                "k2": len(classes),
                "classes": [{"classSize": s, "centralizerOrder": c} for s, c in classes],
                "totalInvolutions": total,
            }
        )
    if args.format == "csv":
        return _dump_csv(["classSize", "centralizerOrder"], classes)
    terms = " + ".join(f"{prof.order}/{c}" for _, c in classes) or "0"
    return (
        f"{prof.id}: order {prof.order}, {len(classes)} class(es) of involutions\n"
        + _table(["class size", "|C(t)|"], classes)
        + f"I_2 = {terms} = {total}\n"
    )


def cmd_herzog(args) -> str:
    if args.action == "verify":
        d = verify_counterexample(args.cap).to_json_dict()
        if args.format == "json":
            return _dump_json(d)
        if args.format == "csv":
            return _dump_csv(list(d), [[_bool(v) if isinstance(v, bool) else v for v in d.values()]])
        return (
            f"I_2({d['groupA']}) = {d['i2A']}, |{d['groupA']}| = {d['orderA']}\n"
            f"I_2({d['groupB']}) = {d['i2B']}, |{d['groupB']}| = {d['orderB']}\n"
            f"counterexample: {_bool(d['isCounterexample'])}\n"
        )
    if args.value is None:
        raise _Usage("herzog classify needs an involution count")
    rows = [r.to_json_dict() for r in classify_by_involutions(args.value)]
    if args.format == "json":
        return _dump_json(rows)
    header = ["family", "parameter", "predictedI", "epsilon", "condition"]
    body = [["" if r[h] is None else r[h] for h in header] for r in rows]
    if args.format == "csv":
        return _dump_csv(header, body)
    return _table(header, body) if rows else "no row of the theorem matches\n"


def cmd_scan(args) -> str:
    if args.max_order > args.cap:
        raise _Usage(f"--max-order {args.max_order} exceeds the enumeration cap {args.cap}")
    catalog = build_catalog(args.max_order)
    cache = _cache(args)
    workers = args.workers or os.cpu_count() or 1
    if args.action == "zar":
        results = zar_scan(catalog, cache, workers, args.cap)
        if args.format == "json":
            return _dump_json([dict(r.to_json_dict(), refutes=bool(r.violations)) for r in results])
        rows = [
            [r.id, r.order, ";".join(f"{p}={q}" for p, q in r.violations)] for r in results
        ]
        if args.format == "csv":
            return _dump_csv(["id", "order", "violations"], rows)
        flagged = sum(bool(r.violations) for r in results)
        return _table(["id", "order", "violations"], rows) + f"{flagged} group(s) with equal I_p = I_r\n"

    scanner = herzog_collision_scan if args.action == "collisions" else conjecture15_scan
    records = scanner(catalog, cache, workers, args.cap)
    if args.format == "json":
        return _dump_json([dict(r.to_json_dict(), refutes=not r.same_order) for r in records])
    rows = [
        [r.id_a, r.id_b, r.i2, r.order_a, r.order_b, _bool(r.same_order), ";".join(map(str, r.odd_prime_matches))]
        for r in records
    ]
    if args.format == "csv":
        return _dump_csv(["idA", "idB", "i2", "orderA", "orderB", "sameOrder", "oddPrimeMatches"], rows)
    marked = [row + ["REFUTES" if not r.same_order else ""] for row, r in zip(rows, records)]
    header = ["idA", "idB", "i2", "orderA", "orderB", "sameOrder", "oddPrimeMatches", ""]
    return _table(header, marked) + f"{sum(not r.same_order for r in records)} refuting record(s)\n"


def cmd_cache(args) -> str:
    cache = SpectrumCache(args.cache_dir if args.cache_dir is not None else default_cache_dir())
    if args.action == "clear":
        return f"removed {cache.clear()} file(s) from {cache.root}\n"
    catalog = build_catalog(args.max_order)
    load_profiles(catalog, cache, args.workers or os.cpu_count() or 1, args.cap)
    return f"cached {len(catalog)} profile(s) in {cache.root}\n"


# -- argument parsing --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the spectrum cache")
    common.add_argument("--cache-dir", default=None, help="default: $INVCENSUS_CACHE_DIR or ./cache")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (elements)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="invcensus", description="Involution counts and order spectra of small simple groups."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="element-order spectrum of a group")
    p.add_argument("group", help="alt:<n> | psl2:<q> | psl3:<q> | psu3:<q> | psp4:<q> | m11 | m12 | cyclic:2")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("involutions", parents=[common], help="involution classes and centralizer orders")
    p.add_argument("group")
    p.set_defaults(func=cmd_involutions)

    p = sub.add_parser("herzog", parents=[common], help="counterexample check and classification by I_2")
    p.add_argument("action", choices=("verify", "classify"))
    p.add_argument("value", nargs="?", type=int)
    p.set_defaults(func=cmd_herzog)

    scan_opts = argparse.ArgumentParser(add_help=False)
    scan_opts.add_argument("--max-order", type=int, default=1_000_000)
    scan_opts.add_argument("--workers", type=int, default=None, help="default: available CPUs")

    p = sub.add_parser("scan", parents=[common, scan_opts], help="scan the catalog")
    p.add_argument("action", choices=("collisions", "zar", "conj15"))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("cache", parents=[common, scan_opts], help="fill or clear the spectrum cache")
    p.add_argument("action", choices=("fill", "clear"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        out = args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"invcensus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"invcensus: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HypothesisViolated as exc:
        print(f"invcensus: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
