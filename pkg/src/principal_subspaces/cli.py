"""Command-line driver: ``psv verify | qseries | member | lemma``."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from .cache import RowCache, default_root
from .ideal_engine import IdealSpec, Window, membership_growing
from .textform import ParseError, parse_elem
from .upbw import AffineWeight, loop_algebra
from .verifier import (MISMATCH, UNSTABLE, default_budget, lemma_check_sigma,
                       lemma_check_tau, qseries, verify_presentation)

log = logging.getLogger("psv")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_UNSTABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _weight(args) -> AffineWeight:
    if args.rank < 1:
        raise UsageError("--rank must be at least 1")
    if args.level < 1:
        raise UsageError("--level must be positive (level 0 has only the trivial module)")
    try:
        coords = tuple(int(t) for t in args.weight.split(","))
    except ValueError:
        raise UsageError(f"malformed --weight {args.weight!r}: expected comma-separated integers")
    if len(coords) != args.rank + 1:
        raise UsageError(f"--weight needs {args.rank + 1} entries for rank {args.rank}, "
                         f"got {len(coords)}")
    if any(c < 0 for c in coords):
        raise UsageError("--weight entries must be nonnegative")
    if sum(coords) != args.level:
        raise UsageError(f"--weight entries sum to {sum(coords)}, not the level {args.level}")
    return AffineWeight(coords)


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    weight = _weight(args)
    w_def, c_def = default_budget(args.rank, args.level)
    w_max = args.max_weight if args.max_weight is not None else w_def
    charge_max = args.max_charge if args.max_charge is not None else c_def
    if w_max < 0:
        raise UsageError("--max-weight must be nonnegative")
    cap = charge_max if charge_max is not None else args.rank * w_max
    window = Window(w_max=w_max, charge_max=cap, mode_bound=args.mode_bound,
                    growth_cap=args.growth_cap)
    root = args.cache or default_root()
    cache = RowCache(root) if root else None
    start = time.perf_counter()
    report = verify_presentation(args.rank, args.level, weight, w_max, charge_max,
                                 window, jobs=args.jobs, cache=cache)
    log.info("verify %s: %s in %.2fs", weight.label(), report.status,
             time.perf_counter() - start)
    _write(args, report.to_json() if args.format == "json" else report.to_tsv())
    if report.status == MISMATCH:
        off = report.offending
        print(f"MISMATCH at weight {off.index.weight}, charges {list(off.index.charges)}: "
              f"quotient {off.quotient_dim} vs principal {off.principal_dim}", file=sys.stderr)
        return EXIT_MISMATCH
    if report.status == UNSTABLE:
        print("UNSTABLE: ideal closure still growing at the cap", file=sys.stderr)
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_qseries(args) -> int:
    weight = _weight(args)
    w_max = args.max_weight if args.max_weight is not None else default_budget(args.rank, args.level)[0]
    table = qseries(weight, w_max, args.max_charge, jobs=args.jobs)
    if args.format == "json":
        rows = [{"weight": g.weight, "charges": list(g.charges), "dim": d}
                for g, d in table.items()]
        text = json.dumps({"lambda": weight.label(), "w_max": w_max, "coefficients": rows},
                          indent=2) + "\n"
    else:
        head = ["weight"] + [f"r{i}" for i in range(1, args.rank + 1)] + ["dim"]
        lines = ["\t".join(head)]
        for g, d in table.items():
            lines.append("\t".join(str(x) for x in (g.weight, *g.charges, d)))
        text = "\n".join(lines) + "\n"
    _write(args, text)
    return EXIT_OK


def cmd_member(args) -> int:
    weight = _weight(args)
    if args.elem is None and args.elem_file is None:
        raise UsageError("give the element with --elem or --elem-file")
    text = args.elem if args.elem is not None else Path(args.elem_file).read_text().strip()
    alg = loop_algebra(args.rank)
    try:
        a = parse_elem(alg, text)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}")
    spec = IdealSpec.from_weight(weight)
    ok, t = membership_growing(spec, a, growth_cap=args.growth_cap)
    _write(args, "true\n" if ok else "false\n")
    if not ok:
        log.info("no membership certificate with R-truncations up to weight %d", t)
    return EXIT_OK


def cmd_lemma(args) -> int:
    weight = _weight(args)
    if args.rank != 2:
        raise UsageError("lemma checks are defined for --rank 2 only")
    w_max = args.max_weight if args.max_weight is not None else 5
    if args.which == "tau":
        report = lemma_check_tau(args.level, weight, w_max)
    else:
        if weight.coords[0] != 0:
            raise UsageError("sigma lemma needs a weight of the form 0,k1,k2")
        report = lemma_check_sigma(args.level, weight.coords[1], weight.coords[2], w_max)
    _write(args, report.to_text())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="psv", description="Principal subspace presentation checks.")
    p.add_argument("--seed", type=int, default=0, help="seed for any sampling (default 0)")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress and timing to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_weight=True):
        sp.add_argument("--rank", type=int, required=True)
        sp.add_argument("--level", type=int, required=True)
        sp.add_argument("--weight", required=True, help="k0,k1,...,kn")
        sp.add_argument("--max-weight", type=int)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("verify", help="two-sided check of the presentation")
    common(v)
    v.add_argument("--max-charge", type=int)
    v.add_argument("--mode-bound", type=int)
    v.add_argument("--growth-cap", type=int, default=12)
    v.add_argument("--format", choices=("json", "tsv"), default="json")
    v.add_argument("--cache", help="row cache directory (default: $PSV_CACHE)")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("qseries", help="graded dimensions of W(Lambda)")
    common(q)
    q.add_argument("--max-charge", type=int)
    q.add_argument("--format", choices=("json", "tsv"), default="tsv")
    q.set_defaults(func=cmd_qseries)

    m = sub.add_parser("member", help="ideal membership of an element")
    common(m)
    m.add_argument("--elem")
    m.add_argument("--elem-file")
    m.add_argument("--growth-cap", type=int, default=8)
    m.set_defaults(func=cmd_member)

    lm = sub.add_parser("lemma", help="translation-map lemma checks (rank 2)")
    common(lm)
    lm.add_argument("--which", choices=("tau", "sigma"), required=True)
    lm.set_defaults(func=cmd_lemma)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    random.seed(args.seed)
    if getattr(args, "jobs", 1) < 1:
        print("psv: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"psv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"psv: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
