"""Command line front end: ``design-forge <command> ...``.

Exit codes: 0 success, 1 oracle mismatch (or a ``check --kind`` miss),
2 bad usage, unreadable input or invalid parameters, 3 a guard refusal.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .arrays import ArrayLabel, parse_target, scan_catalog
from .core import (
    Params,
    Rectangle,
    RectangleKind,
    classify_rectangle,
    covering_table,
    intersection_profile,
    is_latin,
    lambda_value,
    tsuji_sides,
)
from .enumeration import (
    SearchConfig,
    count_by_aut,
    count_self_conjugate,
    default_jobs,
    develop,
    enumerate_classes,
)
from .errors import DesignForgeError, GuardError, ParseError
from .isotopy import autotopism_order, normalize
from .oracle import brute_enumerate
from .rectfile import format_arrays, format_rectangles, read_rectangles, write_rectangles

__all__ = ["main", "main_exit", "build_parser"]

log = logging.getLogger("design_forge")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


def _kind(text: str) -> RectangleKind:
    try:
        return RectangleKind.parse(text)
    except DesignForgeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="design-forge", description="Enumerate and analyse Youden-type rectangles.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    en = sub.add_parser("enumerate", help="list every isotopism class of a kind")
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--k", type=int, required=True)
    en.add_argument("--kind", type=_kind, required=True, help="youden, nyr or 3lambda")
    en.add_argument("--jobs", type=int, default=None, help="worker processes (default: $DESIGN_FORGE_JOBS or 1)")
    en.add_argument("--split-depth", type=int, default=None)
    en.add_argument("--out", type=Path, help="write the catalog here (default: stdout)")
    en.add_argument("--summary", type=Path, help="write a JSON summary here")
    en.add_argument("--self-conjugate", action="store_true", help="also count self-conjugate classes")

    ch = sub.add_parser("check", help="report invariants of every rectangle in a file")
    ch.add_argument("file", type=Path)
    ch.add_argument("--kind", type=_kind, help="exit 1 unless every rectangle has this kind")
    ch.add_argument("--aut", action="store_true", help="also compute autotopism group orders")

    sc = sub.add_parser("scan", help="look for arrays obtainable by removing a column")
    sc.add_argument("file", type=Path)
    sc.add_argument("--target", default="all", choices=["triple", "double", "sesqui", "sesqui-t", "all"])
    sc.add_argument("--fold-transposes", action="store_true")
    sc.add_argument("--out", type=Path, help="write the distinct arrays here (default: stdout)")

    dv = sub.add_parser("develop", help="develop a first column modulo n")
    dv.add_argument("--n", type=int, required=True)
    dv.add_argument("--first-column", type=_int_list, required=True, help="e.g. '0,1,3'")

    orc = sub.add_parser("oracle", help="cross-check the fast search against brute force")
    orc.add_argument("--n", type=int, required=True)
    orc.add_argument("--k", type=int, required=True)
    orc.add_argument("--kind", type=_kind, required=True)
    orc.add_argument("--catalog", type=Path, help="compare against this file instead of a fresh search")
    orc.add_argument("--allow-large", action="store_true")
    return parser


def _open_out(path: Path | None, stdout: TextIO) -> TextIO:
    return path.open("w") if path else stdout


def _cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    p = Params(args.n, args.k).check()
    jobs = args.jobs if args.jobs is not None else default_jobs()
    cat = enumerate_classes(p, args.kind, SearchConfig(split_depth=args.split_depth, jobs=jobs))
    report = count_by_aut(cat)
    header = [f"{args.kind} n={p.n} k={p.k} classes={report.total}"]
    if args.out:
        write_rectangles(args.out, cat.reps, header)
    else:
        out.write(format_rectangles(cat.reps, header))
    if args.summary:
        summary = {
            "n": p.n,
            "k": p.k,
            "kind": str(args.kind),
            "total": report.total,
            "by_aut_order": {str(a): c for a, c in report.by_aut_order.items()},
            "self_conjugate": count_self_conjugate(cat) if args.self_conjugate else None,
            "run": {
                "elapsed": cat.stats.get("elapsed"),
                "jobs": cat.stats.get("jobs"),
                "split_depth": cat.stats.get("split_depth"),
            },
        }
        args.summary.write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    log.info("%d classes in %.2fs", report.total, cat.stats.get("elapsed", 0.0))
    return EXIT_OK


def _describe(R: Rectangle, with_aut: bool) -> tuple[RectangleKind | None, list[str]]:
    lines = [f"shape: {R.k}x{R.n}"]
    if not is_latin(R):
        lines.append("latin: no")
        return None, lines
    kind = classify_rectangle(R)
    lines.append(f"kind: {kind}")
    lines.append(f"lambda: {lambda_value(R.params)}")
    inter = intersection_profile(R).summary
    lines.append("intersections: " + " ".join(f"{s}:{c}" for s, c in sorted(inter.items())))
    cover = covering_table(R).summary()
    lines.append("pair coverage: " + " ".join(f"{s}:{c}" for s, c in sorted(cover.items())))
    if R.n > 2:
        lhs, rhs = tsuji_sides(R)
        lines.append(f"variance identity: {lhs} = {rhs} (residual {lhs - rhs})")
    if with_aut:
        lines.append(f"autotopisms: {autotopism_order(normalize(R))}")
    return kind, lines


def _cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    rects = read_rectangles(args.file)
    status = EXIT_OK
    for i, R in enumerate(rects):
        kind, lines = _describe(R, args.aut)
        out.write(f"[{i}]\n" + "".join(f"  {line}\n" for line in lines))
        if args.kind is not None and kind is not args.kind:
            status = EXIT_MISMATCH
    out.write(f"{len(rects)} rectangle(s)\n")
    return status


def _cmd_scan(args: argparse.Namespace, out: TextIO) -> int:
    rects = read_rectangles(args.file)
    targets = list(ArrayLabel)[:4] if args.target == "all" else [parse_target(args.target)]
    sink = _open_out(args.out, out)
    try:
        for label in targets:
            rep = scan_catalog(rects, label, args.fold_transposes)
            out.write(
                f"target={label.value} rectangles={len(rects)} compatible_rectangles={rep.compatible_rectangles} "
                f"compatible_columns={rep.compatible_columns} distinct_arrays={rep.distinct_arrays}\n"
            )
            notes = [f"{label.value}: {rep.distinct_arrays} class(es)"]
            for q, cls in enumerate(rep.classes):
                notes.append(f"[{q}] aut={cls.aut_order} rectangles={cls.rectangles} columns={cls.columns}")
            if rep.classes or args.out:
                sink.write(format_arrays([c.form for c in rep.classes], notes))
    finally:
        if sink is not out:
            sink.close()
    return EXIT_OK


def _cmd_develop(args: argparse.Namespace, out: TextIO) -> int:
    R = develop(args.first_column, args.n)
    out.write(format_rectangles([R]))
    _, lines = _describe(R, with_aut=True)
    out.write("".join(f"# {line}\n" for line in lines))
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    p = Params(args.n, args.k).check()
    slow = brute_enumerate(p, args.kind, allow_large=args.allow_large)
    if args.catalog:
        fast = set(read_rectangles(args.catalog))
        source = str(args.catalog)
    else:
        fast = set(enumerate_classes(p, args.kind).reps)
        source = "search"
    ref = set(slow.reps)
    missing, extra = sorted(ref - fast), sorted(fast - ref)
    out.write(f"oracle={len(ref)} {source}={len(fast)} missing={len(missing)} extra={len(extra)}\n")
    if missing:
        out.write(format_rectangles(missing, ["in the oracle only"]))
    if extra:
        out.write(format_rectangles(extra, [f"in {source} only"]))
    return EXIT_OK if not missing and not extra else EXIT_MISMATCH


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "check": _cmd_check,
    "scan": _cmd_scan,
    "develop": _cmd_develop,
    "oracle": _cmd_oracle,
}


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = stdout or sys.stdout
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _COMMANDS[args.command](args, out)
    except GuardError as exc:
        print(f"design-forge: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, OSError) as exc:
        print(f"design-forge: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DesignForgeError as exc:
        print(f"design-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
