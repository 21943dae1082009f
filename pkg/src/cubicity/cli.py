"""Command-line front end.

Exit codes
----------
0  success (for ``build``/``verify``: representation verified valid)
1  representation invalid
2  usage error
3  file could not be read or written
4  malformed or inconsistent input
5  builder gave up (retry cap exhausted, DET scan stalled)
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .banded import (
    LinearArrangement,
    build_detband,
    detband_bound,
    heuristic_arrangement,
    read_arrangement,
    width,
    write_arrangement,
)
from .builders import BuildError, build_det, build_rand, dimension_bound
from .graph import (
    GraphError,
    binary_tree,
    complete_graph,
    cycle_graph,
    empty_graph,
    gnp_graph,
    max_degree,
    path_graph,
    read_graph,
    star_graph,
    write_graph,
)
from .intervals import (
    read_representation,
    verify_representation,
    write_representation,
    write_unit_representation,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INPUT = 4
EXIT_GAVE_UP = 5

FAMILIES = ("path", "cycle", "complete", "empty", "star", "binary-tree", "gnp")


class _IOFailure(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed {text} is not an unsigned 64-bit integer")
    return v


def _arrangement(choice: str | None, g):
    if choice is None or choice == "heuristic":
        return heuristic_arrangement(g)
    if choice == "identity":
        return LinearArrangement.identity(g.n)
    return read_arrangement(_read(choice), g.n)


def _emit_report(args, report) -> None:
    text = report.to_kv() if args.report == "kv" else report.to_human()
    # keep stdout clean when the representation itself goes there
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    if args.report_out:
        _write(args.report_out, text)
    else:
        stream.write(text)


def cmd_build(args) -> int:
    g = read_graph(_read(args.input))
    if args.algo in ("rand", "rand-whp"):
        mode = "expected" if args.algo == "rand" else "whp"
        rep, report = build_rand(g, mode=mode, seed=args.seed, retries=args.retries)
    elif args.algo == "det":
        rep, report = build_det(g, scan_cap=args.scan_cap)
    else:
        arr = _arrangement(args.order, g)
        rep, report = build_detband(g, arr, b=args.b, scan_cap=args.scan_cap)
        report.extra["order"] = args.order or "heuristic"
    _write(args.out, write_representation(rep))
    if args.unit_out:
        _write(args.unit_out, write_unit_representation(rep))
    _emit_report(args, report)
    return EXIT_OK if report.verified else EXIT_INVALID


def cmd_verify(args) -> int:
    g = read_graph(_read(args.input))
    rep = read_representation(_read(args.rep))
    verdict = verify_representation(g, rep)
    for line in verdict.lines():
        print(line)
    print("valid" if verdict.valid else "invalid")
    return EXIT_OK if verdict.valid else EXIT_INVALID


def cmd_bandwidth(args) -> int:
    g = read_graph(_read(args.input))
    arr = _arrangement(args.order, g)
    if args.out and args.order in (None, "heuristic"):
        _write(args.out, write_arrangement(arr))
    print(f"width={width(g, arr)}")
    return EXIT_OK


def cmd_stats(args) -> int:
    g = read_graph(_read(args.input))
    delta = max_degree(g)
    w = width(g, heuristic_arrangement(g))
    t, band, stated = detband_bound(delta, max(w, 1))
    rows = {
        "n": g.n,
        "m": g.m,
        "delta": delta,
        "bound_expected": dimension_bound(delta, g.n, 4),
        "bound_whp": dimension_bound(delta, g.n, 6),
        "heuristic_width": w,
        "detband_t": t,
        "detband_bound": band,
        "detband_bound_stated": stated,
    }
    for k, v in rows.items():
        print(f"{k}={v}")
    return EXIT_OK


def cmd_gen(args) -> int:
    fam = args.family
    try:
        if fam == "binary-tree":
            if args.height is None:
                raise GraphError("binary-tree needs --height")
            g = binary_tree(args.height)
        else:
            if args.n is None or args.n < 0:
                raise GraphError(f"{fam} needs --n >= 0")
            n = args.n
            if fam == "path":
                g = path_graph(n)
            elif fam == "cycle":
                g = cycle_graph(n)
            elif fam == "complete":
                g = complete_graph(n)
            elif fam == "empty":
                g = empty_graph(n)
            elif fam == "star":
                if n < 1:
                    raise GraphError("star needs --n >= 1")
                g = star_graph(n - 1)
            else:
                if args.p is None:
                    raise GraphError("gnp needs --p")
                g = gnp_graph(n, args.p, args.seed)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write(args.out, write_graph(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubicity", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="compute a k-cube representation")
    b.add_argument("--algo", choices=("rand", "rand-whp", "det", "detband"), default="det")
    b.add_argument("--input", required=True, help="edge-list graph file ('-' for stdin)")
    b.add_argument("--out", help="representation file (default stdout)")
    b.add_argument("--unit-out", help="also write the unit-scaled p/q representation here")
    b.add_argument("--order", help="detband arrangement: PATH, 'identity' or 'heuristic' (default)")
    b.add_argument("--b", type=int, help="detband block size (default: arrangement width)")
    b.add_argument("--seed", type=_u64, default=0)
    b.add_argument("--retries", type=int, default=16)
    b.add_argument("--scan-cap", type=int, default=10_000)
    b.add_argument("--report", choices=("human", "kv"), default="human")
    b.add_argument("--report-out", help="write the report here instead of the terminal")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a representation against a graph")
    v.add_argument("--input", required=True)
    v.add_argument("--rep", required=True, help="representation file")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("bandwidth", help="heuristic arrangement and its width")
    w.add_argument("--input", required=True)
    w.add_argument("--order", help="measure this arrangement (PATH or 'identity') instead")
    w.add_argument("--out", help="write the heuristic arrangement here")
    w.set_defaults(func=cmd_bandwidth)

    s = sub.add_parser("stats", help="degree, width and dimension bounds")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_stats)

    gp = sub.add_parser("gen", help="write a graph from a standard family")
    gp.add_argument("family", choices=FAMILIES)
    gp.add_argument("--n", type=int)
    gp.add_argument("--p", type=float)
    gp.add_argument("--height", type=int)
    gp.add_argument("--seed", type=_u64, default=0)
    gp.add_argument("--out")
    gp.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "retries", 1) < 1:
        print("error: --retries must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BuildError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GAVE_UP
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
