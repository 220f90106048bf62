"""Command-line interface.

Exit codes: 0 = solution found / predicate true, 1 = no solution, 2 = error
or unsupported input.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import List, Optional, Sequence

from .errors import ParseError, ReconstructionError, UnsupportedError
from .dagtomo1 import reconstruct1
from .dagtomo2 import reconstruct2
from .filling import Complete, Contradiction, FillMode, init_partition, run_filling
from .hvpoly import (
    BAD_GUY,
    build_aggregation_cnf,
    build_switching_components,
    reconstruct_hv_polyomino,
    solve_2sat,
)
from .lattice import LatticeSet, classify_fatness, classify_set, compute_xrays, feet
from .oracle import oracle_dt1, oracle_dt2, oracle_hv_polyomino
from .render import (
    parse_set_file,
    render_ascii_partition,
    render_ascii_set,
    render_svg_partition,
    render_svg_set,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _parse_counts(text: str, name: str) -> List[int]:
    try:
        counts = [int(tok) for tok in text.split()]
    except ValueError:
        raise UnsupportedError(f"{name} must be space-separated integers")
    if not counts:
        raise UnsupportedError(f"{name} must not be empty")
    if any(c < 0 for c in counts):
        raise UnsupportedError(f"{name} entries must be non-negative")
    return counts


def _read_set(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_set_file(fh.read())


def _print_solution(s: LatticeSet) -> None:
    min_x, min_y, _, _ = s.bbox
    shown = s.translate(-min(0, min_x), -min(0, min_y))
    print(render_ascii_set(shown))


def _cmd_xray(args) -> int:
    s, m, n = _read_set(args.input)
    if not s.points:
        print("NO", file=sys.stderr)
        return EXIT_NO
    h, v = compute_xrays(s, m, n)
    print("h: " + " ".join(str(c) for c in h.counts))
    print("v: " + " ".join(str(c) for c in v.counts))
    return EXIT_OK


def _cmd_classify(args) -> int:
    s, _, _ = _read_set(args.input)
    if not s.points:
        print("empty set", file=sys.stderr)
        return EXIT_ERROR
    flags = classify_set(s)
    for name in ("h_convex", "v_convex", "hv_convex", "polyomino", "digital_convex"):
        print(f"{name}: {'yes' if getattr(flags, name) else 'no'}")
    try:
        fat = classify_fatness(feet(s))
        if fat.is_fat:
            print("fatness: fat")
        else:
            print("fatness: thin")
            print(f"witness: {fat.witness.x} {fat.witness.y} ({fat.orientation.value})")
    except ReconstructionError as exc:
        print(f"fatness: undefined ({exc})")
    return EXIT_OK


def _cmd_reconstruct1(args) -> int:
    v = _parse_counts(args.v, "--v")
    sol = reconstruct1(v)
    if sol is None:
        print("NO")
        return EXIT_NO
    _print_solution(sol)
    return EXIT_OK


def _cmd_reconstruct2(args) -> int:
    h = _parse_counts(args.h, "--h")
    v = _parse_counts(args.v, "--v")
    sol = reconstruct2(h, v, jobs=args.jobs)
    if sol is None:
        print("NO")
        return EXIT_NO
    _print_solution(sol)
    return EXIT_OK


def _cmd_hvpoly(args) -> int:
    h = _parse_counts(args.h, "--h")
    v = _parse_counts(args.v, "--v")
    sol = reconstruct_hv_polyomino(h, v)
    if sol is None:
        print("NO")
        return EXIT_NO
    _print_solution(sol)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    if args.problem == "dt1":
        v = _parse_counts(args.v, "--v")
        if oracle_dt1(v):
            print("YES")
            return EXIT_OK
        print("NO")
        return EXIT_NO
    if args.problem == "dt2":
        h = _parse_counts(args.h, "--h")
        v = _parse_counts(args.v, "--v")
        sol = oracle_dt2(h, v, fat_only=args.fat)
    else:
        h = _parse_counts(args.h, "--h")
        v = _parse_counts(args.v, "--v")
        sol = oracle_hv_polyomino(h, v)
    if sol is None:
        print("NO")
        return EXIT_NO
    _print_solution(sol)
    return EXIT_OK


def _cmd_badguy(args) -> int:
    h, v, fp = BAD_GUY.h, BAD_GUY.v, BAD_GUY.placement
    part = init_partition(fp.m, fp.n, fp)
    if isinstance(part, Contradiction):
        print("filling: contradiction at initialization")
        return EXIT_ERROR
    outcome = run_filling(part, h, v, FillMode.HV_POLYOMINO)
    if isinstance(outcome, Contradiction):
        print("filling: contradiction")
        return EXIT_ERROR
    if isinstance(outcome, Complete):
        print("filling: complete")
        return EXIT_OK
    p = outcome.partition
    print(f"filling: residual ({p.undet_total} undetermined)")
    comps = build_switching_components(p, h, v)
    print(f"switching components: {len(comps)}")
    cnf, _ = build_aggregation_cnf(p, comps, h, v)
    verdict = solve_2sat(cnf)
    print(f"aggregation: {'SAT' if verdict is not None else 'UNSAT'}")
    if args.ascii:
        print(render_ascii_partition(p))
    if args.svg:
        links = []
        for comp in comps:
            cyc = comp.cycle
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                links.append((a, b, "h" if a.y == b.y else "v"))
        svg = render_svg_partition(p, cell=args.cell_size, correspondences=links, show_hull=True)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(f"trace written to {args.svg}")
    return EXIT_OK


def _cmd_render(args) -> int:
    from .render import SET_LAYERS, RenderSpec

    s, m, n = _read_set(args.input)
    spec = RenderSpec(format=args.format,
                      layers=frozenset(args.layers.split(",")) if args.layers else frozenset({"points"}),
                      cell_size=args.cell_size)
    try:
        spec.validate_for(SET_LAYERS)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if spec.format == "ascii":
        print(render_ascii_set(s, m, n))
        return EXIT_OK
    svg = render_svg_set(s, m, n, cell=spec.cell_size, layers=spec.layers)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(f"written to {args.out}")
    else:
        print(svg)
    return EXIT_OK


def _cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    mism = 0
    for trial in range(args.count):
        m = rng.randint(1, args.max_size)
        n = rng.randint(1, args.max_size)
        h = [rng.randint(1, m) for _ in range(n)]
        total = sum(h)
        v = _random_composition(rng, total, m, n)
        if v is None:
            continue
        got = reconstruct_hv_polyomino(h, v)
        want = oracle_hv_polyomino(h, v)
        if (got is None) != (want is None):
            mism += 1
            print(f"MISMATCH hvpoly h={h} v={v}: solver={got is not None} oracle={want is not None}")
        try:
            got2 = reconstruct2(h, v)
            want2 = oracle_dt2(h, v, fat_only=True) if m * n <= 25 else None
            if m * n <= 25 and (got2 is None) != (want2 is None):
                mism += 1
                print(f"MISMATCH dt2 h={h} v={v}: solver={got2 is not None} oracle={want2 is not None}")
        except UnsupportedError:
            pass
    print(f"fuzz: {args.count} trials, {mism} mismatches")
    return EXIT_OK if mism == 0 else EXIT_NO


def _random_composition(rng: random.Random, total: int, parts: int, cap: int) -> Optional[List[int]]:
    """Random vector of ``parts`` entries in [1..cap] summing to ``total``."""
    if not (parts <= total <= parts * cap):
        return None
    vals = [1] * parts
    for _ in range(total - parts):
        choices = [i for i in range(parts) if vals[i] < cap]
        vals[rng.choice(choices)] += 1
    return vals


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="convextomo",
        description="Reconstruction of convex lattice sets from one or two X-rays.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xray", help="print the X-rays of a set file")
    p.add_argument("input")
    p.set_defaults(func=_cmd_xray)

    p = sub.add_parser("classify", help="convexity flags and fatness of a set file")
    p.add_argument("input")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("reconstruct1", help="digital convex set from one vertical X-ray")
    p.add_argument("--v", required=True, help="space-separated column counts")
    p.set_defaults(func=_cmd_reconstruct1)

    p = sub.add_parser("reconstruct2", help="fat digital convex set from two X-rays")
    p.add_argument("--h", required=True, help="row counts, bottom row first")
    p.add_argument("--v", required=True, help="column counts")
    p.add_argument("--jobs", type=int, default=1, help="parallel placement workers")
    p.set_defaults(func=_cmd_reconstruct2)

    p = sub.add_parser("hvpoly", help="HV-convex polyomino from two X-rays")
    p.add_argument("--h", required=True)
    p.add_argument("--v", required=True)
    p.set_defaults(func=_cmd_hvpoly)

    p = sub.add_parser("oracle", help="brute-force reference solvers")
    p.add_argument("problem", choices=["dt1", "dt2", "hvpoly"])
    p.add_argument("--h")
    p.add_argument("--v", required=True)
    p.add_argument("--fat", action="store_true", help="dt2: require a fat solution")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("badguy", help="run the built-in counter-example instance")
    p.add_argument("--ascii", action="store_true", help="print the residual partition")
    p.add_argument("--svg", help="write an SVG trace to this file")
    p.add_argument("--cell-size", type=int, default=24)
    p.set_defaults(func=_cmd_badguy)

    p = sub.add_parser("render", help="render a set file as ascii or svg")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--out", help="output file for svg")
    p.add_argument("--cell-size", type=int, default=24)
    p.add_argument("--layers", help="comma-separated svg layers: points,hull")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("fuzz", help="random cross-checks of solvers against oracles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-size", type=int, default=5)
    p.set_defaults(func=_cmd_fuzz)

    return ap


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except UnsupportedError as exc:
        print(f"UNSUPPORTED: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ReconstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
