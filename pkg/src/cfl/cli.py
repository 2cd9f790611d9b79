"""Command-line entry point: enumerate, friezes, count, region, verify.

Exit codes: 0 on success, 1 on a verification mismatch, 2 on usage errors.
Identical invocations produce byte-identical output.  Set CFL_CACHE_DIR to
persist enumerated patterns as JSON between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Tuple

from . import cluster as cl
from . import frieze as fz
from . import laurent
from . import quiver as qv
from . import region as rg
from . import typecomb as tc
from .quiver import DynkinType

SLOW_RANK = 6  # enumerations at or above this rank need --allow-slow


def _load_matrix(args) -> Tuple[qv.ExchangeMatrix, Optional[str]]:
    """Matrix plus a cache tag (None when read from a quiver file)."""
    if args.quiver:
        return qv.load_quiver(args.quiver), None
    if not args.type:
        raise SystemExit("error: provide --type or --quiver")
    t = DynkinType.parse(args.type)
    return qv.from_dynkin(t), str(t)


def _cache_path(tag: str, cap: int) -> Optional[str]:
    root = os.environ.get("CFL_CACHE_DIR")
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    return os.path.join(root, f"pattern_{tag}_{cap}.json")


def _get_pattern(matrix, tag, cap):
    path = _cache_path(tag, cap) if tag else None
    if path and os.path.exists(path):
        with open(path) as fh:
            return cl.pattern_from_cache_dict(json.load(fh))
    pattern, reg = cl.enumerate_pattern(matrix, cap)
    if path and pattern.finite:
        with open(path, "w") as fh:
            json.dump(cl.pattern_to_cache_dict(reg, pattern), fh)
    return pattern, reg


def cmd_enumerate(args) -> int:
    matrix, tag = _load_matrix(args)
    pattern, reg = _get_pattern(matrix, tag, args.cap)
    if not pattern.finite:
        print(pattern.reason)
        return 0
    payload = {
        "variables": [laurent.render(p) for p in reg.variables],
        "clusters": [list(c) for c in pattern.clusters()],
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.format == "json" and not args.out:
        print(text)
    else:
        print(f"{len(reg)} variables, {len(pattern.seeds)} clusters")
    return 0


def cmd_friezes(args) -> int:
    matrix, tag = _load_matrix(args)
    if matrix.rank >= SLOW_RANK and not args.allow_slow:
        raise SystemExit(
            f"error: rank {matrix.rank} frieze enumeration is slow; pass --allow-slow"
        )
    pattern, reg = _get_pattern(matrix, tag, args.cap)
    if not pattern.finite:
        print(pattern.reason)
        return 0
    bound = fz.resolve_bound(reg, pattern, args.bound)
    if args.jobs > 1:
        friezes = fz.enumerate_friezes_parallel(
            reg, pattern, bound=bound, min_value=args.min_value, jobs=args.jobs
        )
    else:
        friezes = fz.enumerate_friezes(reg, pattern, bound=bound, min_value=args.min_value)
    unitary = 0
    flags = []
    for f in friezes:
        _, is_unitary = fz.classify_frieze(reg, pattern, f)
        unitary += is_unitary
        flags.append(is_unitary)
    warning = ""
    if fz.bound_saturated(friezes, bound):
        warning = f"warning: an initial slice reached the bound {bound}; count may be incomplete"
    if tag:
        expected = tc.frieze_count(DynkinType.parse(tag))
        if expected.value != len(friezes):
            mark = " (conjectured)" if expected.conjectural else ""
            warning = (
                f"warning: bound {bound} found {len(friezes)} friezes but the "
                f"closed form gives {expected.value}{mark}; raise --bound"
            )
    print(f"{len(friezes)} friezes, {unitary} unitary (bound {bound})")
    if warning:
        print(warning)
    if args.list and not args.count_only:
        for i, f in enumerate(friezes):
            label = "unitary" if flags[i] else "non-unitary"
            rows = ";".join(",".join(str(v) for v in row) for row in f.rows())
            print(f"frieze {i + 1}: period={f.period} rows=[{rows}] {label}")
    if args.out:
        payload = [fz.to_json_dict(f) for f in friezes]
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_count(args) -> int:
    t = DynkinType.parse(args.type)
    if args.what == "clusters":
        print(f"{tc.cluster_count(t)} (recursion)")
        return 0
    if args.what == "mu":
        if not args.sub:
            raise SystemExit("error: --what mu needs --sub")
        sub = DynkinType.parse(args.sub)
        print(f"{tc.multiplicity(sub, t)} (recursion)")
        return 0
    if args.what == "friezes":
        res = tc.frieze_count_via_faces(t) if args.method == "faces" else tc.frieze_count(t)
        mark = ", conjectural" if res.conjectural else ""
        print(f"{res.value} ({res.provenance}{mark})")
        return 0
    raise SystemExit(f"error: unknown --what {args.what}")


def cmd_region(args) -> int:
    matrix, tag = _load_matrix(args)
    if matrix.rank not in (2, 3):
        raise SystemExit(f"error: region plotting supports rank 2 or 3, not {matrix.rank}")
    pattern, reg = _get_pattern(matrix, tag, args.cap)
    if not pattern.finite:
        print(pattern.reason)
        return 0
    arcs = rg.sample_boundary(reg, pattern, resolution=args.resolution)
    if args.csv:
        rg.write_boundary_csv(arcs, pattern.rank, args.csv)
    if args.plot:
        rg.write_boundary_svg(arcs, pattern.rank, args.plot)
    print(f"{len(arcs)} boundary arcs at resolution {args.resolution}")
    return 0


def _verify_line(name: str, got, expected) -> bool:
    ok = got == expected
    print(f"{name}: {expected} {'ok' if ok else f'FAIL (got {got})'}")
    return ok


def _table1_types(max_rank: int, allow_slow: bool):
    out = []
    for n in range(1, max_rank + 1):
        out.append(f"A{n}")
    for n in range(2, max_rank + 1):
        out.append(f"B{n}")
    for n in range(3, max_rank + 1):
        out.append(f"C{n}")
    for n in range(4, max_rank + 1):
        out.append(f"D{n}")
    if max_rank >= 2:
        out.append("G2")
    if max_rank >= 4:
        out.append("F4")
    if max_rank >= 6 and allow_slow:
        out.append("E6")
    return [s for s in out if DynkinType.parse(s).rank <= max_rank]


def cmd_verify(args) -> int:
    ok = True
    if args.suite in ("table1", "all"):
        for spec in _table1_types(args.max_rank, args.allow_slow):
            t = DynkinType.parse(spec)
            pattern, reg = _get_pattern(qv.from_dynkin(t), str(t), args.cap)
            ok &= _verify_line(f"{spec} clusters", len(pattern.seeds), tc.cluster_count(t))
            friezes = fz.enumerate_friezes(reg, pattern)
            ok &= _verify_line(f"{spec} friezes", len(friezes), tc.frieze_count(t).value)
    if args.suite in ("appendix", "all"):
        mu_expected = [
            ("A1", "A2", 5), ("A2", "A3", 6), ("A1xA1", "A3", 3), ("A1", "A3", 21),
            ("B3", "F4", 7), ("D4", "D5", 5), ("D4", "D6", 21), ("D4", "E6", 35),
            ("D4", "D7", 84), ("D4", "E7", 220), ("D4", "E8", 1596),
            ("D6", "E7", 10), ("D6", "E8", 136),
        ]
        for sub, amb, val in mu_expected:
            got = tc.multiplicity(DynkinType.parse(sub), DynkinType.parse(amb))
            ok &= _verify_line(f"mu({sub},{amb})", got, val)
        for spec in ("A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3",
                     "D4", "D5", "G2", "F4", "E6"):
            t = DynkinType.parse(spec)
            ok &= _verify_line(
                f"{spec} face-sum",
                tc.frieze_count_via_faces(t).value,
                tc.frieze_count_closed_form(t).value,
            )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", help="Dynkin type string, e.g. A3 or A1xG2")
        p.add_argument("--quiver", help="path to a quiver JSON file")
        p.add_argument("--cap", type=int, default=cl.DEFAULT_CAP,
                       help="max seeds/matrices to explore before giving up")

    p = sub.add_parser("enumerate", help="enumerate the seed pattern")
    common(p)
    p.add_argument("--out", help="write {variables, clusters} JSON here")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("friezes", help="enumerate positive integral friezes")
    common(p)
    p.add_argument("--bound", type=int, default=0, help="per-coordinate bound (0 = default)")
    p.add_argument("--min-value", type=int, default=1)
    p.add_argument("--list", action="store_true", help="print each frieze")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--allow-slow", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the friezes as JSON here")
    p.set_defaults(func=cmd_friezes)

    p = sub.add_parser("count", help="closed-form / recursive type counts")
    p.add_argument("--what", choices=("clusters", "friezes", "mu"), required=True)
    p.add_argument("--type", required=True)
    p.add_argument("--sub", help="subtype for --what mu")
    p.add_argument("--method", choices=("closed", "faces"), default="closed")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("region", help="plot the superunitary region boundary")
    common(p)
    p.add_argument("--plot", help="SVG output path")
    p.add_argument("--csv", help="CSV output path")
    p.add_argument("--resolution", type=int, default=64)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify", help="re-run the counting cross-checks")
    p.add_argument("--suite", choices=("table1", "appendix", "all"), default="all")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--allow-slow", action="store_true")
    p.add_argument("--cap", type=int, default=cl.DEFAULT_CAP)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
