"""Command-line surface: every operation scriptable with stable output.

Exit codes: 0 on success, 1 when a verification ran and the property
fails, 2 on usage, input, or resource errors (nothing on stdout then).
Payloads are JSON (JSON lines for partitions); subset rendering toggles
with --format bits.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from .counting import count_scds_exact, kleitman_bit_count, kleitman_extend, scd_bounds_report
from .errors import SymchainError
from .lattice import GroundSet, parse_subset, format_subset
from .partition import (
    alpha_constant,
    btk_scd,
    read_partition,
    uniform_rank_symmetric_partition,
    verify_partition,
    write_partition,
)
from .signature import btk_chain, circular_signature, mirror, signature
from .symposet import (
    component_stats,
    covers_down,
    covers_up,
    level_graph,
    verify_normalized_matching,
    verify_poset_nm,
)

WHOLE_LATTICE_CAP = 24


def _dump(payload) -> None:
    sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")


def _ground(args) -> GroundSet:
    return GroundSet(args.n)


def _subset(args, ground: GroundSet) -> Subset:
    return parse_subset(ground, args.subset, args.format)


def _guard_lattice_sweep(n: int) -> None:
    if n > WHOLE_LATTICE_CAP:
        raise SymchainError(
            f"whole-lattice sweep at n={n} would touch 2^{n} elements; capped at n={WHOLE_LATTICE_CAP}"
        )


def cmd_sig(args) -> int:
    x = _subset(args, _ground(args))
    _dump(signature(x).to_json_dict())
    return 0


def cmd_csig(args) -> int:
    x = _subset(args, _ground(args))
    _dump(circular_signature(x).to_json_dict())
    return 0


def cmd_chain(args) -> int:
    x = _subset(args, _ground(args))
    chain = btk_chain(x)
    _dump([format_subset(s, args.format) for s in chain])
    return 0


def cmd_mirror(args) -> int:
    x = _subset(args, _ground(args))
    sys.stdout.write(format_subset(mirror(x), args.format) + "\n")
    return 0


def cmd_covers(args) -> int:
    x = _subset(args, _ground(args))
    found = covers_up(x) if args.up else covers_down(x)
    ordered = sorted(found, key=lambda s: s.mask)
    _dump([format_subset(s, args.format) for s in ordered])
    return 0


def _write_partition_payload(part, args) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            write_partition(part, fh, args.format)
    else:
        write_partition(part, sys.stdout, args.format)


def cmd_scd(args) -> int:
    ground = _ground(args)
    if args.kleitman:
        if args.bits is None:
            raise SymchainError("--kleitman needs --bits")
        with open(args.kleitman) as fh:
            seed = read_partition(fh)
        if seed.ground.n != ground.n - 1:
            raise SymchainError(
                f"seed is over n={seed.ground.n}, expected n={ground.n - 1} for doubling to n={ground.n}"
            )
        part = kleitman_extend(seed, args.bits)
    else:
        _guard_lattice_sweep(ground.n)
        part = btk_scd(ground)
    _write_partition_payload(part, args)
    return 0


def cmd_partition_uniform(args) -> int:
    ground = _ground(args)
    _guard_lattice_sweep(ground.n)
    eps = Fraction(args.epsilon)
    part = uniform_rank_symmetric_partition(ground, eps)
    if args.stats:
        with open(args.stats, "w") as fh:
            fh.write("size,count\n")
            for size, count in part.size_histogram().items():
                fh.write(f"{size},{count}\n")
    _write_partition_payload(part, args)
    return 0


def cmd_verify(args) -> int:
    with open(args.file) as fh:
        part = read_partition(fh)
    require = tuple(args.require or ())
    verdict = verify_partition(
        part,
        require=require,
        expected_count=args.count,
        min_size=args.min_size,
        max_size=args.max_size,
    )
    _dump(verdict.to_json_dict())
    return 0 if verdict.ok else 1


def cmd_nm_check(args) -> int:
    ground = _ground(args)
    engine = "exhaustive" if args.exhaustive else "flow"
    if args.k is not None:
        g = level_graph(ground, args.k)
        verdict = verify_normalized_matching(g, engine=engine)
        payload = {"n": ground.n, "k": args.k, **verdict.to_json_dict()}
        _dump(payload)
        return 0 if verdict.holds else 1
    result = verify_poset_nm(ground, engine=engine, threads=args.threads)
    _dump({"n": ground.n, **result.to_json_dict()})
    return 0 if result.holds else 1


def cmd_components(args) -> int:
    ground = _ground(args)
    g = level_graph(ground, args.k)
    report = component_stats(g)
    _dump({"n": ground.n, "k": args.k, **report.to_json_dict()})
    return 0


def cmd_count_scd(args) -> int:
    ground = _ground(args)
    if args.mode == "exact":
        _dump({"n": ground.n, "exact": count_scds_exact(ground)})
    elif args.mode == "kleitman":
        l = kleitman_bit_count(ground.n)
        _dump({"n": ground.n, "l": l, "kleitman_log2": float(l), "count": 1 << l})
    else:
        _dump(scd_bounds_report(ground))
    return 0


def cmd_alpha(args) -> int:
    interval = alpha_constant(float(args.precision))
    _dump(
        {
            "precision": float(args.precision),
            "lo": interval.lo,
            "hi": interval.hi,
            "width": interval.width,
            "terms": interval.terms,
        }
    )
    return 0


def _add_common(sub, subset_arg: bool = True):
    sub.add_argument("-n", type=int, required=True, help="ground-set size")
    if subset_arg:
        sub.add_argument("subset", help='subset as "{e1,e2,...}" (or 0/1 string with --format bits)')
    sub.add_argument("--format", choices=("sets", "bits"), default="sets", help="subset text syntax")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symchain",
        description="Signatures, the upper-half order, and symmetric chain machinery on 2^[n].",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("sig", help="linear signature of a subset")
    _add_common(p)
    p.set_defaults(func=cmd_sig)

    p = subs.add_parser("csig", help="circular signature of a subset")
    _add_common(p)
    p.set_defaults(func=cmd_csig)

    p = subs.add_parser("chain", help="the symmetric chain through a subset")
    _add_common(p)
    p.set_defaults(func=cmd_chain)

    p = subs.add_parser("mirror", help="the mirror p(x) of an upper-half subset")
    _add_common(p)
    p.set_defaults(func=cmd_mirror)

    p = subs.add_parser("covers", help="cover neighbours in the upper-half order")
    _add_common(p)
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument("--up", action="store_true")
    direction.add_argument("--down", action="store_true")
    p.set_defaults(func=cmd_covers)

    p = subs.add_parser("scd", help="emit a symmetric chain decomposition (JSON lines)")
    _add_common(p, subset_arg=False)
    p.add_argument("--kleitman", metavar="SEEDFILE", help="double a decomposition of 2^[n-1]")
    p.add_argument("--bits", help="0/1 choices for --kleitman, one per non-singleton chain")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_scd)

    p = subs.add_parser("partition-uniform", help="near-uniform rank-symmetric chain partition")
    _add_common(p, subset_arg=False)
    p.add_argument("--epsilon", required=True, help="positive rational below 1, e.g. 0.04")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.add_argument("--stats", metavar="CSVFILE", help="write a size,count histogram CSV")
    p.set_defaults(func=cmd_partition_uniform)

    p = subs.add_parser("verify", help="validate a partition file")
    p.add_argument("file", help="JSON-lines partition file")
    p.add_argument(
        "--require",
        action="append",
        choices=("symmetric", "rank-symmetric", "skipless"),
        help="per-chain flag to demand (repeatable)",
    )
    p.add_argument("--count", type=int, help="expected chain count")
    p.add_argument("--min-size", type=int, help="minimum chain size")
    p.add_argument("--max-size", type=int, help="maximum chain size")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("nm-check", help="normalized matching verification")
    _add_common(p, subset_arg=False)
    group = p.add_mutually_exclusive_group()
    group.add_argument("-k", type=int, help="check one level graph (upper rank k)")
    group.add_argument("--all", action="store_true", help="check every level graph (default)")
    p.add_argument("--exhaustive", action="store_true", help="use the subset-enumeration engine")
    p.add_argument("--threads", type=int, default=1, help="data-parallel sweep width")
    p.set_defaults(func=cmd_nm_check)

    p = subs.add_parser("components", help="connected components of a level graph")
    _add_common(p, subset_arg=False)
    p.add_argument("-k", type=int, required=True, help="upper rank of the level graph")
    p.set_defaults(func=cmd_components)

    p = subs.add_parser("count-scd", help="count symmetric chain decompositions")
    _add_common(p, subset_arg=False)
    p.add_argument("--mode", choices=("exact", "kleitman", "bound"), required=True)
    p.set_defaults(func=cmd_count_scd)

    p = subs.add_parser("alpha", help="certified interval for the series constant")
    p.add_argument("--precision", required=True, help="target interval width")
    p.set_defaults(func=cmd_alpha)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SymchainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
