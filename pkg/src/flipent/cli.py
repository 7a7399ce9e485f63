"""Command-line front end.

Subcommands: ``entropy`` (one partition, one state), ``verify``
(oracle-vs-engine sweep at k <= 3), ``scan`` (partition sweeps to
CSV/JSON) and ``lattice-info``.

Exit codes: 0 success, 1 verification or closed-form mismatch, 2 input
error, 3 resource cap exceeded.  Output for a fixed configuration
(including seed) is byte-identical between runs: rows are sorted by
partition descriptor and floats rendered via repr.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
from dataclasses import dataclass

from . import __version__
from .engine import (
    EXHAUSTIVE_SCAN_MAX_LINKS,
    entropy_bounds,
    entropy_equal_superposition,
    geometric_entropy,
    ground_degeneracy,
    independent_generator_count,
)
from .errors import LatticeFormatError, ResourceLimitError
from .gf2 import DEFAULT_ENUM_MAX_RANK
from .lattice import (
    BoundaryStats,
    Lattice,
    Partition,
    boundary_stats,
    build_torus,
    disk_region,
    named_partition,
    parse_lattice_document,
    plaquette_group,
    random_rectangle_region,
    random_simple_region,
    star_group,
)
from .oracle import MAX_ORACLE_LINKS, MAX_SUBSYSTEM_LINKS, oracle_entropy
from .states import GroundStateCoeffs, closed_form_entropy
from .verify import default_suite, max_deviation, verify_partitions

COEFF_NORM_SLACK = 1e-6
ORACLE_MATCH_TOL = 1e-9

CSV_COLUMNS = (
    "partition",
    "size_A",
    "L",
    "n1",
    "n2",
    "n3",
    "S_bits",
    "S_closed_form",
    "lower_bound",
    "upper_bound",
    "oracle_S",
)


@dataclass
class ParsedPartition:
    descriptor: str
    partition: Partition
    stats: BoundaryStats | None
    closed_form_name: str | None
    is_disk: bool


# ---------------------------------------------------------------------------
# spec parsers

def parse_lattice_spec(spec: str) -> Lattice:
    """``torus:k=K`` or a path to a lattice document."""
    if spec.startswith("torus:"):
        body = spec[len("torus:"):]
        if not body.startswith("k="):
            raise ValueError(f"expected torus:k=<int>, got {spec!r}")
        try:
            k = int(body[2:])
        except ValueError:
            raise ValueError(f"bad torus size in {spec!r}")
        return build_torus(k)
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read lattice file {spec!r}: {exc}")
    return parse_lattice_document(text)


def _parse_int_list(body: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in body.split(",") if tok != ""]
    except ValueError:
        raise ValueError(f"bad {what} list: {body!r}")


def parse_partition_spec(lat: Lattice, spec: str) -> ParsedPartition:
    """Grammar: chain | ladder | cross | vertical | spin:<id> |
    pair:<id>,<id> | links:<id,...> | rect:<x>,<y>,<w>,<h> |
    loop:<link id,...>."""
    if spec in ("chain", "ladder", "cross", "vertical"):
        part = named_partition(lat, spec)
        return ParsedPartition(spec, part, boundary_stats(lat, part), spec, False)
    if spec.startswith("spin:"):
        (link,) = _parse_int_list(spec[5:], "spin") or [None]
        part = named_partition(lat, "single_spin", link)
        return ParsedPartition(
            spec, part, boundary_stats(lat, part), "single_spin", False
        )
    if spec.startswith("pair:"):
        ids = _parse_int_list(spec[5:], "pair")
        part = named_partition(lat, "pair", *ids)
        return ParsedPartition(spec, part, boundary_stats(lat, part), None, False)
    if spec.startswith("links:"):
        ids = _parse_int_list(spec[6:], "link")
        if not ids:
            raise ValueError("links: needs at least one link id")
        part = Partition.from_links(ids, lat.n_links)
        return ParsedPartition(spec, part, _try_stats(lat, part), None, False)
    if spec.startswith("rect:"):
        vals = _parse_int_list(spec[5:], "rect")
        if len(vals) != 4:
            raise ValueError("rect: needs x,y,w,h")
        part, stats = disk_region(lat, rect=tuple(vals))
        return ParsedPartition(spec, part, stats, None, True)
    if spec.startswith("loop:"):
        ids = _parse_int_list(spec[5:], "loop")
        part, stats = disk_region(lat, dual_loop=ids)
        return ParsedPartition(spec, part, stats, None, True)
    raise ValueError(f"unknown partition spec {spec!r}")


def _try_stats(lat: Lattice, part: Partition) -> BoundaryStats | None:
    try:
        return boundary_stats(lat, part)
    except ValueError:
        return None


def parse_state_spec(spec: str) -> tuple[str, GroundStateCoeffs, bool]:
    """Returns (label, coefficients, is_basis_state)."""
    if spec.startswith("xi:"):
        ids = _parse_int_list(spec[3:], "basis index")
        if len(ids) != 2:
            raise ValueError("xi: needs two indices, e.g. xi:0,1")
        return spec, GroundStateCoeffs.xi(*ids), True
    if spec.startswith("coeffs:"):
        toks = spec[len("coeffs:"):].split(",")
        if len(toks) != 4:
            raise ValueError("coeffs: needs four complex amplitudes")
        try:
            amps = [complex(t) for t in toks]
        except ValueError:
            raise ValueError(f"bad complex literal in {spec!r}")
        norm = math.sqrt(sum(abs(a) ** 2 for a in amps))
        if abs(norm - 1) >= COEFF_NORM_SLACK:
            raise ValueError(
                f"coefficient norm {norm!r} is too far from 1 to renormalize"
            )
        if norm != 1:
            print(f"note: renormalizing coefficients (norm {norm!r})", file=sys.stderr)
        coeffs = GroundStateCoeffs.from_sequence(amps, renormalize=True)
        return spec, coeffs, False
    if spec.startswith("random:"):
        try:
            seed = int(spec[len("random:"):])
        except ValueError:
            raise ValueError(f"bad random seed in {spec!r}")
        return spec, GroundStateCoeffs.random(random.Random(seed)), False
    raise ValueError(f"unknown state spec {spec!r}")


# ---------------------------------------------------------------------------
# output helpers

def _json_default(x):
    raise TypeError(f"not JSON serializable: {x!r}")


def emit_json(obj, out) -> None:
    json.dump(obj, out, indent=2, default=_json_default)
    out.write("\n")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_rows_csv(rows: list[dict], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in CSV_COLUMNS])


def emit_rows_table(rows: list[dict], out) -> None:
    cells = [[_cell(r[c]) or "-" for c in CSV_COLUMNS] for r in rows]
    widths = [
        max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
        for i, h in enumerate(CSV_COLUMNS)
    ]
    out.write("  ".join(h.ljust(w) for h, w in zip(CSV_COLUMNS, widths)) + "\n")
    for c in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(c, widths)) + "\n")


# ---------------------------------------------------------------------------
# entropy command

def _state_entropy(lat: Lattice, parsed: ParsedPartition, coeffs, is_basis, report):
    """Best value for the requested state plus the closed-form entry."""
    closed = None
    if parsed.closed_form_name is not None and lat.torus_k is not None:
        closed = closed_form_entropy(
            parsed.closed_form_name,
            lat.torus_k,
            None if is_basis else coeffs,
        )
    if is_basis:
        return float(report.s_bits), closed
    if closed is not None:
        return closed, closed
    if parsed.is_disk:
        # disk entropy is the same for every ground state
        return float(report.s_bits), None
    return None, None


def cmd_entropy(args) -> int:
    lat = parse_lattice_spec(args.lattice)
    parsed = parse_partition_spec(lat, args.partition)
    label, coeffs, is_basis = parse_state_spec(args.state)
    if lat.torus_k is None and args.state != "xi:0,0":
        raise ValueError(
            "loaded lattices only support the plain equal superposition xi:0,0"
        )
    group = plaquette_group(lat) if args.group == "plaquettes" else star_group(lat)
    report = entropy_equal_superposition(group, parsed.partition)
    s_state, closed = _state_entropy(lat, parsed, coeffs, is_basis, report)

    geometric = geometric_entropy(parsed.stats) if parsed.is_disk else None
    oracle_s = None
    if args.oracle:
        if lat.torus_k is None:
            raise ValueError("the statevector oracle needs a torus lattice")
        oracle_s = oracle_entropy(
            lat,
            coeffs,
            parsed.partition,
            max_links=args.max_links,
            max_subsystem=args.max_subsystem,
            enum_max_rank=args.enum_cap,
        )

    mismatch = False
    if is_basis and closed is not None and closed != report.s_bits:
        mismatch = True
    if geometric is not None and geometric != report.s_bits:
        mismatch = True
    if oracle_s is not None and s_state is not None:
        if abs(oracle_s - s_state) > ORACLE_MATCH_TOL:
            mismatch = True

    stats = parsed.stats
    out = {
        "command": "entropy",
        "lattice": args.lattice,
        "partition": parsed.descriptor,
        "state": label,
        "group": args.group,
        "size_A": parsed.partition.size_a,
        "S_bits": report.s_bits,
        "log2_group": report.log2_group,
        "log2_inside_A": report.log2_inside_a,
        "log2_inside_B": report.log2_inside_b,
        "log2_free": report.log2_free,
        "diagonal": report.diagonal,
        "S": s_state,
        "S_closed_form": closed,
        "S_geometric": geometric,
        "L": stats.boundary_length if stats else None,
        "n1": stats.n1 if stats else None,
        "n2": stats.n2 if stats else None,
        "n3": stats.n3 if stats else None,
        "sigma_A": stats.sigma_a if stats else None,
        "sigma_B": stats.sigma_b if stats else None,
        "sigma_AB": stats.sigma_ab if stats else None,
        "oracle_S": oracle_s,
        "mismatch": mismatch,
    }
    if args.format == "json":
        emit_json(out, sys.stdout)
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(out.keys())
        writer.writerow([_cell(v) for v in out.values()])
    else:
        for key, value in out.items():
            print(f"{key}: {_cell(value) or '-'}")
    if mismatch:
        print(
            "error: closed-form/engine/oracle values disagree "
            f"(S_bits={report.s_bits}, closed={closed}, oracle={oracle_s})",
            file=sys.stderr,
        )
        return 1
    return 0


# ---------------------------------------------------------------------------
# verify command

def cmd_verify(args) -> int:
    lat = parse_lattice_spec(args.lattice)
    _, coeffs, is_basis = parse_state_spec(args.state)
    if not is_basis:
        raise ValueError(
            "verify compares the equal-superposition engine against the "
            "oracle, so the state must be a basis state xi:<i>,<j>"
        )
    suite = default_suite(lat)
    results = verify_partitions(lat, suite, coeffs, tol=args.tol)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        emit_json(
            {
                "command": "verify",
                "lattice": args.lattice,
                "state": args.state,
                "tol": args.tol,
                "results": [
                    {
                        "partition": r.name,
                        "S_engine": r.s_engine,
                        "S_oracle": r.s_oracle,
                        "deviation": r.deviation,
                        "passed": r.passed,
                    }
                    for r in results
                ],
                "max_deviation": max_deviation(results),
                "passed": not failed,
            },
            sys.stdout,
        )
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{status} {r.name}: engine={r.s_engine} "
                f"oracle={r.s_oracle!r} dev={r.deviation!r}"
            )
        print(
            f"{len(results) - len(failed)}/{len(results)} passed, "
            f"max deviation {max_deviation(results)!r}"
        )
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# scan command

def _scan_row(lat, group, descriptor, part, stats, closed, oracle_s) -> dict:
    report = entropy_equal_superposition(group, part)
    length = stats.boundary_length if stats else None
    lower, upper = entropy_bounds(length) if length is not None else (None, None)
    return {
        "partition": descriptor,
        "size_A": part.size_a,
        "L": length,
        "n1": stats.n1 if stats else None,
        "n2": stats.n2 if stats else None,
        "n3": stats.n3 if stats else None,
        "S_bits": report.s_bits,
        "S_closed_form": closed,
        "lower_bound": lower,
        "upper_bound": upper,
        "oracle_S": oracle_s,
    }


def _scan_partitions(args, lat) -> list[tuple[str, Partition, BoundaryStats | None, float | None]]:
    mode = args.mode
    if mode == "exhaustive":
        n = lat.n_links
        if n > args.scan_cap:
            raise ResourceLimitError(
                f"exhaustive scan over {n} links exceeds the {args.scan_cap}-link cap"
            )
        out = []
        for mask in range(1, (1 << n) - 1):
            part = Partition(n, mask)
            desc = "links:" + ",".join(map(str, part.a_links()))
            out.append((desc, part, _try_stats(lat, part), None))
        return out
    if mode == "sampled":
        _require_count_seed(args)
        rng = random.Random(args.seed)
        n = lat.n_links
        out = []
        for _ in range(args.count):
            size = rng.randint(1, n - 1)
            links = sorted(rng.sample(range(n), size))
            part = Partition.from_links(links, n)
            desc = "links:" + ",".join(map(str, links))
            out.append((desc, part, _try_stats(lat, part), None))
        return out
    if mode == "rects":
        _require_count_seed(args)
        rng = random.Random(args.seed)
        out = []
        for _ in range(args.count):
            part, stats = random_rectangle_region(lat, rng)
            desc = _disk_descriptor(lat, part)
            out.append((desc, part, stats, float(geometric_entropy(stats))))
        return out
    if mode == "disks":
        _require_count_seed(args)
        rng = random.Random(args.seed)
        out = []
        for _ in range(args.count):
            part, stats = random_simple_region(lat, rng)
            desc = _disk_descriptor(lat, part)
            out.append((desc, part, stats, float(geometric_entropy(stats))))
        return out
    if mode == "table1":
        if lat.torus_k is None:
            raise ValueError("table1 mode needs a torus lattice")
        k = lat.torus_k
        out = []
        for name in ("single_spin", "chain", "ladder", "cross", "vertical"):
            part = named_partition(lat, name)
            out.append(
                (name, part, _try_stats(lat, part), closed_form_entropy(name, k))
            )
        side = 2 if k >= 4 else 1
        part, stats = disk_region(lat, rect=(0, 0, side, side))
        out.append(
            (
                f"rect:0,0,{side},{side}",
                part,
                stats,
                float(geometric_entropy(stats)),
            )
        )
        return out
    raise ValueError(f"unknown scan mode {mode!r}")


def _require_count_seed(args) -> None:
    if args.count is None or args.count < 1:
        raise ValueError(f"mode {args.mode!r} needs --count >= 1")
    if args.seed is None:
        raise ValueError(f"mode {args.mode!r} needs --seed for reproducibility")


def _disk_descriptor(lat, part) -> str:
    inside = {
        s
        for s, links in enumerate(lat.star_links)
        if all((part.a_mask >> l) & 1 for l in links)
    }
    crossed = sorted(
        l
        for l, (a, b) in enumerate(lat.link_sites)
        if (a in inside) != (b in inside)
    )
    return "loop:" + ",".join(map(str, crossed))


def cmd_scan(args) -> int:
    lat = parse_lattice_spec(args.lattice)
    group = plaquette_group(lat) if args.group == "plaquettes" else star_group(lat)
    entries = _scan_partitions(args, lat)
    rows = []
    for desc, part, stats, closed in entries:
        oracle_s = None
        if args.oracle:
            if lat.torus_k is None:
                raise ValueError("the statevector oracle needs a torus lattice")
            oracle_s = oracle_entropy(
                lat,
                GroundStateCoeffs.xi(0, 0),
                part,
                max_links=args.max_links,
                max_subsystem=args.max_subsystem,
                enum_max_rank=args.enum_cap,
            )
        rows.append(_scan_row(lat, group, desc, part, stats, closed, oracle_s))
    rows.sort(key=lambda r: r["partition"])
    if args.format == "json":
        emit_json(
            {
                "command": "scan",
                "mode": args.mode,
                "lattice": args.lattice,
                "seed": args.seed,
                "count": args.count,
                "rows": rows,
            },
            sys.stdout,
        )
    elif args.format == "table":
        emit_rows_table(rows, sys.stdout)
    else:
        emit_rows_csv(rows, sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# lattice-info command

def cmd_lattice_info(args) -> int:
    lat = parse_lattice_spec(args.lattice)
    stars = star_group(lat)
    plaqs = plaquette_group(lat)
    info = {
        "command": "lattice-info",
        "lattice": args.lattice,
        "n_sites": lat.n_sites,
        "n_links": lat.n_links,
        "n_plaquettes": lat.n_plaquettes,
        "genus": lat.genus,
        "torus_k": lat.torus_k,
        "star_rank": stars.rank(),
        "plaquette_rank": plaqs.rank(),
        "independent_generators": independent_generator_count(lat)
        if lat.closed
        else None,
        "ground_degeneracy": ground_degeneracy(lat) if lat.closed else None,
    }
    if args.format == "json":
        emit_json(info, sys.stdout)
    else:
        for key, value in info.items():
            print(f"{key}: {_cell(value) or '-'}")
    return 0


# ---------------------------------------------------------------------------
# argument plumbing

def _add_common(sub, *, formats=("table", "csv", "json")) -> None:
    sub.add_argument("--lattice", required=True, help="torus:k=K or document path")
    sub.add_argument("--format", choices=formats, default=formats[0])
    sub.add_argument(
        "--max-links",
        type=int,
        default=MAX_ORACLE_LINKS,
        help="oracle statevector cap (links)",
    )
    sub.add_argument(
        "--max-subsystem",
        type=int,
        default=MAX_SUBSYSTEM_LINKS,
        help="oracle partial-trace cap (links kept)",
    )
    sub.add_argument(
        "--enum-cap",
        type=int,
        default=DEFAULT_ENUM_MAX_RANK,
        help="row-space enumeration cap (log2 of element count)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flipent",
        description="entanglement entropy of spin-flip stabilizer states",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("entropy", help="entropy of one partition in one state")
    _add_common(p)
    p.add_argument("--partition", required=True)
    p.add_argument("--state", default="xi:0,0")
    p.add_argument("--group", choices=("stars", "plaquettes"), default="stars")
    p.add_argument("--oracle", action="store_true", help="cross-check on the oracle")
    p.set_defaults(func=cmd_entropy)

    p = subs.add_parser("verify", help="oracle-vs-engine sweep (k <= 3)")
    _add_common(p, formats=("table", "json"))
    p.add_argument("--state", default="xi:0,0")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("scan", help="partition sweeps with boundary statistics")
    _add_common(p, formats=("csv", "json", "table"))
    p.add_argument(
        "--mode",
        choices=("exhaustive", "sampled", "rects", "disks", "table1"),
        default="exhaustive",
    )
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--group", choices=("stars", "plaquettes"), default="stars")
    p.add_argument("--oracle", action="store_true")
    p.add_argument(
        "--scan-cap",
        type=int,
        default=EXHAUSTIVE_SCAN_MAX_LINKS,
        help="exhaustive-mode link cap",
    )
    p.set_defaults(func=cmd_scan)

    p = subs.add_parser("lattice-info", help="counts, ranks and degeneracy")
    _add_common(p, formats=("table", "json"))
    p.set_defaults(func=cmd_lattice_info)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (LatticeFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
