"""Command-line harness.

  unitadvice gen real-family --m 1 --d 1 --all --out fam/
  unitadvice gen random --n 10 --d 2 --seed 7 --out rnd/
  unitadvice run --algorithm az inst.json --out transcript.json
  unitadvice verify-lb fam/manifest.json --out report.json
  unitadvice sweep --algorithm a1 --algorithm grid --count 100 --n 50 --seed 1 --out sweep.csv

Exit status: 0 success, 1 failed verdict (non-optimal run, failed lower-bound
check), 2 usage or capability error.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import io
from .algorithms import OracleError, REGISTRY, get_algorithm
from .geometry import DEFAULT_SCALE, Instance, random_instance
from .lower_bounds import (
    PAPER_FORMULA,
    RECONSTRUCTED,
    FamilySpec,
    build,
    family_specs,
    min_advice_lower_bound,
    proposition1_check,
)
from .offline import InstanceTooLarge, default_search_cap
from .runtime import TapeUnderrun, solve

CSV_SCHEMA_VERSION = "1"
CSV_COLUMNS = [
    "schema_version", "algorithm", "instance", "n", "d", "bits_read", "claimed_bits",
    "over_claim", "clusters_used", "optimal", "ratio", "verdict", "error",
]


class UsageError(Exception):
    pass


def _parse_j(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"cannot parse --j {text!r}") from None


def _j_tag(j: Sequence[int]) -> str:
    return "".join({-1: "m", 0: "0", 1: "p"}[x] for x in j)


# ---------- gen ----------

def _family_entries(args) -> Tuple[List[FamilySpec], int]:
    lattice = args.kind == "int-family"
    if args.m is None or args.d is None:
        raise UsageError("--m and --d are required for family generation")
    variant = args.int_variant if lattice else RECONSTRUCTED
    if args.all == (args.j is not None):
        raise UsageError("give exactly one of --j or --all")
    try:
        if args.all:
            specs = family_specs(args.m, args.d, lattice, variant)
        else:
            specs = [FamilySpec(args.m, args.d, lattice, _parse_j(args.j), variant)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return specs, specs[0].prefix_length


def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    if args.kind == "random":
        if args.n is None:
            raise UsageError("--n is required for random generation")
        rng = random.Random(args.seed)
        for idx in range(args.count):
            inst = random_instance(rng, args.n, args.d or 1, args.lo, args.hi, args.scale,
                                   args.lattice, args.distinct)
            name = f"random_{idx:04d}.json"
            io.write_instance(inst, out / name)
            entries.append({"file": name})
        params = {"n": args.n, "d": args.d or 1, "lo": args.lo, "hi": args.hi, "scale": args.scale,
                  "lattice": args.lattice, "distinct": args.distinct, "seed": args.seed,
                  "count": args.count}
        manifest = {"kind": "random", "params": params, "instances": entries}
    else:
        specs, k = _family_entries(args)
        for spec in specs:
            name = f"{'int' if spec.lattice else 'real'}_m{spec.m}_d{spec.d}_{_j_tag(spec.j)}.json"
            io.write_instance(build(spec, args.shuffle_seed), out / name)
            entries.append({"file": name, "spec": spec.to_dict()})
        manifest = {"kind": args.kind, "params": {"m": args.m, "d": args.d,
                    "variant": specs[0].variant, "shuffle_seed": args.shuffle_seed},
                    "prefix_length": k, "instances": entries}
    io.write_manifest(manifest, out / "manifest.json")
    print(f"wrote {len(entries)} instance files to {out}")
    return 0


# ---------- run ----------

def cmd_run(args) -> int:
    inst = io.read_instance(args.instance)
    algo = get_algorithm(args.algorithm, args.cap)
    tr = solve(algo, inst, cap=args.cap)
    if args.out:
        io.write_transcript(tr, args.out)
    flag = " OVER-CLAIM" if tr.over_claim else ""
    print(f"{tr.algorithm}: n={tr.n} bits={tr.bits_read} ({tr.bit_string or '-'}) "
          f"clusters={tr.clusters_used} optimal={tr.optimal} verdict={tr.verdict}{flag}")
    if not algo.reads_advice:
        return 0
    return 0 if tr.verdict == "optimal" else 1


# ---------- verify-lb ----------

def cmd_verify(args) -> int:
    manifest_path = Path(args.manifest)
    manifest = io.read_manifest(manifest_path)
    base = manifest_path.parent
    family = [io.read_instance(base / e["file"]) for e in manifest["instances"]]
    cap = default_search_cap() if args.cap is None else args.cap
    too_big = [e["file"] for e, inst in zip(manifest["instances"], family) if inst.n > cap]
    if too_big:
        print(f"instance too large for exact search (cap={cap}): {', '.join(too_big)}", file=sys.stderr)
        return 2
    k = args.k if args.k is not None else manifest.get("prefix_length")
    if k is None:
        raise UsageError("manifest has no prefix_length; pass --k")
    report = proposition1_check(family, k, cap)
    lattice = manifest["kind"] == "int-family"
    n_max = max(inst.n for inst in family)
    bound = min_advice_lower_bound(n_max, family[0].dim, lattice)
    result = {
        "manifest": manifest_path.name,
        "report": report.to_dict(),
        "files": [e["file"] for e in manifest["instances"]],
        "max_length": n_max,
        "bound_at_max_length": str(bound),
        "bound_at_max_length_numeric": bound.render(),
        "implied_bits_meet_bound": report.implied_bits >= float(bound),
    }
    if args.out:
        Path(args.out).write_text(io.dumps(result))
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: family={report.family_size} prefix={k} implied_bits={report.implied_bits} "
          f"bound(n={n_max})={bound.render(3)}")
    return 0 if report.passed else 1


# ---------- sweep ----------

def _sweep_row(job) -> Dict[str, object]:
    name, label, inst, cap = job
    row: Dict[str, object] = {c: "" for c in CSV_COLUMNS}
    row.update(schema_version=CSV_SCHEMA_VERSION, algorithm=name, instance=label, n=inst.n, d=inst.dim)
    try:
        tr = solve(get_algorithm(name, cap), inst, cap=cap)
    except (ValueError, OracleError, TapeUnderrun, InstanceTooLarge) as exc:
        row["verdict"] = "error"
        row["error"] = str(exc).replace("\n", " ")
        return row
    ratio = f"{tr.clusters_used / tr.optimal:.6f}" if tr.optimal else ""
    row.update(bits_read=tr.bits_read, claimed_bits="" if tr.claimed_bits is None else tr.claimed_bits,
               over_claim=int(tr.over_claim), clusters_used=tr.clusters_used,
               optimal="" if tr.optimal is None else tr.optimal, ratio=ratio, verdict=tr.verdict)
    return row


def _summary(name: str, rows: List[Dict[str, object]]) -> Dict[str, object]:
    ok = [r for r in rows if r["verdict"] != "error"]
    ratios = [float(r["ratio"]) for r in ok if r["ratio"] != ""]
    summary: Dict[str, object] = {c: "" for c in CSV_COLUMNS}
    summary.update(
        schema_version=CSV_SCHEMA_VERSION, algorithm=name, instance="SUMMARY", n=len(rows),
        bits_read=sum(int(r["bits_read"]) for r in ok),
        over_claim=sum(int(r["over_claim"]) for r in ok),
        clusters_used=sum(int(r["clusters_used"]) for r in ok),
        optimal=sum(int(r["optimal"]) for r in ok if r["optimal"] != ""),
        ratio=f"{max(ratios):.6f}" if ratios else "",
        verdict=f"{sum(r['verdict'] == 'optimal' for r in ok)}/{len(rows)} optimal",
        error=len(rows) - len(ok),
    )
    return summary


def _sweep_instances(args) -> List[Tuple[str, Instance]]:
    if args.family:
        lattice = args.family == "int"
        variant = args.int_variant if lattice else RECONSTRUCTED
        out = []
        for m in range(args.m_min, args.m_max + 1):
            for spec in family_specs(m, args.d or 1, lattice, variant):
                out.append((f"{args.family}_m{m}_d{spec.d}_{_j_tag(spec.j)}", build(spec)))
        return out
    if args.n is None:
        raise UsageError("--n is required for random sweeps")
    rng = random.Random(args.seed)
    n_min = args.n if args.n_min is None else args.n_min
    out = []
    for idx in range(args.count):
        n = rng.randint(n_min, args.n)
        inst = random_instance(rng, n, args.d or 1, args.lo, args.hi, args.scale, args.lattice, args.distinct)
        out.append((f"random_{idx:04d}", inst))
    return out


def sweep_csv(args) -> str:
    instances = _sweep_instances(args)
    jobs = [(name, label, inst, args.cap) for name in args.algorithm for label, inst in instances]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_row, jobs, chunksize=16))
    else:
        rows = [_sweep_row(job) for job in jobs]
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for name in args.algorithm:
        mine = [r for r in rows if r["algorithm"] == name]
        writer.writerows(mine)
        writer.writerow(_summary(name, mine))
    return buf.getvalue()


def cmd_sweep(args) -> int:
    text = sweep_csv(args)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------- parser ----------

def _add_random_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--lo", type=int, default=0, help="lower coordinate bound (real units)")
    p.add_argument("--hi", type=int, default=10, help="upper coordinate bound (real units)")
    p.add_argument("--scale", type=int, default=DEFAULT_SCALE)
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unitadvice", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate instance files and a manifest")
    g.add_argument("kind", choices=["real-family", "int-family", "random"])
    g.add_argument("--m", type=int)
    g.add_argument("--j")
    g.add_argument("--all", action="store_true")
    g.add_argument("--int-variant", choices=[RECONSTRUCTED, PAPER_FORMULA], default=RECONSTRUCTED)
    g.add_argument("--shuffle-seed", type=int)
    g.add_argument("--out", required=True)
    _add_random_opts(g)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run one algorithm with its oracle on an instance file")
    r.add_argument("instance")
    r.add_argument("--algorithm", required=True, choices=sorted(REGISTRY))
    r.add_argument("--out")
    r.add_argument("--cap", type=int)
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify-lb", help="check a family manifest for distinct advice words")
    v.add_argument("manifest")
    v.add_argument("--k", type=int)
    v.add_argument("--cap", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run algorithms over many instances, write CSV")
    s.add_argument("--algorithm", action="append", required=True, choices=sorted(REGISTRY))
    s.add_argument("--family", choices=["real", "int"])
    s.add_argument("--m-min", type=int, default=1)
    s.add_argument("--m-max", type=int, default=1)
    s.add_argument("--int-variant", choices=[RECONSTRUCTED, PAPER_FORMULA], default=RECONSTRUCTED)
    s.add_argument("--n-min", type=int)
    s.add_argument("--cap", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    _add_random_opts(s)
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (InstanceTooLarge, OracleError, TapeUnderrun, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
