"""Command-line front door: validate, generate, verify, report, compare, synth.

Exit codes: 0 success/accepted, 1 rejected or no schedule produced,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import dataio, synth
from .domain import DomainError, PoolInstance, Schedule
from .heuristic import DEFAULT_ITERATION_LIMIT, run_repair, swap_log_jsonl
from .oracle import brute_force_solve
from .stages import APPROXIMATE, EXACT, solve_two_stage
from .verify import verify

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2

_MODES = {"approx": APPROXIMATE, "approximate": APPROXIMATE, "exact": EXACT}


def _load(path: str) -> PoolInstance:
    try:
        return dataio.load_instance(path)
    except (DomainError, OSError) as exc:
        raise SystemExit(_fail(f"cannot load instance {path}: {exc}", EXIT_INPUT))


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _generate_one(
    instance: PoolInstance, mode: str, time_limit: float | None, iteration_limit: int
) -> tuple[Schedule | None, object, list]:
    out1, out2 = solve_two_stage(instance, mode=mode, time_limit_per_stage=time_limit)
    if out1.schedule is None:
        return None, None, []
    schedule = out2.schedule if out2 is not None and out2.schedule is not None else out1.schedule
    swaps = []
    if mode == APPROXIMATE:
        res = run_repair(schedule, instance, iteration_limit)
        schedule = res.schedule
        swaps = res.swap_log
        if res.hit_iteration_limit:
            print("warning: reassignment iteration limit reached", file=sys.stderr)
    return schedule, verify(schedule, instance), swaps


def cmd_validate(args) -> int:
    instance = _load(args.instance)
    print(
        f"ok: {instance.n} nurses, {instance.q} shifts x {instance.r} blocks, "
        f"total demand {instance.total_demand}"
    )
    return EXIT_OK


def _run_generate(args, instance_path: str) -> int:
    instance = _load(instance_path)
    mode = _MODES[args.mode]
    schedule, report, swaps = _generate_one(
        instance, mode, args.time_limit, args.iteration_limit
    )
    if schedule is None:
        return _fail("no solution: solver hit the time limit without a schedule", EXIT_REJECTED)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(instance_path).stem
    dataio.save_schedule(schedule, instance, out / f"{stem}.schedule.csv")
    dataio.export_report(report, schedule, out / f"{stem}.report.json")
    if swaps:
        (out / f"{stem}.swaps.jsonl").write_text(swap_log_jsonl(swaps) + "\n")
    print(f"{stem}: {report.verdict}, unfilled {int(schedule.S.sum())}")
    return EXIT_OK if report.accepted else EXIT_REJECTED


def cmd_generate(args) -> int:
    paths = [args.instance]
    if args.instance.endswith(".manifest.json"):
        doc = json.loads(Path(args.instance).read_text())
        base = Path(args.instance).parent
        paths = [str(base / p) for p in doc["pools"]]
    if len(paths) == 1:
        return _run_generate(args, paths[0])
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        codes = list(pool.map(lambda p: _run_generate(args, p), paths))
    return max(codes)


def cmd_verify(args) -> int:
    instance = _load(args.instance)
    try:
        schedule = dataio.load_schedule(args.schedule, instance)
    except (DomainError, OSError, ValueError, IndexError) as exc:
        return _fail(f"cannot load schedule {args.schedule}: {exc}", EXIT_INPUT)
    report = verify(schedule, instance)
    print(report.verdict)
    for f in report.general_rule_failures:
        print(f"general rule {f.rule}: nurse={f.nurse} shift={f.shift} block={f.block} ({f.detail})")
    for v in report.armstrong_violations:
        if not v.justified:
            print(
                f"seniority rule {v.rule}: block={v.block} senior={v.senior} "
                f"junior={v.junior} deficient={v.deficient} (unjustified)"
            )
    for cell in report.code_grid.incomplete:
        print(f"schedulable shift left unassigned: nurse={cell[0]} shift={cell[1]} block={cell[2]}")
    return EXIT_OK if report.accepted else EXIT_REJECTED


def cmd_report(args) -> int:
    instance = _load(args.instance)
    try:
        schedule = dataio.load_schedule(args.schedule, instance)
    except (DomainError, OSError, ValueError, IndexError) as exc:
        return _fail(f"cannot load schedule {args.schedule}: {exc}", EXIT_INPUT)
    report = verify(schedule, instance)
    target = args.out or (args.schedule + ".report.json")
    dataio.export_report(report, schedule, target)
    print(f"{report.verdict}: report written to {target}")
    return EXIT_OK if report.accepted else EXIT_REJECTED


def cmd_compare(args) -> int:
    instance = _load(args.instance)
    rows = []
    for label, mode in (("exact", EXACT), ("approx+repair", APPROXIMATE)):
        t0 = time.monotonic()
        schedule, report, _ = _generate_one(
            instance, mode, args.time_limit, args.iteration_limit
        )
        elapsed = time.monotonic() - t0
        if schedule is None:
            rows.append((label, "-", "-", f"{elapsed:.1f}s (no solution)"))
            continue
        unfilled = int(schedule.S.sum())
        pct = report.preference_summary.percent_first_preference
        rows.append(
            (label, f"{unfilled} ({instance.total_demand})",
             "-" if pct is None else f"{pct:.0f}%", f"{elapsed:.1f}s")
        )
    try:
        t0 = time.monotonic()
        orc = brute_force_solve(instance, max_candidates=200_000)
        rows.append(
            ("oracle", f"{instance.total_demand - orc.demand_filled} ({instance.total_demand})",
             "-", f"{time.monotonic() - t0:.1f}s")
        )
    except ValueError:
        pass
    print(f"{'mode':<14} {'unfilled (total)':<18} {'% first pref':<13} time")
    for row in rows:
        print(f"{row[0]:<14} {row[1]:<18} {row[2]:<13} {row[3]}")
    return EXIT_OK


def cmd_synth(args) -> int:
    makers = {
        "tiny": synth.tiny_instance,
        "midsize": synth.midsize_instance,
        "small-exact": synth.small_exact_instance,
        "capped-demand": synth.capped_demand_instance,
    }
    instance = makers[args.kind](args.seed)
    dataio.save_instance(instance, args.out)
    print(f"wrote {args.kind} instance (seed {args.seed}) to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wardroster", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check an instance file")
    v.add_argument("instance")
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("generate", help="solve an instance (or a .manifest.json of pools)")
    g.add_argument("instance")
    g.add_argument("--mode", choices=sorted(_MODES), default="approx")
    g.add_argument("--time-limit", type=float, default=None, help="seconds per stage")
    g.add_argument("--iteration-limit", type=int, default=DEFAULT_ITERATION_LIMIT)
    g.add_argument("--out", default=None, help="output directory")
    g.add_argument("--jobs", type=int, default=1, help="parallel pools for manifests")
    g.set_defaults(func=cmd_generate)

    for name, fn in (("verify", cmd_verify), ("report", cmd_report)):
        s = sub.add_parser(name, help=f"{name} a schedule against an instance")
        s.add_argument("instance")
        s.add_argument("schedule")
        if name == "report":
            s.add_argument("--out", default=None)
        s.set_defaults(func=fn)

    c = sub.add_parser("compare", help="run both modes (and the oracle when small)")
    c.add_argument("instance")
    c.add_argument("--time-limit", type=float, default=None)
    c.add_argument("--iteration-limit", type=int, default=DEFAULT_ITERATION_LIMIT)
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("synth", help="write a seeded random instance")
    s.add_argument("--kind", choices=["tiny", "midsize", "small-exact", "capped-demand"], default="midsize")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_synth)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        raise
    except DomainError as exc:
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
