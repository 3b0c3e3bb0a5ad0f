"""Command-line front end.

Subcommands: check, solve, bounds, optimize, mixed-check, catalog.
Exit codes: 0 success (for check/mixed-check: the vector is an equilibrium),
1 checked vector is not an equilibrium, 2 input or usage error.
All reports are also available as JSON via --json; rationals are always
rendered as exact strings.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import bounds as bounds_mod
from . import mixed as mixed_mod
from . import segments
from .catalog import MNE, NEAR_OPT, NOT_EQUILIBRIUM, PNE, ReferenceVector
from .catalog import catalog as build_catalog
from .game import (
    GameInstance,
    best_response_dynamics,
    is_pure_nash,
    player_cost,
    social_cost,
    structure_report,
)
from .instance_io import InstanceFormatError, document_dict, load_instance, write_instance
from .optimize import OptimizerConfig, optimize_social_cost
from .rationals import format_rational, parse_rational

_R = format_rational


def _emit(report: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _pure_check_report(inst: GameInstance, opinions) -> tuple[dict, list[str], bool]:
    verdict = is_pure_nash(inst, opinions)
    costs = [player_cost(inst, opinions, i) for i in range(inst.n)]
    sc = social_cost(inst, opinions)
    structure = structure_report(inst, opinions)
    report = {
        "pne": verdict.is_pne,
        "social_cost": _R(sc),
        "player_costs": [_R(c) for c in costs],
        "tie_seen": verdict.tie_seen,
        "violations": [
            {
                "player": v.player,
                "best_reply": _R(v.best_reply),
                "cost_drop": _R(v.cost_drop),
            }
            for v in verdict.violations
        ],
        "structure": {
            "monotone": structure.monotone,
            "in_belief_range": structure.in_belief_range,
            "consecutive_neighborhoods": structure.consecutive_neighborhoods,
        },
    }
    lines = [
        f"PNE: {'yes' if verdict.is_pne else 'no'}, SC = {_R(sc)}",
        "player costs: " + ", ".join(_R(c) for c in costs),
    ]
    if verdict.tie_seen:
        lines.append("note: an exact neighbor-distance tie occurred during verification")
    for v in verdict.violations:
        lines.append(
            f"  player {v.player} improves by moving to {_R(v.best_reply)}"
            f" (cost drop {_R(v.cost_drop)})"
        )
    lines.append(
        "structure: monotone={monotone} in_belief_range={in_belief_range} "
        "consecutive_neighborhoods={consecutive_neighborhoods}".format(
            **report["structure"]
        )
    )
    return report, lines, verdict.is_pne


def _mixed_check_report(inst: GameInstance, rz) -> tuple[dict, list[str], bool]:
    verdict = mixed_mod.is_mixed_nash(inst, rz)
    expected = [mixed_mod.expected_player_cost(inst, rz, i) for i in range(inst.n)]
    esc = mixed_mod.expected_social_cost(inst, rz)
    report = {
        "mne": verdict.is_mne,
        "expected_social_cost": _R(esc),
        "expected_player_costs": [_R(c) for c in expected],
        "violations": [
            {
                "player": v.player,
                "deviation": _R(v.deviation),
                "improvement": _R(v.improvement),
            }
            for v in verdict.violations
        ],
    }
    lines = [
        f"MNE: {'yes' if verdict.is_mne else 'no'}, E[SC] = {_R(esc)}",
        "expected player costs: " + ", ".join(_R(c) for c in expected),
    ]
    for v in verdict.violations:
        lines.append(
            f"  player {v.player} improves by deviating to {_R(v.deviation)}"
            f" (expected improvement {_R(v.improvement)})"
        )
    return report, lines, verdict.is_mne


def _cmd_check(args) -> int:
    try:
        doc = load_instance(args.file)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    if doc.opinions is None and doc.mixed is None:
        return _fail('the file must contain "opinions" or "mixed" to check')
    report: dict = {}
    lines: list[str] = []
    ok = True
    if doc.opinions is not None:
        sub, sublines, good = _pure_check_report(doc.instance, doc.opinions)
        report["pure"] = sub
        lines.extend(sublines)
        ok = ok and good
    if doc.mixed is not None:
        sub, sublines, good = _mixed_check_report(doc.instance, doc.mixed)
        report["mixed"] = sub
        lines.extend(sublines)
        ok = ok and good
    _emit(report, args.json, lines)
    return 0 if ok else 1


def _cmd_mixed_check(args) -> int:
    try:
        doc = load_instance(args.file)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    if doc.mixed is None:
        return _fail('the file must contain a "mixed" field')
    report, lines, ok = _mixed_check_report(doc.instance, doc.mixed)
    _emit(report, args.json, lines)
    return 0 if ok else 1


def _cmd_solve(args) -> int:
    try:
        doc = load_instance(args.file)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    inst = doc.instance
    if inst.k == 1:
        graph = segments.build_segment_graph(inst)
        best = segments.best_pne(inst)
        worst = segments.worst_pne(inst)
        report: dict = {
            "k": 1,
            "legit_segments": [
                {"a": s.a, "b": s.b, "c": s.c, "weight": _R(s.weight)}
                for s in graph.segments
            ],
            "exists_pne": best is not None,
        }
        lines = [f"legit segments: {len(graph.segments)}"]
        if best is None:
            lines.append("no pure Nash equilibrium exists")
        else:
            bz, bc = best
            wz, wc = worst
            report["best"] = {"opinions": [_R(v) for v in bz], "social_cost": _R(bc)}
            report["worst"] = {"opinions": [_R(v) for v in wz], "social_cost": _R(wc)}
            lines.append(f"best PNE:  SC = {_R(bc)}  z = ({', '.join(_R(v) for v in bz)})")
            lines.append(f"worst PNE: SC = {_R(wc)}  z = ({', '.join(_R(v) for v in wz)})")
        if args.enumerate:
            found = segments.enumerate_pne(inst, args.enumerate)
            report["enumerated"] = [
                {"opinions": [_R(v) for v in z], "social_cost": _R(c)} for z, c in found
            ]
            lines.append(f"enumerated {len(found)} equilibria (limit {args.enumerate}):")
            for z, c in found:
                lines.append(f"  SC = {_R(c)}  z = ({', '.join(_R(v) for v in z)})")
        if args.dot:
            Path(args.dot).write_text(segments.to_dot(graph) + "\n", encoding="utf-8")
            report["dot"] = args.dot
            lines.append(f"wrote segment graph to {args.dot}")
        _emit(report, args.json, lines)
        return 0

    result = best_response_dynamics(inst, inst.beliefs, max_rounds=args.rounds)
    report = {
        "k": inst.k,
        "dynamics_outcome": result.outcome,
        "rounds": result.rounds,
    }
    lines = [
        f"k={inst.k}: best-response dynamics from the beliefs "
        f"ran {result.rounds} rounds, outcome: {result.outcome}"
    ]
    if result.outcome == "converged":
        verdict = is_pure_nash(inst, result.opinions)
        sc = social_cost(inst, result.opinions)
        report["opinions"] = [_R(v) for v in result.opinions]
        report["social_cost"] = _R(sc)
        report["pne"] = verdict.is_pne
        lines.append(
            f"found PNE: {'yes' if verdict.is_pne else 'no'}, SC = {_R(sc)}, "
            f"z = ({', '.join(_R(v) for v in result.opinions)})"
        )
    else:
        lines.append("no pure Nash equilibrium found")
    _emit(report, args.json, lines)
    return 0


def _cmd_bounds(args) -> int:
    try:
        doc = load_instance(args.file)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    inst = doc.instance
    known = None
    if inst.k >= 2 and doc.opinions is not None and is_pure_nash(inst, doc.opinions).is_pne:
        known = doc.opinions
    starts = [doc.opinions] if doc.opinions is not None else []
    bracket = bounds_mod.poa_bracket(
        inst, known_pne=known, use_optimizer=not args.no_opt, reference_starts=starts
    )
    caps = [bounds_mod.pne_player_cost_cap(inst, i) for i in range(inst.n)]
    report: dict = {
        "opt_lower_bound_k": _R(bounds_mod.opt_lower_bound_k(inst)),
        "player_cost_caps": [_R(c) for c in caps],
        "opt_lower": _R(bracket.opt_lower),
        "opt_upper": _R(bracket.opt_upper),
        "worst_pne_cost": None if bracket.worst_pne_cost is None else _R(bracket.worst_pne_cost),
        "ratio_lower": None if bracket.ratio_lower is None else _R(bracket.ratio_lower),
        "ratio_upper": None if bracket.ratio_upper is None else _R(bracket.ratio_upper),
        "ratio_upper_unbounded": bracket.ratio_upper_unbounded,
    }
    lines = [f"opt lower bound (window form): {report['opt_lower_bound_k']}"]
    if inst.k == 1:
        lb1 = bounds_mod.opt_lower_bound_1(inst)
        report["opt_lower_bound_1"] = _R(lb1)
        lines.append(f"opt lower bound (nearest-belief form): {_R(lb1)}")
        caps1 = [bounds_mod.pne_player_cost_cap_1(inst, i) for i in range(inst.n)]
        report["player_cost_caps_1"] = [_R(c) for c in caps1]
    lines.append("per-player PNE cost caps: " + ", ".join(report["player_cost_caps"]))
    lines.append(f"optimal social cost in [{report['opt_lower']}, {report['opt_upper']}]")
    if bracket.worst_pne_cost is None:
        lines.append("worst PNE cost: unavailable (no equilibrium known)")
    else:
        lines.append(f"worst PNE cost: {report['worst_pne_cost']}")
        if bracket.ratio_lower is not None:
            lines.append(f"instance PoA >= {report['ratio_lower']}")
        if bracket.ratio_upper_unbounded:
            lines.append("instance PoA upper estimate: unbounded (lower bound is zero)")
        elif bracket.ratio_upper is not None:
            lines.append(f"instance PoA <= {report['ratio_upper']}")
    _emit(report, args.json, lines)
    return 0


def _cmd_optimize(args) -> int:
    try:
        doc = load_instance(args.file)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    cfg = OptimizerConfig(
        candidate_grid_extra=args.grid_extra,
        max_sweeps=args.sweeps,
        restarts=args.restarts,
        seed=args.seed,
    )
    starts = [doc.opinions] if doc.opinions is not None else []
    z, cost = optimize_social_cost(doc.instance, cfg, starts=starts)
    report = {"opinions": [_R(v) for v in z], "social_cost": _R(cost)}
    _emit(
        report,
        args.json,
        [f"SC <= {_R(cost)}", f"z = ({', '.join(_R(v) for v in z)})"],
    )
    return 0


def _verdict_of(inst: GameInstance, ref: ReferenceVector) -> tuple[str, Fraction]:
    if ref.mixed is not None:
        cost = mixed_mod.expected_social_cost(inst, ref.mixed)
        verdict = MNE if mixed_mod.is_mixed_nash(inst, ref.mixed).is_mne else NOT_EQUILIBRIUM
        return verdict, cost
    cost = social_cost(inst, ref.opinions)
    if ref.verdict in (PNE, NOT_EQUILIBRIUM):
        verdict = PNE if is_pure_nash(inst, ref.opinions).is_pne else NOT_EQUILIBRIUM
    else:
        verdict = NEAR_OPT  # cost-only reference
    return verdict, cost


def _cmd_catalog(args) -> int:
    try:
        lam = parse_rational(args.lam)
        eps = parse_rational(args.epsilon)
        entries = build_catalog(args.k, lam, eps, verify=False)
    except (ValueError, KeyError) as exc:
        return _fail(str(exc))

    rows = []
    for entry in entries:
        for ref in entry.references:
            got_verdict, got_cost = _verdict_of(entry.instance, ref)
            rows.append(
                {
                    "entry": entry.name,
                    "reference": ref.tag,
                    "expected_verdict": ref.verdict,
                    "recomputed_verdict": got_verdict,
                    "expected_cost": _R(ref.expected_cost),
                    "recomputed_cost": _R(got_cost),
                    "match": got_verdict == ref.verdict and got_cost == ref.expected_cost,
                }
            )

    header = (
        "| entry | reference | expected verdict | recomputed | expected cost "
        "| recomputed cost | match |"
    )
    sep = "|---|---|---|---|---|---|---|"
    lines = [header, sep]
    for r in rows:
        lines.append(
            f"| {r['entry']} | {r['reference']} | {r['expected_verdict']} "
            f"| {r['recomputed_verdict']} | {r['expected_cost']} "
            f"| {r['recomputed_cost']} | {'match' if r['match'] else 'MISMATCH'} |"
        )

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for entry in entries:
            write_instance(out / f"{entry.name}.json", entry.instance)
            for ref in entry.references:
                write_instance(
                    out / f"{entry.name}__{ref.tag}.json",
                    entry.instance,
                    opinions=ref.opinions,
                    mixed=ref.mixed,
                )
        with open(out / "reproduction.csv", "w", newline="", encoding="utf-8") as fp:
            writer = csv.DictWriter(fp, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        (out / "reproduction.md").write_text("\n".join(lines) + "\n", encoding="utf-8")
        lines.append(f"wrote {len(entries)} instances and the reproduction table to {out}")

    _emit({"rows": rows}, args.json, lines)
    return 0 if all(r["match"] for r in rows) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kcof",
        description="Exact solver and verifier for compromise games on the line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the opinions (and/or mixed profile) in a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("solve", help="k=1: segment-graph solve; k>=2: best-response dynamics")
    p.add_argument("file")
    p.add_argument("--enumerate", type=int, default=0, metavar="N")
    p.add_argument("--dot", metavar="PATH", help="write the segment DAG in DOT format (k=1)")
    p.add_argument("--rounds", type=int, default=1000, help="dynamics round cap (k>=2)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bounds", help="closed-form bounds and the PoA bracket")
    p.add_argument("file")
    p.add_argument("--no-opt", action="store_true", help="skip the optimizer upper bound")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("optimize", help="heuristic upper bound on the optimal social cost")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--sweeps", type=int, default=200)
    p.add_argument("--grid-extra", type=int, default=2)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("mixed-check", help="verify the mixed profile in a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_mixed_check)

    p = sub.add_parser("catalog", help="emit catalog instances and the reproduction table")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lambda", dest="lam", default="1/2", metavar="Q")
    p.add_argument("--epsilon", default="1/8", metavar="Q")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
