"""Command-line interface.

Subcommands: ``solve`` (winning bundle, score, per-voter utilities),
``check-winner`` (co-winner test for a given bundle), ``find-donation``
(search for a utility-improving reallocation), ``check-axiom`` (refute one
desideratum on a supplied perturbation) and ``fuzz`` (seeded random search
for counterexamples).  Exit codes: 0 success / holds / witness found, 1 for a
negative answer or a violation, 2 usage or input errors, 3 infeasible
instance, 4 resource cap exceeded.  With ``--json``, machine-readable output
goes to stdout and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .axioms import (
    AxiomId,
    FuzzConfig,
    Violation,
    check_no_harm,
    check_project_mono,
    check_voter_mono,
    check_welfare_mono,
    fuzz,
)
from .donation import find_improving_donation
from .model import Bundle, Infeasible, Instance, ResourceLimit
from .scoring import Aggregator, UtilityFlavor, score, utility
from .serialize import ParseError, ValidationError, instance_to_document, parse_instance
from .solve import RuleSpec, Variant
from .variants import variant_cowinners, winner

RULES = {
    "add-sum": (UtilityFlavor.ADDITIVE, Aggregator.SUM),
    "max-sum": (UtilityFlavor.MAXIMUM, Aggregator.SUM),
    "add-min": (UtilityFlavor.ADDITIVE, Aggregator.MIN),
    "max-min": (UtilityFlavor.MAXIMUM, Aggregator.MIN),
}

VARIANTS = {
    "plain": Variant.PLAIN,
    "sequential": Variant.SEQUENTIAL,
    "pareto": Variant.PARETO,
}

AXIOMS = {
    "no-harm": AxiomId.NO_HARM,
    "project-mono": AxiomId.PROJECT_MONO,
    "welfare-mono": AxiomId.WELFARE_MONO,
    "voter-mono": AxiomId.VOTER_MONO,
}


class _UsageError(Exception):
    pass


def _rule(args) -> RuleSpec:
    flavor, agg = RULES[args.rule]
    return RuleSpec(flavor, agg, VARIANTS[args.variant])


def _load_instance(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    return parse_instance(text)


def _parse_bundle(instance: Instance, text: str) -> Bundle:
    names = [part.strip() for part in text.split(",") if part.strip()]
    try:
        return Bundle.of(instance.project_index(name) for name in names)
    except KeyError as exc:
        raise _UsageError(str(exc.args[0])) from exc
    except ValueError as exc:
        raise _UsageError(f"bad bundle {text!r}: {exc}") from exc


def _bundle_names(instance: Instance, bundle: Bundle) -> list[str]:
    return [instance.projects[j].name for j in bundle]


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _violation_payload(instance: Instance, violation: Violation) -> dict:
    payload = {
        "axiom": violation.axiom.value,
        "voter": None if violation.voter is None else instance.voters[violation.voter].name,
        "winner_before": _bundle_names(instance, violation.winner_before),
        "winner_after": _bundle_names(instance, violation.winner_after),
        "value_before": violation.value_before,
        "value_after": violation.value_after,
        "perturbation": None,
    }
    if violation.perturbation is not None:
        p = violation.perturbation
        payload["perturbation"] = {
            "voter": instance.voters[p.voter].name,
            "project": instance.projects[p.project].name,
            "old": p.old,
            "new": p.new,
        }
    return payload


def _cmd_solve(args) -> int:
    instance = _load_instance(args.input)
    rule = _rule(args)
    bundle = winner(rule, instance)
    utilities = {
        v.name: utility(rule.flavor, instance, v.id, bundle) for v in instance.voters
    }
    total = score(rule.flavor, rule.agg, instance, bundle)
    names = _bundle_names(instance, bundle)
    human = "winner: {}\nscore: {}\n{}".format(
        ", ".join(names) if names else "(empty)",
        total,
        "\n".join(f"utility {name}: {value}" for name, value in utilities.items()),
    )
    _emit(
        args,
        {
            "bundle": names,
            "score": total,
            "utilities": utilities,
            "rule": args.rule,
            "variant": args.variant,
        },
        human,
    )
    return 0


def _cmd_check_winner(args) -> int:
    instance = _load_instance(args.input)
    rule = _rule(args)
    bundle = _parse_bundle(instance, args.bundle)
    yes = bundle in variant_cowinners(rule, instance)
    _emit(args, {"cowinner": yes, "bundle": _bundle_names(instance, bundle)},
          f"co-winner: {'yes' if yes else 'no'}")
    return 0 if yes else 1


def _cmd_find_donation(args) -> int:
    instance = _load_instance(args.input)
    rule = _rule(args)
    try:
        voter = instance.voter_index(args.voter)
    except KeyError as exc:
        raise _UsageError(str(exc.args[0])) from exc
    if args.delta < 0:
        raise _UsageError("--delta must be >= 0")
    result = find_improving_donation(rule, instance, voter, args.delta)
    if result.improving:
        assert result.witness is not None
        parts = [
            f"{instance.projects[j].name}:{amount}"
            for j, amount in enumerate(result.witness)
            if amount > 0
        ]
        witness = {
            instance.projects[j].name: amount
            for j, amount in enumerate(result.witness)
            if amount > 0
        }
        human = "witness: {}\nutility: {} -> {}".format(
            ",".join(parts) if parts else "(withdraw everything)",
            result.baseline_utility,
            result.new_utility,
        )
        _emit(args, {"improving": True, "witness": witness,
                     "baseline_utility": result.baseline_utility,
                     "new_utility": result.new_utility}, human)
        return 0
    _emit(args, {"improving": False, "witness": None,
                 "baseline_utility": result.baseline_utility,
                 "new_utility": result.new_utility}, "none")
    return 1


def _resolve_perturbation(args, instance: Instance, need_increment: bool):
    if args.voter is None or args.project is None:
        raise _UsageError("this axiom needs --voter and --project")
    try:
        voter = instance.voter_index(args.voter)
        project = instance.project_index(args.project)
    except KeyError as exc:
        raise _UsageError(str(exc.args[0])) from exc
    increment = args.increment
    if need_increment and increment < 1:
        raise _UsageError("--increment must be >= 1")
    return voter, project, increment


def _cmd_check_axiom(args) -> int:
    instance = _load_instance(args.input)
    rule = _rule(args)
    axiom = AXIOMS[args.axiom]
    if axiom is AxiomId.NO_HARM:
        violation = check_no_harm(rule, instance)
    elif axiom is AxiomId.PROJECT_MONO:
        voter, project, increment = _resolve_perturbation(args, instance, True)
        violation = check_project_mono(rule, instance, voter, project, increment)
    elif axiom is AxiomId.WELFARE_MONO:
        voter, project, increment = _resolve_perturbation(args, instance, True)
        violation = check_welfare_mono(rule, instance, voter, project, increment)
    else:
        voter, project, _ = _resolve_perturbation(args, instance, False)
        violation = check_voter_mono(rule, instance, voter, project)
    if violation is None:
        _emit(args, {"holds": True, "violation": None}, "holds on supplied perturbations")
        return 0
    payload = _violation_payload(instance, violation)
    human = (
        f"violation of {violation.axiom.value}: "
        f"value {violation.value_before} -> {violation.value_after}\n"
        f"winner before: {', '.join(_bundle_names(instance, violation.winner_before)) or '(empty)'}\n"
        f"winner after:  {', '.join(_bundle_names(instance, violation.winner_after)) or '(empty)'}"
    )
    _emit(args, {"holds": False, "violation": payload}, human)
    return 1


def _cmd_fuzz(args) -> int:
    rule_flavor, rule_agg = RULES[args.rule]
    rule = RuleSpec(rule_flavor, rule_agg, VARIANTS[args.variant])
    config = FuzzConfig(
        seed=args.seed,
        trials=args.trials,
        max_projects=args.max_projects,
        max_voters=args.max_voters,
        max_types=args.max_types,
        max_cost=args.max_cost,
        max_sat=args.max_sat,
        max_donation=args.max_donation,
        max_budget=args.max_budget,
    )
    report = fuzz(AXIOMS[args.axiom], rule, config)
    found = len(report.violations)
    payload = {
        "axiom": args.axiom,
        "rule": args.rule,
        "variant": args.variant,
        "seed": config.seed,
        "trials": report.trials_run,
        "violations": found,
        "counterexample": None,
    }
    human = f"trials: {report.trials_run}\nviolations: {found}"
    if report.shrunk is not None:
        payload["counterexample"] = {
            "instance": instance_to_document(report.shrunk.instance),
            "report": _violation_payload(report.shrunk.instance, report.shrunk),
        }
        human += "\nshrunk counterexample:\n" + json.dumps(
            payload["counterexample"], sort_keys=True, indent=2
        )
    _emit(args, payload, human)
    return 1 if found else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pbdon",
        description="Exact participatory-budgeting solvers with voter donations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_rule=True):
        if with_rule:
            p.add_argument("--rule", choices=sorted(RULES), required=True)
            p.add_argument("--variant", choices=sorted(VARIANTS), default="plain")
        p.add_argument("--input", required=True, help="instance document (JSON)")
        p.add_argument("--json", action="store_true", help="machine output on stdout")

    p = sub.add_parser("solve", help="compute the winning bundle")
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check-winner", help="is the given bundle a co-winner?")
    common(p)
    p.add_argument("--bundle", required=True, help="comma-separated project names")
    p.set_defaults(func=_cmd_check_winner)

    p = sub.add_parser("find-donation", help="search for an improving reallocation")
    common(p)
    p.add_argument("--voter", required=True, help="voter name")
    p.add_argument("--delta", type=int, required=True, help="total donation bound")
    p.set_defaults(func=_cmd_find_donation)

    p = sub.add_parser("check-axiom", help="refute a desideratum on one perturbation")
    common(p)
    p.add_argument("--axiom", choices=sorted(AXIOMS), required=True)
    p.add_argument("--voter", help="perturbed voter name")
    p.add_argument("--project", help="perturbed project name")
    p.add_argument("--increment", type=int, default=1)
    p.set_defaults(func=_cmd_check_axiom)

    p = sub.add_parser("fuzz", help="random search for axiom violations")
    p.add_argument("--rule", choices=sorted(RULES), required=True)
    p.add_argument("--variant", choices=sorted(VARIANTS), default="plain")
    p.add_argument("--axiom", choices=sorted(AXIOMS), required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-projects", type=int, default=4)
    p.add_argument("--max-voters", type=int, default=3)
    p.add_argument("--max-types", type=int, default=2)
    p.add_argument("--max-cost", type=int, default=6)
    p.add_argument("--max-sat", type=int, default=6)
    p.add_argument("--max-donation", type=int, default=3)
    p.add_argument("--max-budget", type=int, default=10)
    p.add_argument("--json", action="store_true", help="machine output on stdout")
    p.set_defaults(func=_cmd_fuzz)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_UsageError, ParseError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 4


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
