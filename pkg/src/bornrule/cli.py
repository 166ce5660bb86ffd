"""Command-line front end.

Exit codes: 0 success, 1 a verified property failed, 2 bad input (unreadable
or invalid space file, bad arguments), 3 unknown event or partition name.
"""

from __future__ import annotations

import argparse
import sys

from . import checks
from .errors import BornRuleError
from .probability import cond_pr_classical, pr
from .report import Report, render_machine, render_table
from .sampler import TrialConfig, indistinguishability_report, run_experiment
from .specfile import SpaceSpec, SpecError, UnknownName, load_spec
from .superposition import (
    DensityMatrix,
    Kind,
    is_pure,
    multiset_deviation,
    predicted_eigenvalues,
    prob_trace,
    rho_discrete,
    rho_partition,
    rho_superposition,
    spectrum_of,
    PURITY_TOL,
)

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_NAME = 0, 1, 2, 3


def select_rho(spec: SpaceSpec, event: str | None, mode: str, partition: str | None) -> DensityMatrix:
    if partition is not None:
        return rho_partition(spec.space, spec.partition(partition))
    S = spec.event(event)
    if mode == "superposition":
        return rho_superposition(spec.space, S)
    return rho_discrete(spec.space, S)


def _target(args) -> dict:
    if args.partition is not None:
        return {"partition": args.partition, "kind": Kind.PARTITION.value}
    kind = Kind.SUPERPOSITION if args.mode == "superposition" else Kind.DISCRETE
    return {"event": args.event, "mode": args.mode, "kind": kind.value}


def _report(command: str, spec: SpaceSpec, argv: list[str], tolerances: dict) -> Report:
    return Report(
        command=command,
        argv=list(argv),
        input={"path": spec.path, "sha256": spec.digest, "n": spec.space.n},
        tolerances=tolerances,
    )


def cmd_density(spec: SpaceSpec, args, argv=()) -> Report:
    rho = select_rho(spec, args.event, args.mode, args.partition)
    m = rho.matrix
    residual = float(abs(m @ m - m).max())
    rep = _report("density", spec, argv, {"purity": PURITY_TOL})
    rep.result = {
        "labels": list(spec.space.labels),
        "target": _target(args),
        "matrix": m,
        "trace": float(m.trace()),
        "pure": is_pure(rho),
        "purity_residual": residual,
        "eigenvalues": spectrum_of(rho).eigenvalues,
    }
    return rep


def _oracle(spec: SpaceSpec, rho: DensityMatrix, T) -> float:
    # a partition state has diagonal p_i, so its classical counterpart is Pr(T)
    if rho.kind is Kind.PARTITION:
        return pr(spec.space, T)
    return cond_pr_classical(spec.space, T, rho.provenance)


def cmd_prob(spec: SpaceSpec, args, argv=()) -> Report:
    rho = select_rho(spec, args.event, args.mode, args.partition)
    T = spec.event(args.query)
    value = prob_trace(rho, T)
    oracle = _oracle(spec, rho, T)
    rep = _report("prob", spec, argv, {})
    rep.result = {
        "target": _target(args),
        "query": {"name": args.query, "outcomes": T.labels()},
        "probability": value,
        "classical": oracle,
        "abs_difference": abs(value - oracle),
    }
    return rep


def cmd_spectrum(spec: SpaceSpec, args, argv=()) -> Report:
    rho = select_rho(spec, args.event, args.mode, args.partition)
    vals = spectrum_of(rho).eigenvalues
    predicted = predicted_eigenvalues(rho)
    rep = _report("spectrum", spec, argv, {"zero_clamp": 1e-10})
    rep.result = {
        "target": _target(args),
        "eigenvalues": vals,
        "predicted": predicted,
        "max_deviation": multiset_deviation(vals, predicted),
    }
    return rep


def cmd_sample(spec: SpaceSpec, args, argv=()) -> Report:
    cfg = TrialConfig(args.seed, args.trials)
    rep = _report("sample", spec, argv, {})
    rep.result = {"labels": list(spec.space.labels), "target": _target(args),
                  "seed": cfg.seed, "trials": cfg.trials, "shards": args.shards}
    if args.compare_superposition:
        if args.event is None:
            raise SpecError("--compare-superposition needs --event")
        out = indistinguishability_report(spec.space, spec.event(args.event), cfg, args.shards)
        rep.result["target"] = {"event": args.event, "mode": "discrete vs superposition",
                                "seeds": [cfg.seed, (cfg.seed + 1) % 2**64]}
        rep.tolerances = {"deviation_bound": out.deviation_bound,
                          "difference_bound": out.difference_bound}
        rep.result.update(out.as_dict())
    else:
        rho = select_rho(spec, args.event, args.mode, args.partition)
        rep.result["empirical"] = run_experiment(rho, cfg, args.shards).as_dict()
    return rep


def cmd_verify(spec: SpaceSpec, args, argv=()) -> Report:
    results = checks.run_properties(
        spec.space,
        list(spec.events.values()),
        list(spec.partitions.values()),
        trials=args.trials_per_property,
        tolerance=args.tolerance,
        seed=args.seed,
    )
    rep = _report("verify", spec, argv, {
        "purity_and_support": args.tolerance,
        "identities": checks.IDENTITY_TOL,
        "spectra": checks.SPECTRUM_TOL,
        "amplitude_recovery": checks.RECOVERY_TOL,
    })
    rep.result = {
        "passed": all(r.passed for r in results),
        "random_objects_per_property": args.trials_per_property,
        "seed": args.seed,
        "properties": [r.as_dict() for r in results],
    }
    return rep


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", help="outcome-space JSON file")
    p.add_argument("--format", choices=("machine", "table"), default="machine")
    p.add_argument("--normalize", action="store_true",
                   help="rescale nonnegative weights to sum to 1 before validation")


def _add_target(p: argparse.ArgumentParser, required: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--event", help="named event (or outcome label) to condition on")
    group.add_argument("--partition", help="named partition")
    p.add_argument("--mode", choices=("discrete", "superposition"), default="discrete",
                   help="reading of --event: rho(S) or rho(ΣS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bornrule",
        description="Density matrices for discrete and superposition events.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="print a density matrix, its trace, purity and spectrum")
    _add_common(p)
    _add_target(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("prob", help="tr[P_T rho] next to the classical conditional probability")
    _add_common(p)
    _add_target(p)
    p.add_argument("--query", required=True, help="event T whose probability is computed")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("spectrum", help="eigenvalues against the predicted multiset")
    _add_common(p)
    _add_target(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sample", help="simulate measurements of a density matrix")
    _add_common(p)
    _add_target(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--compare-superposition", action="store_true",
                   help="measure rho(S) and rho(ΣS) for --event and compare")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run the property suite against a space")
    _add_common(p)
    p.add_argument("--trials-per-property", type=int, default=200)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec, normalize=args.normalize)
        report = args.func(spec, args, argv)
    except SpecError as exc:
        print(f"bornrule: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownName as exc:
        print(f"bornrule: {exc}", file=sys.stderr)
        return EXIT_NAME
    except BornRuleError as exc:
        print(f"bornrule: input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    render = render_table if args.format == "table" else render_machine
    sys.stdout.write(render(report))
    if report.command == "verify" and not report.result["passed"]:
        return EXIT_PROPERTY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
