"""Command-line interface: run experiments, ablations, and re-emit
reports.  Exit code 0 on success, 1 on configuration or I/O errors."""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from .harness import EPSILONS, RunConfig, run_ablation, run_experiment
from .reporting import emit_ablation_report, emit_report, raw_to_result


def _add_config_options(p):
    p.add_argument("--config", type=str, default=None,
                   help="JSON file with RunConfig fields; flags override it")
    p.add_argument("--problem", type=int, default=None, help="problem index 1-20")
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="base seed")
    p.add_argument("--np", type=int, default=None, dest="np_size",
                   help="population size (default: benchmark value)")
    p.add_argument("--mode", choices=["eode", "eode-r", "eode-b", "eode-rb"],
                   default=None)
    p.add_argument("--phi1", type=float, default=None)
    p.add_argument("--phi2", type=float, default=None)
    p.add_argument("--minsize1", type=int, default=None)
    p.add_argument("--minsize2", type=int, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--jr", choices=["late", "early", "full"], default=None)
    p.add_argument("--max-gen", type=int, default=None)
    p.add_argument("--stagnation-k", type=int, default=None)
    p.add_argument("--dump-generations", action="store_true", default=None)
    p.add_argument("--jobs", type=int, default=None,
                   help="parallel worker processes across runs")
    p.add_argument("--out", type=str, default="eode-out")
    p.add_argument("--format", choices=["csv", "json", "both"], default="both")


_FLAG_TO_FIELD = {
    "problem": "problem_index",
    "runs": "runs",
    "seed": "base_seed",
    "np_size": "np",
    "mode": "mutation_mode",
    "phi1": "phi1",
    "phi2": "phi2",
    "minsize1": "minsize1",
    "minsize2": "minsize2",
    "delta": "delta",
    "jr": "jr_window",
    "max_gen": "max_gen",
    "stagnation_k": "stagnation_k",
    "dump_generations": "dump_generations",
    "jobs": "jobs",
}


def _build_config(args) -> RunConfig:
    fields = {"epsilons": list(EPSILONS)}
    if args.config:
        with open(args.config) as fh:
            fields.update(json.load(fh))
    for flag, field in _FLAG_TO_FIELD.items():
        value = getattr(args, flag, None)
        if value is not None:
            fields[field] = value
    if "problem_index" not in fields:
        raise ValueError("a problem index is required (--problem or config file)")
    if not 1 <= fields["problem_index"] <= 20:
        raise ValueError("problem index must be in 1..20")
    return RunConfig.from_dict(fields)


def _formats(arg):
    return ("csv", "json") if arg == "both" else (arg,)


def _cmd_run(args) -> int:
    config = _build_config(args)
    result = run_experiment(config)
    written = emit_report([result], args.out, _formats(args.format))
    for eps in config.epsilons:
        pr, sr = result.pr_sr[eps]
        print(f"problem {config.problem_index} eps={eps:g}: PR={pr:.4f} SR={sr:.4f}")
    print(f"wrote {len(written)} file(s) under {args.out}")
    return 0


def _cmd_ablate(args) -> int:
    config = _build_config(args)
    variants = run_ablation(args.kind, config)
    written = emit_ablation_report(args.kind, variants, args.out)
    eps = 1e-4
    for label, result in variants:
        pr, sr = result.pr_sr[eps]
        print(f"{args.kind}/{label}: problem {config.problem_index} "
              f"eps=1e-4 PR={pr:.4f} SR={sr:.4f}")
    print(f"wrote {len(written)} file(s) under {args.out}")
    return 0


def _cmd_report(args) -> int:
    raw_path = pathlib.Path(args.in_dir) / "results.json"
    if not raw_path.exists():
        raise FileNotFoundError(f"no results.json under {args.in_dir}")
    raw = json.loads(raw_path.read_text())
    results = [raw_to_result(r) for r in raw["experiments"]]
    written = emit_report(results, args.in_dir, _formats(args.format))
    print(f"re-emitted {len(written)} file(s) under {args.in_dir}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="eode",
        description="Multimodal optimization benchmark harness "
                    "(niched opposition-based differential evolution).")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment")
    _add_config_options(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_abl = sub.add_parser("ablate", help="run an ablation sweep")
    p_abl.add_argument("--kind", choices=["mutation", "phi", "jr"], required=True)
    _add_config_options(p_abl)
    p_abl.set_defaults(func=_cmd_ablate)

    p_rep = sub.add_parser("report", help="re-emit reports from results.json")
    p_rep.add_argument("--in", dest="in_dir", required=True)
    p_rep.add_argument("--format", choices=["csv", "json", "both"], default="both")
    p_rep.set_defaults(func=_cmd_report)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
