"""Report emission: deterministic CSV/JSON files from experiment results.

Wall-clock timings never enter the files, so a repeated (config, seed)
pair reproduces every byte.
"""

from __future__ import annotations

import json
import pathlib

from .bench.problems import problem_spec
from .harness import RunConfig, RunResult, run_experiment

RUN_CSV_HEADER = "problem,epsilon,run,seed,peaks_found,nkp,fes_used,pr,sr"
ABLATION_CSV_HEADER = "kind,variant,problem,epsilon,pr,sr"


def _fmt(x) -> str:
    return repr(float(x))


def result_to_raw(result: RunResult) -> dict:
    """JSON-safe dump of one experiment (config, per-run data, aggregates)."""
    return {
        "config": result.config.to_dict(),
        "problem_name": problem_spec(result.config.problem_index).name,
        "nkp": result.nkp,
        "pr_sr": {_fmt(eps): [pr, sr] for eps, (pr, sr) in result.pr_sr.items()},
        "runs": [
            {
                "run": r.run,
                "seed": r.seed,
                "counts": {_fmt(eps): c for eps, c in r.counts.items()},
                "fes_used": r.fes_used,
                "generations_completed": r.generations_completed,
                "archive": r.archive_lines,
            }
            for r in result.records
        ],
    }


def raw_to_result(raw: dict) -> RunResult:
    """Rebuild enough of a RunResult from a raw dict to re-emit reports."""
    from .harness import RunRecord

    config = RunConfig.from_dict(raw["config"])
    records = [
        RunRecord(run=r["run"], seed=r["seed"],
                  counts={float(k): v for k, v in r["counts"].items()},
                  fes_used=r["fes_used"], wall_time=0.0,
                  generations_completed=r["generations_completed"],
                  archive_lines=r["archive"])
        for r in raw["runs"]
    ]
    pr_sr = {float(k): tuple(v) for k, v in raw["pr_sr"].items()}
    return RunResult(config=config, records=records, pr_sr=pr_sr)


def runs_csv_lines(results) -> list:
    """One row per (run, epsilon), aggregate PR/SR repeated per epsilon."""
    lines = [RUN_CSV_HEADER]
    for result in results:
        cfg = result.config
        nkp = result.nkp
        for rec in result.records:
            for eps in cfg.epsilons:
                pr, sr = result.pr_sr[eps]
                lines.append(",".join([
                    str(cfg.problem_index), _fmt(eps), str(rec.run),
                    str(rec.seed), str(rec.counts[eps]), str(nkp),
                    str(rec.fes_used), _fmt(pr), _fmt(sr),
                ]))
    return lines


def summary_dict(results) -> dict:
    return {"experiments": [result_to_raw(r) for r in results]}


def emit_report(results, out_dir, formats=("csv", "json")) -> list:
    """Write runs.csv / summary.json / results.json (plus any generation
    dumps carried by the records); returns the paths written."""
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if isinstance(results, RunResult):
        results = [results]
    written = []

    raw_path = out / "results.json"
    raw_path.write_text(json.dumps(summary_dict(results), indent=2, sort_keys=True) + "\n")
    written.append(raw_path)

    if "csv" in formats:
        csv_path = out / "runs.csv"
        csv_path.write_text("\n".join(runs_csv_lines(results)) + "\n")
        written.append(csv_path)
    if "json" in formats:
        json_path = out / "summary.json"
        payload = {
            "experiments": [
                {
                    "problem": r.config.problem_index,
                    "problem_name": problem_spec(r.config.problem_index).name,
                    "runs": r.config.runs,
                    "pr_sr": {_fmt(e): list(v) for e, v in r.pr_sr.items()},
                }
                for r in results
            ]
        }
        json_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        written.append(json_path)

    for result in results:
        for rec in result.records:
            if not rec.dumps:
                continue
            run_dir = out / f"problem_{result.config.problem_index}" / f"run_{rec.run:03d}"
            run_dir.mkdir(parents=True, exist_ok=True)
            dim = problem_spec(result.config.problem_index).dim
            cols = ",".join(f"x{d}" for d in range(dim))
            for gen, rows in rec.dumps:
                lines = [f"species,{cols},fitness"]
                for si, genome, fit in rows:
                    lines.append("%d,%s,%s" % (
                        si, ",".join(_fmt(v) for v in genome), _fmt(fit)))
                path = run_dir / f"gen_{gen:04d}.csv"
                path.write_text("\n".join(lines) + "\n")
                written.append(path)
    return written


def emit_ablation_report(kind, variants, out_dir) -> list:
    """CSV + JSON for an ablation sweep: one PR/SR row per variant per
    epsilon."""
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = [ABLATION_CSV_HEADER]
    payload = {"kind": kind, "variants": {}}
    for label, result in variants:
        payload["variants"][label] = result_to_raw(result)
        for eps in result.config.epsilons:
            pr, sr = result.pr_sr[eps]
            lines.append(",".join([kind, label, str(result.config.problem_index),
                                   _fmt(eps), _fmt(pr), _fmt(sr)]))
    csv_path = out / "ablation.csv"
    csv_path.write_text("\n".join(lines) + "\n")
    json_path = out / "ablation.json"
    json_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return [csv_path, json_path]
