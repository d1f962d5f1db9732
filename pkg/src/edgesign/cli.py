"""Command line entry point.

Subcommands: ingest, stats, batch, active, verify. Results go to stdout
as JSON; --out writes JSON or CSV files. Accuracy/MCC summaries printed
to stderr-style status lines use percent with two decimals.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (LabelingModel, er_digraph, estimate_lower_bound,
                     generate_labels, verify_alclog, verify_alcone)
from .datasets import ingest
from .experiments import (ACTIVE_ALGOS, BATCH_ALGOS, ExperimentConfig,
                          run_experiment, write_atomic)
from .features import complexity, pfc_surrogate
from .graph import load_edgelist


def _onoff(value: str) -> bool:
    if value in ("on", "off"):
        return value == "on"
    raise argparse.ArgumentTypeError(f"expected on|off, got {value!r}")


def _fractions(value: str) -> tuple:
    return tuple(float(tok) for tok in value.split(",") if tok)


def _add_ingest(sub):
    p = sub.add_parser("ingest", help="download and normalize a benchmark dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--cache", required=True)


def _add_stats(sub):
    p = sub.add_parser("stats", help="dataset statistics as a JSON row")
    p.add_argument("--graph", required=True)
    p.add_argument("--out")


def _add_batch(sub):
    p = sub.add_parser("batch", help="batch edge sign prediction experiment")
    p.add_argument("--graph", required=True)
    p.add_argument("--algo", required=True, choices=BATCH_ALGOS)
    p.add_argument("--train-frac", type=_fractions, required=True,
                   metavar="F[,F...]")
    p.add_argument("--reps", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reciprocal", type=_onoff, default=False, metavar="on|off")
    p.add_argument("--tie-label", type=int, default=1, choices=(-1, 1))
    p.add_argument("--wcc", type=_onoff, default=None, metavar="on|off")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--out")


def _add_active(sub):
    p = sub.add_parser("active", help="active query selection experiment")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", required=True, choices=ACTIVE_ALGOS)
    p.add_argument("--reps", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tie-label", type=int, default=1, choices=(-1, 1))
    p.add_argument("--wcc", type=_onoff, default=True, metavar="on|off")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--out")


def _add_verify(sub):
    p = sub.add_parser("verify", help="Monte Carlo check of a mistake bound")
    p.add_argument("--theorem", required=True, choices=("1", "2", "3"))
    p.add_argument("--graph")
    p.add_argument("--er", metavar="N,P",
                   help="random directed graph instead of --graph")
    p.add_argument("--model",
                   help="labeling model: consistent | p-flip:P | uniform-yk:K "
                        "(default: the graph's own labels)")
    p.add_argument("--algorithm", default="alcone-t",
                   choices=("alcone-t", "alclog-t"),
                   help="selection strategy checked against the lower bound")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")


def _emit(payload: dict | list, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        write_atomic(text, Path(out))
    sys.stdout.write(text)


def _cmd_stats(args) -> int:
    g = load_edgelist(args.graph)
    stats = complexity(g)
    pfc = pfc_surrogate(g)
    pos_frac = float(np.count_nonzero(g.labels > 0) / g.edge_count) if g.edge_count else 0.0
    _emit({
        "V": g.node_count,
        "E": g.edge_count,
        "pos_frac": pos_frac,
        "psi_in_frac": stats.psi_in_frac,
        "psi_out_frac": stats.psi_out_frac,
        "pfc_quartiles": list(pfc.quartiles),
    }, args.out)
    return 0


def _summary_lines(records: list[dict]) -> None:
    for rec in records:
        mean, std = rec["mean"], rec["std"]
        frac = 100.0 * mean["fraction"]
        print(f"{rec['algorithm']}: acc {100 * mean['accuracy']:.2f} "
              f"+- {100 * std['accuracy']:.2f}, mcc {100 * mean['mcc']:.2f} "
              f"+- {100 * std['mcc']:.2f}, train {frac:.2f}% "
              f"({rec['n']} reps)", file=sys.stderr)


def _cmd_batch(args) -> int:
    cfg = ExperimentConfig(
        graph=args.graph, algorithm=args.algo, fractions=args.train_frac,
        reps=args.reps, seed=args.seed, tie_label=args.tie_label,
        reciprocal=args.reciprocal, wcc=args.wcc, out=args.out,
        threads=args.threads)
    records = run_experiment(cfg)
    _summary_lines(records)
    if not args.out:
        payload = records[0] if len(records) == 1 else records
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_active(args) -> int:
    cfg = ExperimentConfig(
        graph=args.graph, algorithm=args.strategy, reps=args.reps,
        seed=args.seed, tie_label=args.tie_label, wcc=args.wcc,
        out=args.out, threads=args.threads)
    records = run_experiment(cfg)
    _summary_lines(records)
    if not args.out:
        sys.stdout.write(json.dumps(records[0], sort_keys=True, indent=2) + "\n")
    return 0


def _parse_model(spec: str | None, g, seed: int):
    """Resolve --model into a labels array (None means theorem 1 handles
    labels itself)."""
    if spec is None:
        return g.labels.copy()
    if spec == "consistent":
        return generate_labels(g, LabelingModel.consistent(seed=seed))
    kind, _, arg = spec.partition(":")
    if kind == "p-flip":
        base = np.ones(g.edge_count, dtype=np.int8)
        model = LabelingModel.p_flip(base, float(arg), seed=seed)
        return generate_labels(g, model)
    if kind == "uniform-yk":
        model = LabelingModel.uniform_yk(int(arg), seed=seed)
        return generate_labels(g, model)
    raise ValueError(f"unknown labeling model {spec!r}")


def _cmd_verify(args) -> int:
    if bool(args.graph) == bool(args.er):
        raise ValueError("give exactly one of --graph or --er")
    if args.er:
        n, p = args.er.split(",")
        g = er_digraph(int(n), float(p), seed=args.seed)
    else:
        g = load_edgelist(args.graph)

    if args.theorem == "1":
        if not (args.model or "").startswith("uniform-yk:"):
            raise ValueError("theorem 1 needs --model uniform-yk:K")
        k = int(args.model.split(":", 1)[1])
        report = estimate_lower_bound(g, k, None, args.trials,
                                      algorithm=args.algorithm, seed=args.seed)
    else:
        labels = _parse_model(args.model, g, args.seed)
        check = verify_alcone if args.theorem == "2" else verify_alclog
        report = check(g, labels, args.trials, seed=args.seed)
    _emit(report.to_dict(), args.out)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="edgesign",
        description="edge sign classification in directed signed networks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    _add_ingest(sub)
    _add_stats(sub)
    _add_batch(sub)
    _add_active(sub)
    _add_verify(sub)
    args = parser.parse_args(argv)
    try:
        if args.command == "ingest":
            print(ingest(args.dataset, args.cache))
            return 0
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "batch":
            return _cmd_batch(args)
        if args.command == "active":
            return _cmd_active(args)
        if args.command == "verify":
            return _cmd_verify(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
