"""Unified command-line entry point.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 limits exceeded,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from itertools import combinations
from typing import Optional, Sequence

from .arrowing import DeciderLimits, TargetSpec, decide_sandwich
from .certificates import (
    ThresholdParams,
    counting_certificate_b2,
    lower_threshold_report,
    quasirandom_audit,
)
from .errors import InputError, LimitsError, ParseError
from .experiments import ExperimentConfig, bisect_threshold, sweep
from .graph import mask_members
from .io import atomic_write, format_coloring, format_graph, load_coloring, load_graph
from .regularity import build_reduced_graph, equitable_partition, p_density, test_regularity
from .sampler import Seed, sample_gnp
from .witness import color_subgraph

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_LIMITS = 3
EXIT_IO = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _seed_arg(parser, default: int = 0):
    parser.add_argument("--seed", type=int, default=default,
                        help="master seed (decimal 64-bit)")
    parser.add_argument("--stream", type=int, default=0,
                        help="seed stream index")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, default=str))


def build_parser() -> _Parser:
    parser = _Parser(prog="bookramsey")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide G -> target for a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", choices=["book", "biclique"], default="book")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-edges", type=int, default=26)
    p.add_argument("--evidence-out", help="write a NotArrows coloring here")
    _seed_arg(p)

    p = sub.add_parser("bounds", help="threshold parameters + Chernoff report")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)

    p = sub.add_parser("certify", help="k=2 counting certificate for a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("audit", help="quasirandomness audit of a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tolerance", type=float)
    _seed_arg(p)

    p = sub.add_parser("regularity", help="regularity report for a colored graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--parts", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, default=100)
    _seed_arg(p)

    p = sub.add_parser("sample", help="emit a G(N,p) edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--out", help="output path (default stdout)")
    _seed_arg(p)

    for name in ("sweep", "bisect"):
        p = sub.add_parser(name, help=f"Monte Carlo threshold {name}")
        p.add_argument("--target", choices=["book", "biclique"], default="book")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--c", type=float, help="derive N = floor(c*2^k*n)")
        p.add_argument("--N", type=int, help="explicit vertex count")
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--decider", choices=["exact", "star", "sandwich"],
                       default="sandwich")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--max-edges", type=int, default=26)
        _seed_arg(p)
        if name == "sweep":
            p.add_argument("--p-grid", required=True,
                           help="comma-separated probabilities, increasing")
            p.add_argument("--csv", help="CSV output path")
            p.add_argument("--manifest", help="JSON manifest output path")
        else:
            p.add_argument("--bracket", required=True,
                           help="initial bracket as 'lo,hi'")
            p.add_argument("--tol", type=float, default=0.01)
            p.add_argument("--confidence", type=float, default=0.95)
    return parser


def _experiment_config(args) -> ExperimentConfig:
    target = TargetSpec(args.target, args.k, args.n)
    if args.N is not None:
        n_verts = args.N
    elif args.c is not None:
        n_verts = int(args.c * 2 ** args.k * args.n)
    else:
        raise InputError("provide either --N or --c")
    grid = tuple(float(x) for x in args.p_grid.split(",")) if hasattr(args, "p_grid") \
        else (0.5,)
    return ExperimentConfig(
        target=target, N=n_verts, p_grid=grid,
        samples_per_p=args.samples, seed=Seed(args.seed, args.stream),
        decider=args.decider,
        limits=DeciderLimits(max_edges_exhaustive=args.max_edges),
        workers=args.workers,
    )


def _run(args) -> None:
    if args.command == "decide":
        g = load_graph(args.graph)
        target = TargetSpec(args.target, args.k, args.n)
        lim = DeciderLimits(max_edges_exhaustive=args.max_edges)
        verdict = decide_sandwich(g, target, lim, Seed(args.seed, args.stream))
        out = {
            "outcome": verdict.outcome,
            "method": verdict.method,
            "nodes": verdict.nodes,
            "millis": verdict.millis,
        }
        if verdict.coloring is not None and args.evidence_out:
            atomic_write(args.evidence_out, format_coloring(verdict.coloring))
            out["evidence_path"] = args.evidence_out
        _emit(out)

    elif args.command == "bounds":
        params = ThresholdParams(k=args.k, c=args.c, n=args.n, gamma=args.gamma)
        report = lower_threshold_report(params)
        _emit({
            "threshold_params": {
                "k": params.k, "c": params.c, "n": params.n, "gamma": params.gamma,
                "N": params.N, "p_sharp": params.p_sharp, "p_lower": params.p_lower,
                "p0_lower": params.p0_lower, "p0_upper": params.p0_upper,
            },
            "chernoff_report": {
                "delta": report.delta,
                "tail": report.tail,
                "log_tail": report.log_tail,
                "union_bound": report.union_bound,
                "log_union_bound": report.log_union_bound,
                "doubled_union_bound": report.doubled_union_bound,
                "log_doubled_union_bound": report.log_doubled_union_bound,
                "gamma_too_small": report.gamma_too_small,
            },
        })

    elif args.command == "certify":
        g = load_graph(args.graph)
        cert = counting_certificate_b2(g, args.n)
        _emit({
            "n": cert.n, "T": cert.T, "mrb_upper": cert.mrb_upper,
            "mono_lower": cert.mono_lower,
            "budget": float(cert.budget), "fires": cert.fires,
        })

    elif args.command == "audit":
        g = load_graph(args.graph)
        report = quasirandom_audit(g, args.p, args.samples,
                                   Seed(args.seed, args.stream),
                                   tolerance=args.tolerance)
        _emit(asdict(report) | {"within_tolerance": report.within_tolerance})

    elif args.command == "regularity":
        g = load_graph(args.graph)
        coloring = load_coloring(args.coloring)
        if coloring.host != g:
            raise ParseError("coloring file does not match the graph file")
        partition = equitable_partition(g, args.parts)
        seed = Seed(args.seed, args.stream)
        blue = color_subgraph(coloring, "blue")
        densities = {}
        refutations = []
        m = len(partition.parts)
        for i, j in combinations(range(m), 2):
            dens = p_density(g, partition.parts[i], partition.parts[j], args.p)
            densities[f"{i},{j}"] = dens
            rep = test_regularity(g, partition.parts[i], partition.parts[j],
                                  args.epsilon, args.p, strategy="sampled",
                                  trials=args.trials, seed=seed.child(i * m + j))
            if rep.verdict == "refuted":
                refutations.append({"pair": [i, j], "density": rep.density,
                                    "witness_density": rep.witness[2]})
        reduced = build_reduced_graph(g, coloring, partition, args.epsilon,
                                      args.p, args.delta, trials=args.trials,
                                      seed=seed)
        _emit({
            "parts": [mask_members(p_) for p_ in partition.parts],
            "pair_p_densities": densities,
            "refuted_pairs": refutations,
            "reduced_graph_edges": sorted(list(e) for e in reduced.edges),
            "red_vertex_mask": mask_members(reduced.red_vertex_mask),
        })

    elif args.command == "sample":
        g = sample_gnp(args.n, args.p, Seed(args.seed, args.stream))
        text = format_graph(g)
        if args.out:
            atomic_write(args.out, text)
        else:
            sys.stdout.write(text)

    elif args.command == "sweep":
        cfg = _experiment_config(args)
        result = sweep(cfg, csv_path=args.csv, manifest_path=args.manifest)
        _emit({
            "rows": [
                {"p": r.p, "samples": r.samples, "arrows": r.arrows,
                 "not_arrows": r.not_arrows, "unknown": r.unknown,
                 "p_hat": r.p_hat, "ci": list(r.ci), "band": list(r.band)}
                for r in result.rows
            ],
            "csv": args.csv, "manifest": args.manifest,
        })

    elif args.command == "bisect":
        cfg = _experiment_config(args)
        lo, hi = (float(x) for x in args.bracket.split(","))
        result = bisect_threshold(cfg, (lo, hi), args.tol, args.confidence)
        _emit({
            "p_star_estimate": result.p_star_estimate,
            "bracket": list(result.bracket),
            "iterations": result.iterations,
            "samples_used": result.samples_used,
        })


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LimitsError as exc:
        print(f"limits exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMITS
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
