"""Command-line interface.

Exit codes: 0 success, 2 invalid generator matrix, 3 incomplete
enumeration (output is still written), 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds
from .core import ValidationError, validate_generators
from .experiments import ExperimentKind, ExperimentSpec, format_result, random_orthogonal_generator, run
from .geometry import hausdorff_to_subhull
from .io import MatrixFormatError, measure_to_csv, read_matrix, vertices_to_csv
from .oracle import enumerate_2d_sweep, enumerate_bruteforce, estimate_vertex_measure
from .sampler import (
    DEFAULT_MAX_SAMPLES,
    FixedSamples,
    SamplerConfig,
    enumerate_parallel,
    format_policy,
    parse_policy,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INCOMPLETE = 3
EXIT_IO = 4


def _matrix_args(p):
    p.add_argument("--matrix", type=Path, help="generator matrix (.csv or .json)")
    p.add_argument("--n", type=int, help="dimension of a random orthogonal-row matrix")
    p.add_argument("--m", type=int, help="number of generators of a random matrix")
    p.add_argument("--seed", type=int, default=0)


def _output_args(p):
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _load(args):
    if args.matrix is not None:
        return validate_generators(read_matrix(args.matrix))
    if args.n is None or args.m is None:
        raise ValueError("either --matrix or both --n and --m are required")
    return random_orthogonal_generator(args.n, args.m, args.seed)


def _emit(args, text: str):
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def _enumeration_output(args, A, res, extra=None):
    if args.format == "json":
        doc = res.to_dict()
        doc["n"], doc["m"] = A.n, A.m
        doc["policy"] = args.policy
        if extra:
            doc.update(extra)
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
    else:
        _emit(args, vertices_to_csv(res.vertices))
    return EXIT_INCOMPLETE if res.incomplete else EXIT_OK


def cmd_enumerate(args):
    A = _load(args)
    cfg = SamplerConfig(seed=args.seed, stop=parse_policy(args.policy),
                        max_samples=args.max_samples, batch_size=args.batch_size)
    res = enumerate_parallel(A, cfg, args.workers)
    return _enumeration_output(args, A, res)


def cmd_approximate(args):
    A = _load(args)
    args.policy = format_policy(FixedSamples(args.samples))
    cfg = SamplerConfig(seed=args.seed, stop=FixedSamples(args.samples),
                        max_samples=args.samples, batch_size=args.batch_size)
    res = enumerate_parallel(A, cfg, args.workers)
    extra = None
    if args.error:
        truth = enumerate_bruteforce(A)
        extra = {"error": hausdorff_to_subhull(truth, res.vertices), "true_vertices": len(truth)}
        if args.format == "csv":
            sys.stderr.write(f"hausdorff error: {extra['error']:.17g}\n")
    _enumeration_output(args, A, res, extra)
    return EXIT_OK


def cmd_oracle(args):
    A = _load(args)
    verts = enumerate_2d_sweep(A) if args.method == "sweep" else enumerate_bruteforce(A)
    if args.format == "json":
        rows = verts.all_vertices() if hasattr(verts, "all_vertices") else verts
        doc = {"method": args.method, "n": A.n, "m": A.m,
               "vertices": [[*v.key.signs, *map(float, v.point)] for v in rows]}
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
    else:
        _emit(args, vertices_to_csv(verts))
    return EXIT_OK


def cmd_bound(args):
    if args.b is not None:
        b = args.b
    elif args.m is not None:
        b = bounds.b_orthogonal(args.m)
    else:
        raise ValueError("either --b or --m is required")
    doc = {"epsilon": args.epsilon, "delta": args.delta, "b": b, "n": args.n,
           "num_vertices": args.num_vertices, "default_variant": args.variant}
    for variant in bounds.Variant:
        inp = bounds.SampleBoundInput(args.epsilon, args.delta, b, args.n, args.num_vertices, variant)
        entry = {"k": bounds.cone_mass_threshold(args.delta, b, args.n, variant)}
        try:
            entry["p"] = bounds.sample_bound(inp)
        except bounds.DegenerateBoundError as exc:
            entry["p"] = None
            entry["error"] = str(exc)
        doc[variant.value] = entry
    if args.missed is not None:
        a = args.small_pairs if args.small_pairs is not None else 0
        conf = 1.0 - 2.0**a * args.epsilon
        doc["hausdorff"] = {"bound": args.missed / 2 * args.delta, "a": a,
                            "confidence": conf, "vacuous": conf <= 0}
    _emit(args, json.dumps(doc, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_experiment(args):
    if args.spec is not None:
        spec = ExperimentSpec.from_json(args.spec)
    else:
        if args.kind is None or args.n is None or args.m is None:
            raise ValueError("either --spec or --kind, --n and --m are required")
        kw = dict(kind=ExperimentKind(args.kind), m=args.m, n=args.n, trials=args.trials,
                  seed=args.seed, max_samples=args.max_samples,
                  measure_samples=args.measure_samples, workers=args.workers)
        if args.checkpoints:
            kw["sample_checkpoints"] = tuple(int(c) for c in args.checkpoints.split(","))
        if args.matrix is not None:
            kw["matrix_source"] = str(args.matrix)
        spec = ExperimentSpec(**kw)
    _emit(args, format_result(spec, run(spec), args.format))
    return EXIT_OK


def cmd_measure(args):
    A = _load(args)
    verts = enumerate_bruteforce(A)
    est = estimate_vertex_measure(A, verts, args.samples, args.seed)
    if args.format == "json":
        doc = {"samples": est.samples, "other": est.other,
               "estimates": [[*k.signs, p, est.standard_errors[k]] for k, p in est.estimates.items()]}
        _emit(args, json.dumps(doc, sort_keys=True) + "\n")
    else:
        _emit(args, measure_to_csv(est))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zonoenum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="randomized vertex enumeration")
    _matrix_args(p)
    _output_args(p)
    p.add_argument("--policy", default="full", help="full, fixed:<p> or streak:<s>")
    p.add_argument("--max-samples", type=int, default=DEFAULT_MAX_SAMPLES)
    p.add_argument("--batch-size", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("approximate", help="vertex set after a fixed number of samples")
    _matrix_args(p)
    _output_args(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--batch-size", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--error", action="store_true", help="report Hausdorff error against brute force")
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("oracle", help="exact enumeration")
    _matrix_args(p)
    _output_args(p)
    p.add_argument("--method", choices=["bruteforce", "sweep"], default="bruteforce")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bound", help="sample-count and Hausdorff bound calculator")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--num-vertices", type=int, required=True)
    p.add_argument("--b", type=float, help="bound on base diameters")
    p.add_argument("--m", type=int, help="use b = 2 sqrt(m) (orthonormal rows)")
    p.add_argument("--variant", choices=[v.value for v in bounds.Variant], default="proof")
    p.add_argument("--missed", type=int, help="number of missed vertices, for the Hausdorff bound")
    p.add_argument("--small-pairs", type=int, help="pairs with simplicial constant below delta")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("experiment", help="run an experiment")
    p.add_argument("--spec", type=Path, help="ExperimentSpec as JSON")
    p.add_argument("--kind", choices=[k.value for k in ExperimentKind])
    _matrix_args(p)
    _output_args(p)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--checkpoints", help="comma-separated sample counts")
    p.add_argument("--max-samples", type=int, default=10**6)
    p.add_argument("--measure-samples", type=int, default=10**6)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("measure", help="Monte Carlo vertex measure")
    _matrix_args(p)
    _output_args(p)
    p.add_argument("--samples", type=int, default=10**6)
    p.set_defaults(func=cmd_measure)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, MatrixFormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
