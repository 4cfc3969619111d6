"""Command-line entry point.

Exit status is 0 on success, 1 when a spec or input fails validation, and 2
on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import __version__
from .chaos import (
    DEFAULT_WINDOW,
    arc_coverage,
    devaney_certificate,
    find_witnesses,
    word_is_admissible,
)
from .exceptions import EnumerationBudgetExceeded, MarkovChaosError
from .io import SCHEMA_VERSION, load_chain_spec, path_to_csv, read_path_csv, spec_digest
from .randomwalk import (
    WalkConfig,
    build_walk_chain,
    encode_walk_to_events,
    simulate_walk,
    step_function_export,
    trace_to_csv,
    trace_to_svg,
)
from .sequence_space import (
    DEFAULT_DEPTH,
    Cylinder,
    check_diameter_condition,
    check_separation_condition,
    similarity_coverage,
)
from .simulator import random_initial, simulate
from ._config import enumeration_budget

WALK_SEED = 1729


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer seed") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _emit(text, output):
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _provenance(spec, seed):
    return {"spec_digest": spec.digest, "seed": seed, "markovchaos_version": __version__}


def _realize(spec, args):
    """Path from ``--path`` if given, else a fresh simulation; returns (indices, seed)."""
    seed = spec.seed if args.seed is None else args.seed
    if getattr(args, "path", None):
        return read_path_csv(args.path, spec.space), seed
    length = spec.length if args.length is None else args.length
    initial = spec.initial
    if getattr(args, "initial", None):
        initial = tuple(int(i) for i in spec.space.indices(args.initial))
    if initial is None:
        initial = random_initial(spec.model, seed)
    return simulate(spec.model, initial, length, seed).path, seed


def cmd_validate(args):
    spec = load_chain_spec(args.spec)
    _emit(
        _dump({
            "valid": True,
            "states": list(spec.states),
            "order": spec.model.order,
            "strict_positivity": spec.model.strict,
            **_provenance(spec, spec.seed),
        }),
        args.output,
    )
    return 0


def cmd_simulate(args):
    spec = load_chain_spec(args.spec)
    path, seed = _realize(spec, args)
    meta = _provenance(spec, seed)
    meta["model_digest"] = spec.model.digest()
    _emit(path_to_csv(path, spec.space, meta), args.output)
    return 0


def cmd_analyze(args):
    spec = load_chain_spec(args.spec)
    path, seed = _realize(spec, args)
    report = find_witnesses(
        path, spec.space, args.window, args.epsilon0, args.max_witnesses,
        recurrence=args.recurrence, tolerance=args.tolerance,
    )
    out = report.to_dict()
    out.update(_provenance(spec, seed))
    out["path_length"] = int(len(path))
    _emit(_dump(out), args.output)
    return 0


def cmd_certify(args):
    spec = load_chain_spec(args.spec)
    space, n, K = spec.space, args.depth, args.truncation
    cov_depth = args.coverage_truncation or n + 2
    m = space.m
    if m ** cov_depth > enumeration_budget():
        raise EnumerationBudgetExceeded(f"coverage enumeration {m}**{cov_depth} exceeds the budget")
    coverage = []
    for depth in range(n + 1):
        for prefix in itertools.product(range(m), repeat=depth):
            coverage.append(similarity_coverage(Cylinder(prefix), cov_depth, m).to_dict())
    out = {
        "diameter": check_diameter_condition(space, n, K).to_dict(),
        "separation": [check_separation_condition(space, k).to_dict() for k in range(1, n + 1)],
        "similarity_coverage": {
            "truncation_depth": cov_depth,
            "passed": all(c["passed"] for c in coverage),
            "cylinders": coverage,
        },
        "devaney": devaney_certificate(space, n, K).to_dict(),
        **_provenance(spec, spec.seed),
    }
    _emit(_dump(out), args.output)
    return 0


def cmd_coverage(args):
    spec = load_chain_spec(args.spec)
    path, seed = _realize(spec, args)
    report = arc_coverage(path, spec.model, args.word_length)
    if args.format == "json":
        out = report.to_dict()
        out.update(_provenance(spec, seed))
        _emit(_dump(out), args.output)
        return 0
    lines = [f"# {k}={v}" for k, v in _provenance(spec, seed).items()]
    lines.append("word,admissible,count")
    for word, count in report.counts.items():
        label = " ".join(spec.space.states[s] for s in word)
        lines.append(f"{label},{int(word_is_admissible(word, spec.model))},{count}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def walk_spec_document(seed, length, initial_level=2):
    """The raw reflecting walk written out as a chain-spec document."""
    chain = build_walk_chain()
    return {
        "schema_version": SCHEMA_VERSION,
        "states": list(chain.raw_space.states),
        "metric": chain.raw_space.metric.tolist(),
        "order": 1,
        "transitions": chain.raw_model.probs.tolist(),
        "strict_positivity": False,
        "seed": seed,
        "length": length,
        "initial": [str(initial_level)],
    }


def cmd_example_walk(args):
    config = WalkConfig(horizon=args.horizon, dt=args.dt)
    length = args.length or config.n_intervals + 1
    levels = simulate_walk(length, args.seed, args.initial_level)
    chain = build_walk_chain()
    trace = step_function_export(levels, config, connectors=not args.no_connectors)
    document = walk_spec_document(args.seed, length, args.initial_level)
    meta = {
        "spec_digest": spec_digest(document),
        "seed": args.seed,
        "model_digest": chain.raw_model.digest(),
        "length": length,
    }

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    files = ["walk_spec.json", "walk_trace.csv", "walk_trace.svg", "walk_path.csv",
             "walk_events.csv"]
    (outdir / "walk_spec.json").write_text(_dump(document))
    (outdir / "walk_trace.csv").write_text(trace_to_csv(trace, meta))
    (outdir / "walk_trace.svg").write_text(trace_to_svg(trace, metadata=meta))
    (outdir / "walk_path.csv").write_text(path_to_csv(levels - 1, chain.raw_space, meta))
    events = encode_walk_to_events(levels)
    (outdir / "walk_events.csv").write_text(path_to_csv(events, chain.event_space, meta))
    summary = {
        **meta,
        "intervals": trace.n_intervals,
        "event_matrix": chain.event_model.probs.tolist(),
        "raw_matrix": chain.raw_model.probs.tolist(),
        "files": files,
        "markovchaos_version": __version__,
    }
    _emit(_dump(summary), None)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="markovchaos",
        description="Simulate finite Markov chains and look for chaos witnesses in their paths.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("spec", help="chain-spec JSON file")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        return p

    def with_realization(p):
        p.add_argument("--length", type=_positive_int, help="path length (overrides spec)")
        p.add_argument("--seed", type=_seed, help="seed (overrides spec)")
        p.add_argument("--initial", nargs="+", metavar="LABEL", help="initial block labels")
        return p

    p = with_spec("validate", "check a chain spec")
    p.set_defaults(func=cmd_validate)

    p = with_realization(with_spec("simulate", "emit a sample path as CSV"))
    p.set_defaults(func=cmd_simulate)

    p = with_realization(with_spec("analyze", "search a path for unpredictability witnesses"))
    p.add_argument("--path", help="analyze this path CSV instead of simulating")
    p.add_argument("--window", type=_positive_int, default=DEFAULT_WINDOW)
    p.add_argument("--epsilon0", type=_positive_float)
    p.add_argument("--max-witnesses", type=_positive_int)
    p.add_argument("--recurrence", choices=["equality", "delta"], default="equality",
                   help="exact window agreement, or truncated-metric closeness")
    p.add_argument("--tolerance", type=_positive_float, help="closeness bound for --recurrence delta")
    p.set_defaults(func=cmd_analyze)

    p = with_spec("certify", "diameter, separation, coverage and Devaney certificates")
    p.add_argument("--depth", type=_positive_int, required=True)
    p.add_argument("--truncation", type=_positive_int, default=DEFAULT_DEPTH)
    p.add_argument("--coverage-truncation", type=_positive_int)
    p.set_defaults(func=cmd_certify)

    p = with_realization(with_spec("coverage", "arc-coverage report for a path"))
    p.add_argument("--path", help="use this path CSV instead of simulating")
    p.add_argument("--word-length", type=_positive_int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("example-walk", help="reflecting random walk example: CSV + SVG trace")
    p.add_argument("--outdir", default=".")
    p.add_argument("--seed", type=_seed, default=WALK_SEED)
    p.add_argument("--length", type=_positive_int)
    p.add_argument("--initial-level", type=int, choices=[2, 3], default=2)
    p.add_argument("--horizon", type=_positive_float, default=60.0)
    p.add_argument("--dt", type=_positive_float, default=0.1)
    p.add_argument("--no-connectors", action="store_true")
    p.set_defaults(func=cmd_example_walk)
    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MarkovChaosError as exc:
        code = getattr(exc, "code", type(exc).__name__)
        print(f"error [{code}]: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    try:
        status = run_command(argv)
    except SystemExit as exc:
        status = exc.code if isinstance(exc.code, int) else 2
    sys.exit(status)


if __name__ == "__main__":
    main()
