"""Command-line entry point: ``sparp {generate,validate,recommend,evaluate,sweep}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as dio
from .evaluation import DEFAULT_BETAS, METHODS, RELEVANCE_MODES, MetricsReport, RelevanceCriteria, SplitSpec, run_experiment
from .hybrid import run_pipeline
from .model import NORMALIZATION_MODES, ConferenceConfig, validate_dataset

EXIT_OK, EXIT_DATA, EXIT_IO = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_DATA):
        super().__init__(message)
        self.code = code


def _config(args) -> ConferenceConfig:
    return ConferenceConfig(
        total_time_minutes=args.total_time,
        beta=args.beta,
        gamma=args.gamma,
        normalization_mode=args.mode,
        top_n=args.top_n,
        strict=not args.lenient,
    )


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load(args):
    cfg = _config(args)
    if args.contacts is None and args.profiles is None and getattr(args, "allow_synthetic", False):
        return dio.generate_synthetic(dio.SynthesisParams(seed=args.seed, config=cfg))
    if args.contacts is None or args.profiles is None:
        raise CliError("both --contacts and --profiles are required")
    try:
        d = dio.load_dataset(_read(args.contacts), _read(args.profiles), cfg)
    except dio.ParseError as exc:
        raise CliError(f"{exc}") from None
    problems = validate_dataset(d)
    if problems:
        raise CliError("invalid dataset:\n" + "\n".join(f"  {v}" for v in problems))
    return d


def _emit(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(data.decode("utf-8"))
        return
    try:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror or exc}", EXIT_IO) from None


def cmd_generate(args) -> int:
    d = dio.generate_synthetic(dio.SynthesisParams(n_participants=args.n, seed=args.seed,
                                                   config=_config(args)))
    out = Path(args.out or ".")
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "contacts.csv").write_bytes(dio.dump_contacts(d.contacts))
        (out / "profiles.csv").write_bytes(dio.dump_profiles(d.profiles))
    except OSError as exc:
        raise CliError(f"cannot write to {out}: {exc.strerror or exc}", EXIT_IO) from None
    print(dio.marginal_summary(d))
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.contacts is None or args.profiles is None:
        raise CliError("both --contacts and --profiles are required")
    try:
        d = dio.load_dataset(_read(args.contacts), _read(args.profiles), _config(args))
    except dio.ParseError as exc:
        raise CliError(str(exc)) from None
    problems = validate_dataset(d)
    for v in problems:
        print(v)
    if problems:
        return EXIT_DATA
    print(f"ok: {len(d.participants)} participants, {len(d.contacts)} contact records")
    return EXIT_OK


def cmd_recommend(args) -> int:
    d = _load(args)
    _emit(dio.dump_recommendations(run_pipeline(d)), args.out)
    return EXIT_OK


def format_table(report: MetricsReport) -> str:
    """Rows of bucket/beta against MAE and NMAE per method."""
    methods = list(dict.fromkeys(r.method for r in report.rows))
    cells = {(r.bucket, r.beta, r.method): r for r in report.rows}
    keys = sorted({(r.beta, r.bucket) for r in report.rows})
    head = f"{'coefficient':<18}" + "".join(f"{'MAE ' + m:>10}" for m in methods) \
        + "".join(f"{'NMAE ' + m:>11}" for m in methods)
    lines = [head]
    for beta, bucket in keys:
        label = f"{bucket:.1f} (beta={beta:g})"
        mae = "".join(f"{cells[bucket, beta, m].mae:>10.3f}" if (bucket, beta, m) in cells else f"{'-':>10}"
                      for m in methods)
        nm = "".join(f"{cells[bucket, beta, m].nmae:>11.3f}" if (bucket, beta, m) in cells else f"{'-':>11}"
                     for m in methods)
        lines.append(f"{label:<18}{mae}{nm}")
    crit = report.criteria
    lines.append(f"relevance: mode={crit.mode} tau={crit.tau:g}; split: train={report.split.train_ratio:g} "
                 f"seed={report.split.seed}")
    return "\n".join(lines)


def _experiment(args, betas) -> int:
    d = _load(args)
    report = run_experiment(
        d, betas, args.methods,
        RelevanceCriteria(args.relevance, args.tau),
        SplitSpec(args.split, args.seed),
        workers=args.workers,
    )
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    data = dio.export_report(report, args.format)
    if args.out is None:
        _emit(data, None)
    else:
        _emit(data, args.out)
        print(format_table(report))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    return _experiment(args, [args.beta])


def cmd_sweep(args) -> int:
    return _experiment(args, args.betas)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparp", description="Socially and personality aware participant recommendation.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--contacts", help="contacts.csv path")
    common.add_argument("--profiles", help="profiles.csv path")
    common.add_argument("--beta", type=float, default=0.1, help="weight of the past epoch tie")
    common.add_argument("--gamma", type=float, default=0.8, help="recommendation threshold")
    common.add_argument("--mode", choices=NORMALIZATION_MODES, default="minmax")
    common.add_argument("--top-n", type=int, default=None)
    common.add_argument("--total-time", type=float, default=720.0, help="window length in minutes")
    common.add_argument("--lenient", action="store_true", help="clamp raw ties above 1 instead of failing")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", default=None)

    experiment = argparse.ArgumentParser(add_help=False)
    experiment.add_argument("--methods", nargs="+", choices=METHODS, default=list(METHODS))
    experiment.add_argument("--relevance", choices=RELEVANCE_MODES, default="either")
    experiment.add_argument("--tau", type=float, default=0.5)
    experiment.add_argument("--split", type=float, default=0.7, help="train ratio")
    experiment.add_argument("--format", choices=("csv", "json"), default="csv")
    experiment.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("generate", parents=[common], help="write a synthetic dataset")
    p.add_argument("--n", type=int, default=dio.DEFAULT_N)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", parents=[common], help="check dataset files")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("recommend", parents=[common], help="write recommendations CSV")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("evaluate", parents=[common, experiment], help="metrics for one beta")
    p.set_defaults(func=cmd_evaluate, allow_synthetic=True)

    p = sub.add_parser("sweep", parents=[common, experiment], help="metrics over several betas")
    p.add_argument("--betas", nargs="+", type=float, default=list(DEFAULT_BETAS))
    p.set_defaults(func=cmd_sweep, allow_synthetic=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
