"""Command line front end.

Subcommands:
    sim       simulate only (requires a seed)
    de        density-evolution analysis only (no randomness involved)
    run       whatever modes the config asks for
    validate  parse and check a config, run nothing

Failures print a single JSON object to stderr so wrappers can parse them;
exit status is 0 only when every requested point completed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import ConfigError, parse_config
from .dist import DistributionError
from .frames import ScenarioError
from .harness import ANALYZE, SIMULATE, SweepError, SweepSpec, run_sweep_detailed
from .power import PowerConfigError
from .reporting import ReportError, build_manifest, emit_csv, write_manifest

_PERSPECTIVES = {"paper": "node", "edge": "edge"}


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _fail(kind: str, message: str) -> "CliError":
    return CliError(kind, message)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-irsa",
        description="Multi-satellite NOMA-IRSA random access: Monte Carlo and density evolution.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_out: bool = True):
        p.add_argument("--config", required=True, help="JSON sweep config")
        if needs_out:
            p.add_argument("--out", required=True, help="output CSV path")
        p.add_argument("--seed", type=int, default=None, help="master seed (overrides config)")
        p.add_argument("--threads", type=int, default=1, help="worker threads for simulation")
        p.add_argument(
            "--de-perspective",
            choices=sorted(_PERSPECTIVES),
            default="paper",
            help="density-evolution update form (paper: node-perspective recursion)",
        )

    add_common(sub.add_parser("sim", help="Monte Carlo simulation only"))
    add_common(sub.add_parser("de", help="density-evolution analysis only"))
    add_common(sub.add_parser("run", help="run the modes listed in the config"))
    add_common(sub.add_parser("validate", help="check the config and exit"), needs_out=False)
    return parser


_FORCED_MODES = {"sim": [SIMULATE], "de": [ANALYZE]}


def _load(args) -> tuple[dict, SweepSpec]:
    path = Path(args.config)
    try:
        text = path.read_text()
    except OSError as exc:
        raise _fail("io", f"cannot read config {path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail(
            "config", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    # sim/de narrow the modes before validation so e.g. a seedless config
    # still analyzes; the manifest hashes the file as given.
    work = data
    if isinstance(data, dict) and args.command in _FORCED_MODES:
        work = dict(data)
        work["modes"] = _FORCED_MODES[args.command]
    try:
        spec = parse_config(work, seed_override=args.seed)
    except (ConfigError, DistributionError, ScenarioError, PowerConfigError, SweepError) as exc:
        raise _fail("config", str(exc)) from exc
    return data, spec


def _execute(args, spec, data: dict) -> int:
    if args.threads < 1:
        raise _fail("usage", f"--threads must be >= 1, got {args.threads}")
    perspective = _PERSPECTIVES[args.de_perspective]
    try:
        records, details = run_sweep_detailed(spec, threads=args.threads, de_perspective=perspective)
        emit_csv(records, args.out)
        manifest = build_manifest(
            records,
            details,
            config_data=data,
            master_seed=spec.base.master_seed,
            threads=args.threads,
            de_perspective=perspective,
        )
        manifest_file = write_manifest(manifest, args.out)
    except (SweepError, ScenarioError, ReportError, OSError) as exc:
        raise _fail("run", str(exc)) from exc
    print(f"wrote {len(records)} records to {args.out}")
    print(f"manifest: {manifest_file}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data, spec = _load(args)
        if args.command == "validate":
            n_points = len(spec.loads) * len(spec.k_values) * len(spec.modes)
            print(
                f"ok: {len(spec.loads)} loads x {len(spec.k_values)} k values x "
                f"{len(spec.modes)} modes = {n_points} points"
            )
            return 0
        return _execute(args, spec, data)
    except CliError as exc:
        print(json.dumps({"error": str(exc), "kind": exc.kind}), file=sys.stderr)
        return 2 if exc.kind in ("config", "usage", "io") else 1


if __name__ == "__main__":
    sys.exit(main())
