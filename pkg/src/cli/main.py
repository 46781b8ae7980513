"""Command-line entry point of the `ialg` binary.

Usage:
    ialg run FILE
    ialg corpus [NAME]
    ialg dims FILE LO HI
    ialg check FILE KIND [LO..HI]
    ialg tail|gens|torsion|hom|tau|qgrhom|saturate|chi1|aofseq FILE ARGS...

FILE may be `-` for stdin. Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from src.cli.commands import COMMANDS, run_session
from src.cli.corpus import load_corpus_text, load_manifest
from src.cli.report import render_json, render_text
from src.cli.session import load_session
from src.config.settings import Settings, get_settings
from src.shared.errors import ParseError, ResourceLimitError
from src.shared.types import ExitCode

logger = logging.getLogger(__name__)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit the JSON report")
    common.add_argument("--window", help="Window LO..HI used by every command")
    common.add_argument("--field", help="Override the field: Q or 'Fp P'")
    common.add_argument("--chain-len", type=int, help="Nested windows per generation test")
    common.add_argument("--probe-len", type=int, help="Chain length of colimit probes")
    common.add_argument("--limit-window", type=int, help="Maximum window size")
    common.add_argument("--limit-dim", type=int, help="Maximum component dimension")
    common.add_argument("--limit-paths", type=int, help="Maximum paths per component")
    common.add_argument("--log-level", help="Logging level for stderr diagnostics")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per command."""
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="ialg", description="Exact computations with positively indexed algebras."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="Execute the file's run lines")
    run.add_argument("file")
    corpus = sub.add_parser("corpus", parents=[common], help="List or run corpus entries")
    corpus.add_argument("name", nargs="?")
    for name in COMMANDS:
        command = sub.add_parser(name, parents=[common], help=f"Run `{name}` on a file")
        command.add_argument("file")
        command.add_argument("args", nargs="*")
    return parser


def _settings(ns: argparse.Namespace) -> Settings:
    overrides = {
        "generation_chain_length": ns.chain_len,
        "probe_chain_length": ns.probe_len,
        "window_limit": ns.limit_window,
        "component_dim_limit": ns.limit_dim,
        "path_count_limit": ns.limit_paths,
        "log_level": ns.log_level,
    }
    base = get_settings().model_dump()
    base.update({k: v for k, v in overrides.items() if v is not None})
    return Settings.model_validate(base)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _list_corpus(as_json: bool) -> int:
    entries = load_manifest()
    if as_json:
        rows = [{"name": e.name, "file": e.file, "description": e.description} for e in entries]
        print(json.dumps(rows, indent=2))
    else:
        for e in entries:
            print(f"{e.name:16} {e.description}")
    return ExitCode.OK


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI.

    Args:
        argv: Arguments without the program name (defaults to sys.argv).

    Returns:
        Process exit code: 0 verified, 1 usage or parse error, 2 refuted,
        3 inconclusive, 4 resource limit.
    """
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        settings = _settings(ns)
    except ValidationError as exc:
        print(f"ialg: invalid option: {exc}", file=sys.stderr)
        return ExitCode.USAGE
    logging.basicConfig(
        level=settings.log_level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s %(message)s",
    )
    commands: list[tuple[str, Sequence[str]]] | None = None
    try:
        if ns.command == "corpus":
            if ns.name is None:
                return _list_corpus(ns.json)
            source, text = ns.name, load_corpus_text(ns.name)
        else:
            source, text = ns.file, _read(ns.file)
            if ns.command != "run":
                commands = [(ns.command, tuple(ns.args))]
    except OSError as exc:
        print(f"ialg: {exc}", file=sys.stderr)
        return ExitCode.USAGE
    try:
        session = load_session(text, settings=settings, field_text=ns.field)
    except ParseError as exc:
        print(f"{source}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return ExitCode.USAGE
    except ResourceLimitError as exc:
        print(f"{source}: {exc}", file=sys.stderr)
        return ExitCode.RESOURCE_LIMIT
    report = run_session(session, text, commands, window=ns.window)
    if ns.json:
        print(render_json(report, settings.json_indent))
    else:
        sys.stdout.write(render_text(report))
    code = report.exit_code()
    logger.info("run_finished", extra={"source": source, "exit_code": int(code)})
    return code


if __name__ == "__main__":
    sys.exit(main())
