"""Command-line entry point: run scenario files and list the built-in fixtures."""

import argparse
import asyncio
import os
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from commands.base_command import RunContext
from commands.command_handler import get_command, register_commands
from curvature_service import CurvatureService, curvature_service, progress, verbose
from errors import WalkerError
from fixtures import fixture_text, is_fixture, list_fixtures
from report import Report, error_section
from scenario import Scenario, parse_scenario

# Load environment variables
load_dotenv()

EXIT_INVALID = 2


async def run_scenario(
    scenario: Scenario,
    name: str = "<scenario>",
    seed: Optional[int] = None,
    service: CurvatureService = curvature_service,
) -> Report:
    """
    Execute the scenario's commands in order.

    A failing command becomes an ERROR section; the remaining commands still run.
    """
    if not get_command("help"):
        register_commands(quiet=not verbose())
    report = Report(name, seed, list(scenario.notes))
    for note in scenario.notes:
        print(f"🔧 {note}", file=sys.stderr)
    context = RunContext(scenario, service.computation(scenario), service, seed)
    for spec in scenario.commands:
        command = get_command(spec.name)
        if not command:
            report.add(error_section(spec.name, WalkerError(f"Unknown command: {spec.name}")))
            continue
        progress(f"▶️ Running {command.name}")
        try:
            report.add(await command.execute(context, spec.params))
        except Exception as e:
            print(f"Error executing command {spec.name}: {e}", file=sys.stderr)
            traceback.print_exc()
            report.add(error_section(spec.name, e))
    return report


def _load(path: str) -> Scenario:
    if is_fixture(path) and not Path(path).exists():
        return parse_scenario(fixture_text(path))
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def cmd_run(args: argparse.Namespace) -> int:
    try:
        scenario = _load(args.file)
    except (OSError, WalkerError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    report = asyncio.run(run_scenario(scenario, args.file, args.seed))
    sys.stdout.write(report.render(args.format))
    return report.exit_code()


def cmd_fixtures(args: argparse.Namespace) -> int:
    if args.name is None:
        for name, description, names in list_fixtures():
            print(f"{name:12} {description} (alias: {', '.join(names)})")
        return 0
    try:
        sys.stdout.write(fixture_text(args.name))
    except WalkerError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walker-ext", description="Exact curvature computations for Walker metrics"
    )
    sub = parser.add_subparsers(dest="action", required=True)

    run = sub.add_parser("run", help="run a scenario file (or a built-in fixture name)")
    run.add_argument("file")
    run.add_argument(
        "--format",
        choices=("text", "json"),
        default=os.getenv("WALKER_EXT_FORMAT", "text"),
    )
    run.add_argument("--seed", type=int, default=None, help="sampling seed for every command")
    run.set_defaults(handler=cmd_run)

    fixtures = sub.add_parser("fixtures", help="list built-in scenarios or print one")
    fixtures.add_argument("name", nargs="?")
    fixtures.set_defaults(handler=cmd_fixtures)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for walker-ext."""
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
