"""Command registry and handler."""

import sys
from typing import Dict, Optional

from commands.base_command import Command
from commands.curvature_check import CurvatureCommand
from commands.einstein import EinsteinCommand
from commands.fit import FitCommand
from commands.help import HelpCommand
from commands.ivanov_petrova import IvanovPetrovaCommand
from commands.jacobi import JacobiCommand
from commands.jordan import JordanCommand
from commands.metric import MetricCommand
from commands.nilpotent import NilpotentCommand
from commands.osserman import OssermanCommand
from commands.parakaehler_check import ParaKaehlerCommand
from commands.selfdual import SelfDualCommand
from commands.szabo import SzaboCommand

# Command registry
commands: Dict[str, Command] = {}

# Command aliases
aliases: Dict[str, str] = {
    "jordan-osserman": "jordan",
    "null": "nilpotent",
    "ivanov-petrova": "ip",
    "skew": "ip",
    "pk": "parakaehler",
    "sd": "selfdual",
}


def register_commands(quiet: bool = False) -> None:
    """Register all available commands."""
    command_instances = [
        MetricCommand(),
        CurvatureCommand(),
        EinsteinCommand(),
        OssermanCommand(),
        JordanCommand(),
        NilpotentCommand(),
        SzaboCommand(),
        IvanovPetrovaCommand(),
        ParaKaehlerCommand(),
        SelfDualCommand(),
        FitCommand(),
        JacobiCommand(),
        HelpCommand(),
    ]

    for cmd in command_instances:
        commands[cmd.name] = cmd

    if not quiet:
        print(f"Registered {len(commands)} commands: {', '.join(commands.keys())}", file=sys.stderr)
        print(f"Registered {len(aliases)} aliases: {', '.join(f'{k}->{v}' for k, v in aliases.items())}", file=sys.stderr)


def get_command(name: str) -> Optional[Command]:
    """
    Get a command by name or alias.

    Args:
        name: Name or alias of the command

    Returns:
        Command instance or None if not found
    """
    name = name.lower()

    # Check if it's an alias
    if name in aliases:
        name = aliases[name]

    return commands.get(name)
