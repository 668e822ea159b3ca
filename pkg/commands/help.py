"""Help command - lists the scenario commands."""

from typing import Dict

from commands.base_command import Command, RunContext
from report import Section, Status


class HelpCommand(Command):
    """Command that displays all available scenario commands."""

    def __init__(self):
        super().__init__("help", "Lists the available commands")

    async def execute(self, context: RunContext, params: Dict[str, str]) -> Section:
        from commands.command_handler import aliases, commands

        self.check_params(params)
        reverse: Dict[str, list] = {}
        for alias, target in aliases.items():
            reverse.setdefault(target, []).append(alias)
        lines = []
        for cmd in sorted(commands.values(), key=lambda c: c.name):
            line = f"{cmd.name} - {cmd.description}"
            if cmd.name in reverse:
                line += f" (aliases: {', '.join(sorted(reverse[cmd.name]))})"
            if cmd.params:
                line += f" [params: {', '.join(cmd.params)}]"
            lines.append(line)
        listing = {cmd.name: cmd.description for cmd in commands.values()}
        return Section(self.name, Status.INFO, "available commands", lines, {"commands": listing})
