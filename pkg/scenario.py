"""Scenario files: parsing, canonical printing and metric construction.

A scenario is line oriented:

    dim = 3
    construction = modified_c
    c = 1
    connection { Gamma[1,1,3] = x2 }
    command jordan { expect = fails, samples = 32 }

Block entries are separated by newlines or by commas outside brackets and
parentheses. "#" starts a comment that runs to the end of the line.
"""

import re
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from curvature import affine_curvature
from errors import ParseError, ScenarioError, WalkerError
from expr import Poly, format_poly, format_rat, parse_rat
from expr_parser import parse_expr
from extension import modified_extension, modified_extension_c, riemannian_extension, selfdual_walker_build
from fourdim import build_ricci_flat_selfdual, build_type_ii, ricci_flat_connection
from geometry import AffineConnection, Chart, EndoBase, SymTensor2Base, VectorFieldBase, WalkerMetric

CONSTRUCTIONS: Dict[str, Tuple[str, ...]] = {
    "extension": ("connection",),
    "modified": ("connection", "Phi", "T", "S"),
    "modified_c": ("connection", "Phi", "c"),
    "selfdual_build": ("connection", "Phi", "X", "T"),
    "type_ii": ("connection", "tau"),
    "ricci_flat_selfdual": ("phi", "Phi"),
}

REQUIRED: Dict[str, Tuple[str, ...]] = {
    "modified_c": ("c",),
    "type_ii": ("tau",),
    "ricci_flat_selfdual": ("phi",),
}

FOUR_DIMENSIONAL = ("selfdual_build", "type_ii", "ricci_flat_selfdual")

_SCALAR_KEYS = ("dim", "construction", "c", "tau", "phi")
_BLOCKS = ("connection", "Phi", "T", "S", "X")

_GAMMA_KEY = re.compile(r"^Gamma\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]$")
_PAIR_KEY = re.compile(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]$")
_SINGLE_KEY = re.compile(r"^\[\s*(\d+)\s*\]$")
_WORD = re.compile(r"[A-Za-z_][\w-]*")

Pair = Tuple[int, int]


@dataclass
class CommandSpec:
    """One `command <name> { ... }` line; parameter values are kept as written."""

    name: str
    params: Dict[str, str] = field(default_factory=dict)
    line: Optional[int] = field(default=None, compare=False)


@dataclass
class Scenario:
    """
    Validated scenario. Indices are 0-based; connection and Phi are stored
    completed (Gamma_ji^k next to Gamma_ij^k, Phi_ji next to Phi_ij).
    """

    dim: int
    construction: str
    connection: Dict[Tuple[int, int, int], Poly] = field(default_factory=dict)
    Phi: Dict[Pair, Poly] = field(default_factory=dict)
    T: Dict[Pair, Poly] = field(default_factory=dict)
    S: Dict[Pair, Poly] = field(default_factory=dict)
    X: Dict[int, Poly] = field(default_factory=dict)
    c: Optional[Fraction] = None
    tau: Optional[Fraction] = None
    phi: Optional[Poly] = None
    commands: List[CommandSpec] = field(default_factory=list)
    notes: List[str] = field(default_factory=list, compare=False)

    @property
    def chart(self) -> Chart:
        return Chart(self.dim)

    def nabla(self) -> AffineConnection:
        if self.construction == "ricci_flat_selfdual":
            return ricci_flat_connection(self.chart, self.phi)
        return AffineConnection(self.chart, dict(self.connection))

    def phi_tensor(self) -> SymTensor2Base:
        return SymTensor2Base.from_entries(self.chart, self.Phi)

    def einstein_data(self) -> Optional[Tuple[AffineConnection, SymTensor2Base, Fraction]]:
        """(nabla, Phi, c) when the metric is some g_{nabla,Phi,c}, else None."""
        if self.construction == "modified_c":
            return self.nabla(), self.phi_tensor(), self.c
        if self.construction == "extension":
            return self.nabla(), SymTensor2Base.zero(self.chart), Fraction(0)
        if self.construction == "ricci_flat_selfdual":
            return self.nabla(), self.phi_tensor(), Fraction(0)
        if self.construction == "type_ii":
            nabla = self.nabla()
            Phi = SymTensor2Base(self.chart, affine_curvature(nabla).ricci_sym).scaled(Fraction(24) / self.tau)
            return nabla, Phi, self.tau / 6
        return None


# --- reading -----------------------------------------------------------------


@dataclass
class _Entry:
    key: str
    value: str
    key_pos: int
    value_pos: int


@dataclass
class _Statement:
    kind: str  # "assign", "block", "command"
    name: str
    pos: int
    value: str = ""
    value_pos: int = 0
    entries: List[_Entry] = field(default_factory=list)


class _Reader:
    def __init__(self, text: str):
        # comments become blanks so that offsets still map to line / column
        self.text = re.sub(r"#[^\n]*", lambda match: " " * len(match.group(0)), text)
        self.pos = 0
        self.line_starts = [0] + [i + 1 for i, ch in enumerate(self.text) if ch == "\n"]

    def where(self, pos: int) -> Tuple[int, int]:
        line = bisect_right(self.line_starts, pos) - 1
        return line + 1, pos - self.line_starts[line] + 1

    def error(self, message: str, pos: int) -> ParseError:
        line, column = self.where(pos)
        return ParseError(message, line, column)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip(self, newlines: bool) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            if self.text[self.pos] == "\n" and not newlines:
                return
            self.pos += 1

    def word(self) -> str:
        match = _WORD.match(self.text, self.pos)
        if not match:
            shown = self.peek()
            raise self.error(f"expected a name, found {shown!r}", self.pos)
        self.pos = match.end()
        return match.group(0)

    def statements(self) -> List[_Statement]:
        result = []
        while True:
            self.skip(newlines=True)
            if self.pos >= len(self.text):
                return result
            start = self.pos
            name = self.word()
            self.skip(newlines=False)
            if name == "command":
                command = self.word()
                statement = _Statement("command", command, start)
                self.skip(newlines=False)
                if self.peek() == "{":
                    self.pos += 1
                    statement.entries = self.block_entries(start)
                self.end_of_line()
                result.append(statement)
            elif self.peek() == "=":
                self.pos += 1
                end = self.text.find("\n", self.pos)
                end = len(self.text) if end < 0 else end
                raw = self.text[self.pos:end]
                value_pos = self.pos + len(raw) - len(raw.lstrip())
                if not raw.strip():
                    raise self.error(f"missing value for {name}", self.pos)
                result.append(_Statement("assign", name, start, raw.strip(), value_pos))
                self.pos = end
            elif self.peek() == "{":
                self.pos += 1
                result.append(_Statement("block", name, start, entries=self.block_entries(start)))
                self.end_of_line()
            else:
                raise self.error(f"expected '=' or '{{' after {name}", self.pos)

    def end_of_line(self) -> None:
        self.skip(newlines=False)
        if self.peek() not in ("", "\n"):
            raise self.error(f"unexpected {self.peek()!r} after block", self.pos)

    def block_entries(self, opened: int) -> List[_Entry]:
        entries = []
        depth = 0
        start = self.pos
        while True:
            if self.pos >= len(self.text):
                raise self.error("unclosed '{'", opened)
            ch = self.text[self.pos]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            if depth == 0 and ch in ",\n}":
                self.add_entry(entries, start, self.pos)
                self.pos += 1
                if ch == "}":
                    return entries
                start = self.pos
                continue
            if ch == "{":
                raise self.error("nested blocks are not allowed", self.pos)
            self.pos += 1

    def add_entry(self, entries: List[_Entry], start: int, end: int) -> None:
        raw = self.text[start:end]
        if not raw.strip():
            return
        key_pos = start + len(raw) - len(raw.lstrip())
        depth = 0
        for offset, ch in enumerate(raw):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "=" and depth == 0:
                value = raw[offset + 1:]
                if not value.strip():
                    raise self.error("missing value", start + offset + 1)
                value_pos = start + offset + 1 + len(value) - len(value.lstrip())
                entries.append(_Entry(raw[:offset].strip(), value.strip(), key_pos, value_pos))
                return
        raise self.error(f"expected 'key = value', found {raw.strip()!r}", key_pos)


# --- validation --------------------------------------------------------------


class _Builder:
    def __init__(self, reader: _Reader):
        self.reader = reader

    def fail(self, message: str, pos: int) -> ScenarioError:
        line, column = self.reader.where(pos)
        return ScenarioError(message, line, column)

    def expr(self, chart: Chart, text: str, pos: int, what: str, base_only: bool = True) -> Poly:
        line, column = self.reader.where(pos)
        p = parse_expr(text, chart, line, column)
        if base_only:
            try:
                chart.check_poly(p, what, base_only=True)
            except WalkerError as e:
                raise ScenarioError(str(e), line, column)
        return p

    def index(self, raw: str, n: int, pos: int, what: str) -> int:
        value = int(raw)
        if not 1 <= value <= n:
            raise self.fail(f"{what} index {value} out of range 1..{n}", pos)
        return value - 1

    def build(self, statements: List[_Statement]) -> Scenario:
        scalars: Dict[str, _Statement] = {}
        blocks: Dict[str, _Statement] = {}
        commands: List[CommandSpec] = []
        for statement in statements:
            if statement.kind == "assign":
                if statement.name not in _SCALAR_KEYS:
                    raise self.fail(f"unknown key {statement.name!r}", statement.pos)
                if statement.name in scalars:
                    raise self.fail(f"duplicate key {statement.name!r}", statement.pos)
                scalars[statement.name] = statement
            elif statement.kind == "block":
                if statement.name not in _BLOCKS:
                    raise self.fail(f"unknown block {statement.name!r}", statement.pos)
                if statement.name in blocks:
                    raise self.fail(f"duplicate block {statement.name!r}", statement.pos)
                blocks[statement.name] = statement
            else:
                commands.append(self.command(statement))

        if "dim" not in scalars:
            raise ScenarioError("missing dim", 1, 1)
        if "construction" not in scalars:
            raise ScenarioError("missing construction", 1, 1)
        dim_stmt = scalars["dim"]
        if not re.fullmatch(r"\d+", dim_stmt.value) or int(dim_stmt.value) < 1:
            raise self.fail(f"dim must be a positive integer, got {dim_stmt.value!r}", dim_stmt.value_pos)
        n = int(dim_stmt.value)
        chart = Chart(n)
        construction_stmt = scalars["construction"]
        construction = construction_stmt.value
        if construction not in CONSTRUCTIONS:
            raise self.fail(
                f"unknown construction {construction!r} (expected one of {', '.join(CONSTRUCTIONS)})",
                construction_stmt.value_pos,
            )
        if construction in FOUR_DIMENSIONAL and n != 2:
            raise self.fail(f"construction {construction} needs dim = 2", dim_stmt.value_pos)
        allowed = CONSTRUCTIONS[construction]
        for name, statement in list(scalars.items()) + list(blocks.items()):
            if name not in ("dim", "construction") and name not in allowed:
                raise self.fail(f"{name} is not used by construction {construction}", statement.pos)
        for name in REQUIRED.get(construction, ()):
            if name not in scalars:
                raise self.fail(f"construction {construction} needs {name}", construction_stmt.pos)

        scenario = Scenario(dim=n, construction=construction, commands=commands)
        for name in ("c", "tau"):
            if name in scalars:
                statement = scalars[name]
                try:
                    setattr(scenario, name, parse_rat(statement.value))
                except ParseError as e:
                    raise self.fail(e.message, statement.value_pos)
        if "phi" in scalars:
            statement = scalars["phi"]
            scenario.phi = self.expr(chart, statement.value, statement.value_pos, "phi")
        if "connection" in blocks:
            self.connection(chart, blocks["connection"], scenario)
        if "Phi" in blocks:
            self.symmetric(chart, blocks["Phi"], scenario)
        for name in ("T", "S"):
            if name in blocks:
                setattr(scenario, name, self.pairs(chart, blocks[name], name))
        if "X" in blocks:
            self.vector(chart, blocks["X"], scenario)
        return scenario

    def command(self, statement: _Statement) -> CommandSpec:
        params: Dict[str, str] = {}
        for entry in statement.entries:
            if entry.key in params:
                raise self.fail(f"duplicate parameter {entry.key!r} for command {statement.name}", entry.key_pos)
            params[entry.key] = entry.value
        return CommandSpec(statement.name, params, self.reader.where(statement.pos)[0])

    def connection(self, chart: Chart, block: _Statement, scenario: Scenario) -> None:
        given: Dict[Tuple[int, int, int], Poly] = {}
        for entry in block.entries:
            match = _GAMMA_KEY.match(entry.key)
            if not match:
                raise self.fail(f"expected Gamma[i,j,k], found {entry.key!r}", entry.key_pos)
            key = tuple(self.index(raw, chart.n, entry.key_pos, "connection") for raw in match.groups())
            if key in given:
                raise self.fail(f"duplicate entry {entry.key}", entry.key_pos)
            given[key] = self.expr(chart, entry.value, entry.value_pos, entry.key)
            i, j, k = key
            twin = (j, i, k)
            if twin in given and twin != key and given[twin] != given[key]:
                raise self.fail(
                    f"torsion: Gamma[{i + 1},{j + 1},{k + 1}] differs from Gamma[{j + 1},{i + 1},{k + 1}]",
                    entry.key_pos,
                )
        completed = {}
        for (i, j, k), value in sorted(given.items()):
            if not value:
                continue
            completed[(i, j, k)] = value
            if (j, i, k) not in given:
                completed[(j, i, k)] = value
                scenario.notes.append(
                    f"Gamma[{j + 1},{i + 1},{k + 1}] completed from Gamma[{i + 1},{j + 1},{k + 1}] (torsion free)"
                )
        scenario.connection = completed

    def pairs(self, chart: Chart, block: _Statement, what: str) -> Dict[Pair, Poly]:
        given: Dict[Pair, Poly] = {}
        for entry in block.entries:
            match = _PAIR_KEY.match(entry.key)
            if not match:
                raise self.fail(f"expected [i,j] in {what}, found {entry.key!r}", entry.key_pos)
            key = tuple(self.index(raw, chart.n, entry.key_pos, what) for raw in match.groups())
            if key in given:
                raise self.fail(f"duplicate entry {what}{entry.key}", entry.key_pos)
            given[key] = self.expr(chart, entry.value, entry.value_pos, f"{what}{entry.key}")
        return {key: value for key, value in given.items() if value}

    def symmetric(self, chart: Chart, block: _Statement, scenario: Scenario) -> None:
        given = self.pairs(chart, block, "Phi")
        completed: Dict[Pair, Poly] = {}
        for (i, j), value in sorted(given.items()):
            if (j, i) in given and given[(j, i)] != value:
                raise self.fail(f"Phi[{i + 1},{j + 1}] and Phi[{j + 1},{i + 1}] differ", block.pos)
            completed[(i, j)] = value
            if (j, i) not in given:
                completed[(j, i)] = value
                scenario.notes.append(f"Phi[{j + 1},{i + 1}] completed from Phi[{i + 1},{j + 1}] (symmetric)")
        scenario.Phi = completed

    def vector(self, chart: Chart, block: _Statement, scenario: Scenario) -> None:
        for entry in block.entries:
            match = _SINGLE_KEY.match(entry.key)
            if not match:
                raise self.fail(f"expected [i] in X, found {entry.key!r}", entry.key_pos)
            i = self.index(match.group(1), chart.n, entry.key_pos, "X")
            if i in scenario.X:
                raise self.fail(f"duplicate entry X{entry.key}", entry.key_pos)
            value = self.expr(chart, entry.value, entry.value_pos, f"X{entry.key}")
            if value:
                scenario.X[i] = value


def parse_scenario(text: str) -> Scenario:
    """
    Parse and validate scenario text.

    Args:
        text: Scenario file contents

    Returns:
        The validated Scenario; auto-completions are listed in its notes

    Raises:
        ParseError: syntax errors, with line and column
        ScenarioError: index out of range, duplicate keys, missing c / tau / phi,
            blocks the construction does not use, conflicting entries
    """
    reader = _Reader(text)
    return _Builder(reader).build(reader.statements())


# --- printing ----------------------------------------------------------------


def _block(name: str, lines: List[str]) -> List[str]:
    if not lines:
        return []
    return [f"{name} {{"] + [f"  {line}" for line in lines] + ["}"]


def format_scenario(scenario: Scenario) -> str:
    """Canonical text of a scenario; parse_scenario(format_scenario(s)) == s."""
    out = [f"dim = {scenario.dim}", f"construction = {scenario.construction}"]
    if scenario.c is not None:
        out.append(f"c = {format_rat(scenario.c)}")
    if scenario.tau is not None:
        out.append(f"tau = {format_rat(scenario.tau)}")
    if scenario.phi is not None:
        out.append(f"phi = {format_poly(scenario.phi)}")
    out += _block(
        "connection",
        [f"Gamma[{i + 1},{j + 1},{k + 1}] = {format_poly(v)}" for (i, j, k), v in sorted(scenario.connection.items())],
    )
    out += _block("Phi", [f"[{i + 1},{j + 1}] = {format_poly(v)}" for (i, j), v in sorted(scenario.Phi.items())])
    for name in ("T", "S"):
        entries = getattr(scenario, name)
        out += _block(name, [f"[{i + 1},{j + 1}] = {format_poly(v)}" for (i, j), v in sorted(entries.items())])
    out += _block("X", [f"[{i + 1}] = {format_poly(v)}" for i, v in sorted(scenario.X.items())])
    for command in scenario.commands:
        if command.params:
            params = ", ".join(f"{k} = {v}" for k, v in command.params.items())
            out.append(f"command {command.name} {{ {params} }}")
        else:
            out.append(f"command {command.name}")
    return "\n".join(out) + "\n"


# --- construction ------------------------------------------------------------


def build_metric(scenario: Scenario) -> WalkerMetric:
    """The Walker metric the scenario's construction selector describes."""
    chart = scenario.chart
    construction = scenario.construction
    Phi = scenario.phi_tensor()
    if construction == "extension":
        return riemannian_extension(scenario.nabla())
    if construction == "modified":
        T = EndoBase.from_entries(chart, scenario.T)
        S = EndoBase.from_entries(chart, scenario.S)
        return modified_extension(scenario.nabla(), Phi, T, S)
    if construction == "modified_c":
        return modified_extension_c(scenario.nabla(), Phi, scenario.c)
    if construction == "selfdual_build":
        X = VectorFieldBase(chart, tuple(scenario.X.get(i, chart.zero()) for i in range(chart.n)))
        T = EndoBase.from_entries(chart, scenario.T)
        return selfdual_walker_build(X, T, scenario.nabla(), Phi)
    if construction == "type_ii":
        return build_type_ii(scenario.nabla(), scenario.tau)
    if construction == "ricci_flat_selfdual":
        return build_ricci_flat_selfdual(scenario.phi, Phi)
    raise ScenarioError(f"unknown construction {construction!r}")
