from fractions import Fraction

import pytest

from errors import ParseError, ScenarioError
from fixtures import FIXTURE_ALIASES, FIXTURES, fixture_name, load_fixture, type_ii_example
from geometry import Chart
from scenario import build_metric, format_scenario, parse_scenario


def scenario_text(body: str) -> str:
    return "dim = 2\nconstruction = extension\n" + body


def test_osserman6_fixture():
    s = load_fixture("sec6")
    assert (s.dim, s.construction, s.c) == (3, "modified_c", 1)
    assert s.connection == {(0, 0, 2): Chart(3).base(1)}
    assert s.notes == []
    assert [c.name for c in s.commands][:4] == ["metric", "curvature", "einstein", "osserman"]
    assert s.commands[1].params == {"compare": "sec6"}
    assert s.commands[4].params == {"expect": "fails"}


def test_type_ii_fixture_builds_the_type_ii_metric():
    s = load_fixture("type-ii")
    assert s.notes == ["Phi[2,1] completed from Phi[1,2] (symmetric)"]
    assert build_metric(s) == type_ii_example(1, Chart(2).base(1))


def test_empty_connection_is_flat():
    s = parse_scenario("dim = 2\nconstruction = extension\n")
    assert s.connection == {}
    m = build_metric(s)
    assert all(not m.B[i][j] for i in range(2) for j in range(2))
    assert s.einstein_data()[2] == 0


def test_missing_twin_symbol_is_completed_with_a_note():
    s = parse_scenario(scenario_text("connection {\n  Gamma[1,2,2] = x1\n}\n"))
    x1 = Chart(2).base(0)
    assert s.connection == {(0, 1, 1): x1, (1, 0, 1): x1}
    assert s.notes == ["Gamma[2,1,2] completed from Gamma[1,2,2] (torsion free)"]


def test_comments_and_commas():
    text = (
        "# flat plane with a twist\n"
        "dim = 2   # two base coordinates\n"
        "construction = extension\n"
        "connection { Gamma[1,2,1] = x1, Gamma[2,1,1] = x1 }  # symmetric pair\n"
        "command jacobi { point = (0, 1, 0, 0), vector = (1, 0, 0, 0) }\n"
        "command osserman\n"
    )
    s = parse_scenario(text)
    assert s.notes == []
    assert len(s.connection) == 2
    assert s.commands[0].params == {"point": "(0, 1, 0, 0)", "vector": "(1, 0, 0, 0)"}
    assert s.commands[0].line == 5
    assert s.commands[1].params == {}


def test_scalar_values():
    s = parse_scenario("dim = 3\nconstruction = modified_c\nc = -2/5\n")
    assert s.c == Fraction(-2, 5)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_survive_canonical_printing(name):
    s = load_fixture(name)
    assert parse_scenario(format_scenario(s)) == s


@pytest.mark.parametrize("alias, name", sorted(FIXTURE_ALIASES.items()))
def test_fixture_aliases(alias, name):
    assert name in FIXTURES
    assert fixture_name(alias) == name
    assert load_fixture(alias) == load_fixture(name)


def test_canonical_text():
    s = parse_scenario(scenario_text("connection { Gamma[1,2,2] = x1 }\ncommand metric\n"))
    assert format_scenario(s) == (
        "dim = 2\n"
        "construction = extension\n"
        "connection {\n"
        "  Gamma[1,2,2] = x1\n"
        "  Gamma[2,1,2] = x1\n"
        "}\n"
        "command metric\n"
    )


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_scenario("dim = 2\nconstruction extension\n")
    assert info.value.line == 2
    assert info.value.column == 14


def test_index_out_of_range():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(scenario_text("connection {\n  Gamma[1,1,3] = x2\n}\n"))
    assert "out of range" in info.value.message
    assert (info.value.line, info.value.column) == (4, 3)


def test_unknown_identifier_in_entry():
    with pytest.raises(ParseError) as info:
        parse_scenario(scenario_text("connection {\n  Gamma[1,1,2] = x1*y\n}\n"))
    assert info.value.line == 4
    assert info.value.column >= 18


def test_fiber_coordinates_are_rejected_in_base_data():
    with pytest.raises(ScenarioError) as info:
        parse_scenario(scenario_text("connection { Gamma[1,1,2] = x1p }\n"))
    assert info.value.line == 3


def test_torsion_conflict():
    with pytest.raises(ScenarioError, match="torsion"):
        parse_scenario(scenario_text("connection {\n  Gamma[1,2,1] = x1\n  Gamma[2,1,1] = x2\n}\n"))


@pytest.mark.parametrize(
    "text, message",
    [
        ("dim = 2\ndim = 3\nconstruction = extension\n", "duplicate key"),
        ("dim = 2\nconstruction = modified_c\n", "needs c"),
        ("dim = 2\nconstruction = extension\nPhi { [1,1] = x1 }\n", "not used by construction"),
        ("dim = 3\nconstruction = type_ii\ntau = 1\n", "needs dim = 2"),
        ("dim = 0\nconstruction = extension\n", "positive integer"),
        ("dim = 2\nconstruction = warped\n", "unknown construction"),
        ("dim = 2\nconstruction = extension\nmetric { }\n", "unknown block"),
        ("construction = extension\n", "missing dim"),
        ("dim = 2\nconstruction = extension\ncommand jacobi { point = (0), point = (1) }\n", "duplicate parameter"),
    ],
)
def test_invalid_scenarios(text, message):
    with pytest.raises(ScenarioError, match=message):
        parse_scenario(text)


def test_unclosed_block():
    with pytest.raises(ParseError, match="unclosed"):
        parse_scenario(scenario_text("connection {\n  Gamma[1,1,1] = x1\n"))
