"""Built-in scenarios and reference curvature values."""

import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple

from curvature import RiemannTensor
from errors import ScenarioError
from expr import Poly
from expr_parser import parse_expr
from geometry import Chart, WalkerMetric
from scenario import Scenario, parse_scenario

FIXTURE_DIR = Path(__file__).parent / "scenarios"

FIXTURES: Dict[str, str] = {
    "sec6": "six-dimensional g_{nabla,1} with Gamma_11^3 = x2: Osserman, not Jordan Osserman",
    "thm11-n2": "para-Kaehler space form g_{nabla,c} on T*R^2 with flat nabla",
    "thm11-n3": "para-Kaehler space form on T*R^3, checked against the curvature table",
    "eq7c": "Einstein self-dual Type II metric written as g_{nabla,Phi,4}",
    "thm71": "Ricci flat self-dual metric from a potential phi",
    "thm73-demo": "Einstein self-dual metric built from a non-flat surface connection and tau",
}

# Fixture aliases
FIXTURE_ALIASES: Dict[str, str] = {
    "osserman-6d": "sec6",
    "para-kaehler-2": "thm11-n2",
    "para-kaehler-3": "thm11-n3",
    "type-ii": "eq7c",
    "ricci-flat-selfdual": "thm71",
    "einstein-selfdual": "thm73-demo",
}


def fixture_name(name: str) -> str:
    """Resolve an alias to the fixture name; unknown names are returned unchanged."""
    return FIXTURE_ALIASES.get(name, name)


def is_fixture(name: str) -> bool:
    return fixture_name(name) in FIXTURES


def list_fixtures() -> List[Tuple[str, str, List[str]]]:
    """(name, description, aliases) for every built-in scenario."""
    return [
        (name, description, sorted(alias for alias, target in FIXTURE_ALIASES.items() if target == name))
        for name, description in sorted(FIXTURES.items())
    ]


def fixture_path(name: str) -> Path:
    name = fixture_name(name)
    if name not in FIXTURES:
        raise ScenarioError(f"unknown fixture {name!r} (available: {', '.join(sorted(FIXTURES))})")
    return FIXTURE_DIR / f"{name}.wlk"


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


def load_fixture(name: str) -> Scenario:
    return parse_scenario(fixture_text(name))


def type_ii_example(k, f: Poly) -> WalkerMetric:
    """
    Type II Einstein self-dual metric with parameters k and f in Walker coordinates.

    Args:
        k: Nonzero rational
        f: Polynomial in x2 alone

    Returns:
        B11 = 4k x1'^2 - f^2/(4k), B22 = 4k x2'^2, B12 = 4k x1' x2' + x2' f - f'/(4k)
    """
    k = Fraction(k)
    chart = Chart(2)
    chart.check_poly(f, "f", base_only=True)
    if f.diff(0):
        raise ScenarioError("f must depend on x2 only")
    p1, p2 = chart.fiber(0), chart.fiber(1)
    inverse = 1 / (4 * k)
    a = p1 * p1 * (4 * k) - f * f * inverse
    b = p2 * p2 * (4 * k)
    c = p1 * p2 * (4 * k) + p2 * f - f.diff(1) * inverse
    return WalkerMetric.from_rows(chart, [[a, c], [c, b]])


# Lowered curvature of the six-dimensional fixture as tabulated by hand; several
# labels share one value.
OSSERMAN6_CURVATURE: List[Tuple[Tuple[str, ...], str]] = [
    (("1212",), "1/2*x2p*x3p*(x2*x2p - 4)"),
    (("1213",), "1/2*x3p^2*(x2*x2p - 2)"),
    (("1211'",), "1/4*x1p*x2p"),
    (("1222'", "1323'", "13'23"), "-1/4*x1p*x2p"),
    (("1212'", "1313'"), "-1/4*(x1p^2 - 2*x2*x3p)"),
    (("1221'",), "1/4*x2p^2"),
    (("2323'",), "-1/4*x2p^2"),
    (("1213'",), "-1"),
    (("11'11'", "22'22'", "33'33'"), "1"),
    (("1231'", "1321'", "2322'"), "1/4*x2p*x3p"),
    (("2333'",), "-1/4*x2p*x3p"),
    (("1232'", "1333'"), "-1/4*x1p*x3p"),
    (("1311'", "12'23"), "1/4*x1p*x3p"),
    (("1313",), "1/2*x2*x3p^3"),
    (("1331'", "2332'"), "1/4*x3p^2"),
    (("11'22'", "11'33'", "12'21'", "13'31'", "22'33'", "23'32'"), "1/2"),
]

_SLOT = re.compile(r"(\d)('?)")


def parse_label(label: str, n: int) -> Tuple[int, ...]:
    """"12'21'" -> (0, 4, 1, 3) for n = 3."""
    return tuple(int(digit) - 1 + (n if prime else 0) for digit, prime in _SLOT.findall(label))


def compare_reference(
    R: RiemannTensor, table: List[Tuple[Tuple[str, ...], str]] = OSSERMAN6_CURVATURE
) -> List[str]:
    """
    Compare lowered components with a reference list.

    Returns:
        One message per disagreeing entry; each is also printed as a warning
    """
    chart = R.chart
    mismatches = []
    for labels, text in table:
        expected = parse_expr(text, chart)
        for label in labels:
            actual = R.lowered_at(*parse_label(label, chart.n))
            if actual == expected:
                continue
            kind = "sign" if actual == -expected else "value"
            message = f"R_{label}: reference {expected}, computed {actual} ({kind} mismatch)"
            print(f"Warning: transcription mismatch {message}", file=sys.stderr)
            mismatches.append(message)
    return mismatches


REFERENCE_TABLES = {"sec6": OSSERMAN6_CURVATURE}
