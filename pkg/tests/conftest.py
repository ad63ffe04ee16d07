import sympy as sp
import pytest

from mvbessel.field import ParamRational

a_sym, k_sym = sp.symbols("a k")


def to_sympy(c) -> sp.Expr:
    """Parse the canonical string form into a sympy expression in a, k."""
    if not isinstance(c, ParamRational):
        c = ParamRational(c) if isinstance(c, int) else c
    return sp.sympify(str(c).replace("^", "**"), locals={"a": a_sym, "k": k_sym})


def sym_equal(x, y) -> bool:
    return sp.simplify(sp.together(x - y)) == 0


@pytest.fixture(scope="session")
def syms():
    return a_sym, k_sym


# one line per acceptance criterion, filled by test_acceptance and printed at the end of the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[num])
