import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from unsharp.io import fixture  # noqa: E402
from unsharp.poset import validate  # noqa: E402


@pytest.fixture(scope="session")
def fig1():
    return fixture("fig1")


@pytest.fixture(scope="session")
def fig2():
    return fixture("fig2")


@pytest.fixture(scope="session")
def fig3():
    return fixture("fig3")


@pytest.fixture(scope="session")
def fig4():
    return fixture("fig4")


@st.composite
def bounded_posets(draw, min_inner=0, max_inner=5):
    """Random bounded poset: a DAG on inner points plus adjoined 0 and 1."""
    k = draw(st.integers(min_inner, max_inner))
    inner = [f"x{i}" for i in range(k)]
    pairs = [(inner[i], inner[j]) for i in range(k) for j in range(i + 1, k)]
    edges = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    covers = [pr for pr, e in zip(pairs, edges) if e]
    covers += [("0", x) for x in inner] + [(x, "1") for x in inner]
    if not inner:
        covers.append(("0", "1"))
    return validate(["0", *inner, "1"], covers)



@pytest.fixture
def report_line(request):
    """Record one acceptance verdict line for the terminal summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(line):
        print(line)
        lines.append(line)

    return record


_LINES = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter):
    lines = terminalreporter.config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
