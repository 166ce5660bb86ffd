from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from bornrule import Event, OutcomeSpace, new_outcome_space, new_partition, uniform_space

SPACES = Path(__file__).resolve().parent.parent / "spaces"

CARD_LABELS = ("♣", "♦", "♥", "♠")


@pytest.fixture
def card():
    return uniform_space(CARD_LABELS)


@pytest.fixture
def coin():
    return new_outcome_space(["H", "T"], [0.5, 0.5])


@pytest.fixture
def skewed():
    return new_outcome_space(["u1", "u2", "u3", "u4"], [0.1, 0.2, 0.3, 0.4])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@st.composite
def spaces(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    w = draw(st.lists(st.floats(1e-3, 1.0), min_size=n, max_size=n))
    total = sum(w)
    return OutcomeSpace(tuple(f"u{i}" for i in range(n)), tuple(x / total for x in w))


@st.composite
def space_and_event(draw, nonempty=True, max_n=12):
    space = draw(spaces(max_n=max_n))
    members = draw(st.sets(st.integers(0, space.n - 1), min_size=1 if nonempty else 0))
    return space, Event(space, frozenset(members))


@st.composite
def space_and_two_events(draw, max_n=12):
    space, S = draw(space_and_event(max_n=max_n))
    T = draw(st.sets(st.integers(0, space.n - 1)))
    return space, Event(space, frozenset(T)), S


@st.composite
def space_and_partition(draw, max_n=12):
    space = draw(spaces(max_n=max_n))
    labels = draw(st.lists(st.integers(0, space.n - 1), min_size=space.n, max_size=space.n))
    blocks = {}
    for i, b in enumerate(labels):
        blocks.setdefault(b, set()).add(i)
    return space, new_partition(space, list(blocks.values()))


def set_partitions(items):
    """All set partitions of ``items`` (Bell-number many), as lists of lists."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        for k in range(len(smaller)):
            yield smaller[:k] + [[first] + smaller[k]] + smaller[k + 1:]
        yield [[first]] + smaller


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
