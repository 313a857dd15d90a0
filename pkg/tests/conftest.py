import itertools

import pytest

from scensched.core import Assignment, Instance, evaluate, parse_instance

EXAMPLE_TEXT = "jobs 3\np 2 1 1\nscenarios 3\nS 1 2 3\nS 2 3\nS 2 3\n"


@pytest.fixture
def example():
    return parse_instance(EXAMPLE_TEXT)


def all_assignments(n):
    for sides in itertools.product((1, 2), repeat=n):
        yield Assignment(sides)


def naive_optimum(inst: Instance, objective: str) -> int:
    """Plain enumeration of all 2**n assignments, no symmetry, no numpy."""
    return min(evaluate(a, inst, objective) for a in all_assignments(inst.n))


def splittable(n, sets):
    """True iff some 2-coloring of 1..n leaves no set monochromatic."""
    for colors in itertools.product((0, 1), repeat=n):
        if all(len({colors[x - 1] for x in s}) == 2 for s in sets):
            return True
    return False


_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
