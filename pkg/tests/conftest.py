import itertools


def cube(radius, n):
    return itertools.product(range(-radius, radius + 1), repeat=n)


# lines printed by the acceptance suite, shown after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
