import pytest

from dismantlable.corpus import Bounds, analysis_for, corpus_specs

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def bounds():
    return Bounds()


@pytest.fixture(scope="session")
def corpus(bounds):
    return {s: analysis_for(s, bounds.subgroup_limit) for s in corpus_specs(bounds)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
