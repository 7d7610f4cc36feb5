import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from splicekit import corpus  # noqa: E402

CORPUS_DIR = corpus.DATA_DIR
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def graphs():
    return corpus.graphs()


@pytest.fixture(scope="session")
def diagrams():
    return corpus.diagrams()


@pytest.fixture(scope="session")
def two_node(graphs):
    return graphs["two_node_zhs"]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
