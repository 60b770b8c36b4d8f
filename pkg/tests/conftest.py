import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from capax.graph import hamming_graph, strong_product  # noqa: E402


@pytest.fixture(scope="session")
def gp():
    return hamming_graph(5, [1, 2])


@pytest.fixture(scope="session")
def gp_square(gp):
    return strong_product(gp, gp)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if "test_acceptance" not in getattr(rep, "nodeid", "") or rep.when != "call":
                continue
            for name, text in rep.sections:
                if "stdout" in name:
                    lines += [ln for ln in text.splitlines() if ln.startswith(("PASS", "FAIL", "SKIP"))]
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in sorted(lines, key=lambda s: s.split()[1]):
            terminalreporter.write_line(ln)
