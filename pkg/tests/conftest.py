import pytest

from stabext.corpus import truncated_module, truncated_polynomial
from stabext.workbench import Workbench, load_corpus
from stabext.xfield import GF


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def wb(corpus):
    # radius 3 keeps the shared component small; acceptance tests build their own
    return Workbench(corpus, radius=3)


@pytest.fixture
def A3():
    return truncated_polynomial(GF(3), 3)


@pytest.fixture
def trunc3(A3):
    return A3, truncated_module(A3, 1), truncated_module(A3, 2), truncated_module(A3, 3)


ACCEPTANCE = {}  # criterion number -> (title, passed, seconds, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, secs, detail = ACCEPTANCE[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f} s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)
