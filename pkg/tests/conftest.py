import sys

import pytest

from thompsonk.words import eval_y


@pytest.fixture
def y0():
    return eval_y(3, 0)


@pytest.fixture
def y1sq():
    return eval_y(3, (1, 2))


@pytest.fixture
def y0y3():
    return eval_y(3, 0, 3)


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 13):
        ok, detail = verdicts.get(n, (False, "not run"))
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
