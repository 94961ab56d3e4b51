import pytest

from steinberg_demazure.rootdata import build

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3),
               ("D", 4), ("G", 2)]


@pytest.fixture(params=SMALL_TYPES, ids=lambda t: f"{t[0]}{t[1]}")
def small_rs(request):
    return build(*request.param)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or \
        __import__("sys").modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
