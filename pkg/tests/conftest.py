import pytest
from hypothesis import HealthCheck, settings

from quintic_genus.polycore.intpoly import IntPoly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

X5_X_1 = IntPoly.parse("x^5 - x - 1")
X5_11 = IntPoly.parse("x^5 - 11")
X5_341 = IntPoly.parse("x^5 - 341")
COS11 = IntPoly.parse("x^5 + x^4 - 4*x^3 - 3*x^2 + 3*x + 1")


@pytest.fixture
def example_fields():
    return {"x5-x-1": X5_X_1, "x5-11": X5_11, "x5-341": X5_341, "cos11": COS11}


_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "acceptance" not in report.keywords:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        doc = getattr(report, "acceptance_title", report.nodeid.split("::")[-1])
        _ACCEPTANCE[report.nodeid] = (doc, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    title = getattr(item.function, "title", None)
    if title:
        rep.acceptance_title = title


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for title, status in sorted(_ACCEPTANCE.values()):
        terminalreporter.write_line(f"{status}  {title}")
