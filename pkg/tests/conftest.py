import pytest

_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line per criterion; the test's own outcome decides PASS/FAIL."""
    name = request.node.name
    details: list[str] = []
    yield details.append
    _ACCEPTANCE[name] = "; ".join(details)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if "criterion" in item.fixturenames and report.when == "call":
        item.config._acceptance_outcomes = getattr(item.config, "_acceptance_outcomes", {})
        item.config._acceptance_outcomes[item.name] = report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = getattr(config, "_acceptance_outcomes", {})
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in outcomes.items():
        detail = _ACCEPTANCE.get(name, "")
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
