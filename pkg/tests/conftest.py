import pytest

from phonodist.inventory import default_inventory, parse_sequence


@pytest.fixture(scope="session")
def inv():
    return default_inventory()


@pytest.fixture
def seq(inv):
    def make(text):
        return parse_sequence(text, inv)

    return make


_criteria = {}


def pytest_runtest_logreport(report):
    # one line per acceptance criterion in the terminal summary
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _criteria[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(_criteria.items(), key=lambda kv: int(kv[0].split("_")[1])):
        terminalreporter.write_line(f"{verdict}  {name}")
