import pytest

# filled by the criterion() helper in test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def acceptance_results():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
