from __future__ import annotations

import pytest

from islrc.constructions import construct1, construct2
from islrc.finite_field import make_field

_ACCEPTANCE: dict[int, list[tuple[str, str]]] = {}


def pytest_addoption(parser):
    parser.addoption("--run-extended", action="store_true", default=False,
                     help="run long extended checks (minutes)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-extended"):
        return
    skip = pytest.mark.skip(reason="extended check; pass --run-extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    num = getattr(report, "criterion", None)
    if num is not None:
        _ACCEPTANCE.setdefault(num, []).append((report.nodeid.split("::")[-1], report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        results = _ACCEPTANCE[num]
        active = [o for _, o in results if o != "skipped"]
        if not active:
            status = "SKIP"
        else:
            status = "PASS" if all(o == "passed" for o in active) else "FAIL"
        names = ", ".join(f"{n}={o}" for n, o in results)
        terminalreporter.write_line(f"criterion {num}: {status}  ({names})")


@pytest.fixture(scope="session")
def gf2():
    return make_field(2)


@pytest.fixture(scope="session")
def code8():
    """(8,4,2,2) binary code from the GF(2) tables."""
    return construct1(2)


@pytest.fixture(scope="session")
def code14():
    return construct2(2)


@pytest.fixture(scope="session")
def code50():
    return construct1(5)


@pytest.fixture(scope="session")
def code62():
    return construct2(5)
