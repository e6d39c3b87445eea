import numpy as np
import pytest

from swarmpack import packing_objective, table9_instance


class FixedRng:
    """Stand-in for RngStream that returns the same uniform every draw."""

    def __init__(self, value):
        self.value = value
        self.draws = 0

    def random(self, size=None):
        if size is None:
            self.draws += 1
            return self.value
        out = np.full(size, self.value, dtype=float)
        self.draws += out.size
        return out


class ScriptedRng:
    """Replays a fixed list of uniforms in order."""

    def __init__(self, values):
        self.values = list(values)

    def random(self, size=None):
        if size is None:
            return self.values.pop(0)
        n = int(np.prod(size))
        out = np.array([self.values.pop(0) for _ in range(n)], dtype=float)
        return out.reshape(size)


@pytest.fixture(scope="session")
def inst():
    return table9_instance()


@pytest.fixture(scope="session")
def objective(inst):
    return packing_objective(inst)


# per-criterion pass/fail lines for the acceptance module
_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry = _CRITERIA.setdefault(marker.args[0], {"ok": True, "details": []})
        entry["ok"] &= report.passed
        details = [v for k, v in item.user_properties if k == "detail"]
        entry["details"].append(f"{item.name}: {'; '.join(details) or report.outcome}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if entry['ok'] else 'FAIL'}")
        for line in entry["details"]:
            terminalreporter.write_line(f"    {line}")
