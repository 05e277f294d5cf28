import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "grcyc", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("grcyc")

ACCEPTANCE_TITLES = {
    1: "fixed-point count",
    2: "TNN uniqueness and deformed sine formula",
    3: "octagon example",
    4: "trigonometric Vandermonde determinant",
    5: "Peterson embedding",
    6: "Schur evaluations",
    7: "superpotential critical points",
    8: "twist map",
    9: "promotion",
    10: "birational rowmotion",
    11: "flow to V_0",
    12: "verify-all determinism",
}


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def acceptance(request):
    """Record the verdict of one acceptance criterion; the summary prints one line each."""
    log = request.config._acceptance

    def record(number, passed, detail=""):
        log[number] = (bool(passed), detail)
        assert passed, f"criterion {number} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_acceptance", {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in ACCEPTANCE_TITLES.items():
        if number in log:
            ok, detail = log[number]
            verdict = "PASS" if ok else "FAIL"
        else:
            verdict, detail = "FAIL", "not run to completion"
        line = f"[{verdict}] {number:2d}. {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
