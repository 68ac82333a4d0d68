import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    derandomize="TRICANON_SEED" not in os.environ,
    max_examples=int(os.environ.get("TRICANON_MAX_EXAMPLES", "40")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

_ACCEPTANCE_RESULTS = {}


def record_acceptance(number: int, title: str, passed: bool):
    _ACCEPTANCE_RESULTS[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_RESULTS):
        title, passed = _ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({title}): {verdict}")
