import os
import sys

from hypothesis import HealthCheck, settings

# fixed-seed corpora: every run draws the same examples
settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    max_examples=int(os.environ.get("MWLAT_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n][1])
