import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> list of (part, passed, detail)
_CRITERIA: dict[int, list[tuple[str, bool, str]]] = {}


class _Recorder:
    """Record parts of an acceptance criterion for the summary, then assert them."""

    def __call__(self, number: int, part: str, passed: bool, detail: str = ""):
        self.many(number, [(part, passed, detail)])

    def many(self, number: int, parts):
        # record everything first so one failing part does not hide the others
        parts = [(name, bool(ok), detail) for name, ok, detail in parts]
        _CRITERIA.setdefault(number, []).extend(parts)
        bad = [f"[{name}] {detail}" for name, ok, detail in parts if not ok]
        assert not bad, f"criterion {number}: " + "; ".join(bad)


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        parts = _CRITERIA[number]
        ok = all(p for _, p, _ in parts)
        detail = "; ".join(f"{name}: {'ok' if p else 'FAILED'} ({d})" for name, p, d in parts)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} -- {detail}")
