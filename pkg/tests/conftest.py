from __future__ import annotations

import pytest
from hypothesis import settings, strategies as st

from ovkit.core import Family, Instance

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def instances(draw, max_dim=10, max_k=4, max_n=8, min_k=1, allow_empty=False):
    d = draw(st.integers(1, max_dim))
    k = draw(st.integers(min_k, max_k))
    min_n = 0 if allow_empty else 1
    fams = []
    for _ in range(k):
        masks = draw(st.lists(st.integers(0, (1 << d) - 1), min_size=min_n, max_size=max_n))
        fams.append(Family(d, tuple(masks)))
    return Instance(d, tuple(fams))


@st.composite
def pair_instances(draw, max_dim=10, max_n=8):
    return draw(instances(max_dim=max_dim, min_k=2, max_k=2, max_n=max_n))


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line and fail the test if it did not pass."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(number: int, ok: bool | None, detail: str) -> None:
        tag = "INFO" if ok is None else ("PASS" if ok else "FAIL")
        line = f"[{tag}] criterion {number}: {detail}"
        lines.append(line)
        print(line)
        assert ok is not False, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
