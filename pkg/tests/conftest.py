import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from suci_pad.freqdist import FrequencyTable  # noqa: E402
from suci_pad.padding import SchemeInstance  # noqa: E402

REPO = Path(__file__).resolve().parents[1]


@st.composite
def tables(draw, max_length=50, max_count=10**6, max_size=20):
    lengths = draw(st.sets(st.integers(1, max_length), min_size=1, max_size=max_size))
    return FrequencyTable({u: draw(st.integers(1, max_count)) for u in lengths}, "gen")


@st.composite
def schemes(draw, max_param=16, max_input=None):
    """Any valid scheme instance with parameters <= max_param.

    Bounded kinds (taBlk, maxL) get a bound of at least ``max_input``.
    """
    kind = draw(st.sampled_from(["identity", "blk", "pwr", "rndBlk", "rndLen", "taBlk", "maxL"]))
    small = st.integers(1, max_param)
    if kind == "identity":
        return SchemeInstance("identity")
    if kind == "blk":
        sz = draw(small)
        return SchemeInstance("blk", (sz, sz * draw(st.integers(1, max(1, max_param // sz)))))
    if kind == "pwr":
        return SchemeInstance("pwr", (draw(st.integers(2, max_param)), draw(small)))
    if kind == "rndBlk":
        sz = draw(small)
        return SchemeInstance("rndBlk", (sz, draw(st.integers(1, 4)), sz * draw(st.integers(1, max(1, max_param // sz)))))
    if kind == "rndLen":
        return SchemeInstance("rndLen", (draw(st.integers(0, max_param)),))
    lo = max_input or 1
    if kind == "maxL":
        return SchemeInstance("maxL", (draw(st.integers(lo, max(lo, max_param))),))
    r = draw(st.integers(lo, max(lo, max_param)))
    m = draw(st.integers(1, r))
    return SchemeInstance("taBlk", (draw(st.integers(1, m)), m, r))


# -- acceptance summary ------------------------------------------------------

_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _acceptance.append((report.nodeid.split("::")[-1], outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{outcome}  {name}")


@pytest.fixture
def synthetic_company():
    from suci_pad.sweep import builtin_dataset

    return builtin_dataset("Comp-synth")
