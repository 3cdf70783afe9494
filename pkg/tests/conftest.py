import re
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from stemcode.weights import WeightTable, random_wc_table  # noqa: E402

_CRITERION = re.compile(r"test_c(\d+)_")
_results: dict[int, list[tuple[str, bool]]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


bases = st.sampled_from("ACGT")


def strands(min_len=2, max_len=12):
    return st.text(alphabet="ACGT", min_size=min_len, max_size=max_len)


@st.composite
def strand_pairs(draw, min_len=2, max_len=12):
    n = draw(st.integers(min_len, max_len))
    x = draw(st.text(alphabet="ACGT", min_size=n, max_size=n))
    y = draw(st.text(alphabet="ACGT", min_size=n, max_size=n))
    return x, y


@st.composite
def wc_tables(draw) -> WeightTable:
    seed = draw(st.integers(0, 2**32 - 1))
    return random_wc_table(np.random.default_rng(seed))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    m = _CRITERION.search(report.nodeid.split("::")[-1])
    if m and "test_acceptance" in report.nodeid:
        _results.setdefault(int(m.group(1)), []).append((report.nodeid, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_results):
        runs = _results[k]
        ok = all(p for _, p in runs)
        failed = [nid.split("::")[-1] for nid, p in runs if not p]
        tail = f"  ({len(runs) - len(failed)}/{len(runs)} checks; failing: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}{tail}")
