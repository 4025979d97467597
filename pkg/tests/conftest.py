"""Shared fixtures and the acceptance summary hook.

Tests marked with @pytest.mark.criterion("<name>") roll up into a
one-line-per-criterion PASS/FAIL table printed after the run.
"""

from __future__ import annotations

import tempfile
from pathlib import Path

import pytest

from innerself.service.config import ServiceConfig
from innerself.service.engine import TurnEngine

CRITERIA = (
    "worked-example-reproduction",
    "buffer-conservation",
    "durability",
    "softmax-classifier-suite",
    "mel-dsp-suite",
    "reframer-suite",
    "strategy-prosody-determinism",
    "end-to-end-determinism",
    "constraint-guarantee",
)

_outcomes: dict[str, str] = {}

REPO_ROOT = Path(__file__).resolve().parents[1]
DEMO_SCRIPT = REPO_ROOT / "demo" / "session.jsonl"


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): acceptance criterion this test verifies"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    name = marker.args[0]
    if report.passed:
        _outcomes.setdefault(name, "PASS")
    elif report.skipped:
        _outcomes.setdefault(name, "SKIP")
    else:
        _outcomes[name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    seen = [name for name in CRITERIA if name in _outcomes]
    if not seen:
        return
    terminalreporter.section("acceptance criteria")
    for name in seen:
        terminalreporter.write_line(f"[{_outcomes[name]}] {name}")


@pytest.fixture
def data_dir(tmp_path):
    return tmp_path / "store"


@pytest.fixture
def engine(data_dir):
    return TurnEngine(ServiceConfig(data_dir=str(data_dir), webapp_dir=None))


@pytest.fixture
def sim_engine(data_dir):
    return TurnEngine(
        ServiceConfig(data_dir=str(data_dir), webapp_dir=None), simulate_mode=True
    )
