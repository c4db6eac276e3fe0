import json
from pathlib import Path

import pytest

from supctl.textio import read_generator

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name):
    d = FIXTURES / name
    if not d.is_dir():
        raise FileNotFoundError(f"fixture {name} is missing; run scripts/make_fixtures.py")
    gens = {p.stem: read_generator(p) for p in sorted(d.glob("*.gen"))}
    meta = json.loads((d / "meta.json").read_text())
    return gens, meta


@pytest.fixture
def fixture_loader():
    return load_fixture


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
