import pytest

from fxkg.api import load_dataset
from fxkg.reasoner import materialize
from fxkg.schema import builtin_faculty_schema
from fxkg.seed import build_seed_dataset
from fxkg.store import Graph

BASE = "https://example.org/fx#"

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(autouse=True)
def _fixed_base(monkeypatch):
    monkeypatch.delenv("FX_BASE_IRI", raising=False)


@pytest.fixture(scope="session")
def schema():
    return builtin_faculty_schema(BASE)


@pytest.fixture(scope="session")
def seed_graph():
    return Graph(build_seed_dataset(BASE))


@pytest.fixture(scope="session")
def seed_mg(seed_graph, schema):
    return materialize(seed_graph, schema)


@pytest.fixture(scope="session")
def seed_ds():
    ds = load_dataset((), BASE)
    ds.materialized
    return ds


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
