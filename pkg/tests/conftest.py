import sys
from pathlib import Path

import pytest
from hypothesis import settings, HealthCheck

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def catalog():
    from pshecke.catalog import default_catalog
    return default_catalog()


@pytest.fixture(scope="session")
def cases(catalog):
    return {c.name: c for c in catalog.cases}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
