from __future__ import annotations

import pytest

from binacc import build_coefficient_table


@pytest.fixture(scope="session")
def table():
    """One weight table deep enough for every test in the suite."""
    return build_coefficient_table(20)
