from __future__ import annotations

import time

import pytest

from sbc.oracle import enumerate_regular_subgroups


@pytest.fixture(scope="session")
def oracle_p5():
    # Shared across modules: the full scan takes a couple of minutes.
    # jobs=2 also exercises the process-pool path.
    t0 = time.perf_counter()
    result = enumerate_regular_subgroups(5, jobs=2)
    result.scan_seconds = time.perf_counter() - t0
    return result
