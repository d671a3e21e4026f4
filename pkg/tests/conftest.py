import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from searchlab import kernels

settings.register_profile("searchlab", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("searchlab")


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    for name, module in list(sys.modules.items()):
        if name.endswith("test_acceptance") and getattr(module, "RESULTS", None):
            terminalreporter.section("acceptance criteria")
            for n in sorted(module.RESULTS):
                terminalreporter.write_line(module.RESULTS[n])
