import os
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DESCRIPTORS = Path(__file__).resolve().parent.parent / "descriptors"


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def descriptors():
    return DESCRIPTORS
