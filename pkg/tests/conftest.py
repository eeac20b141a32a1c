import math
import random

import pytest

from quasianalytic import WeightSequence


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_weight_sequence(rng, max_len=50, log_range=5.0):
    """Random prefix with M_0 = 1 and log-uniform entries in [e^-r, e^r]."""
    n = rng.randint(2, max_len)
    logs = [0.0] + [rng.uniform(-log_range, log_range) for _ in range(n)]
    return WeightSequence.from_logs(logs)
