import math

import numpy as np
import pytest
from hypothesis import strategies as st

from diskmetric.metric import DiskPoint


def midpoint_rule(func, a, b, n=10**6):
    """Dense midpoint Riemann sum; an oracle independent of the adaptive rule."""
    h = (b - a) / n
    t = a + h * (np.arange(n) + 0.5)
    return h * float(np.sum(func(t)))


@pytest.fixture
def rng():
    return np.random.default_rng(20260101)


@st.composite
def disk_points(draw, radius=0.95):
    r = radius * math.sqrt(draw(st.floats(0.0, 1.0)))
    t = draw(st.floats(0.0, 2 * math.pi))
    return DiskPoint(r * math.cos(t), r * math.sin(t))
