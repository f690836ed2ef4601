import math
from pathlib import Path

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qcoherence.states import random_density, random_unitary

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "qcoherence" / "fixtures"

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
dims = st.integers(min_value=2, max_value=6)


@st.composite
def states(draw, d=None, full_rank=False):
    d = d if d is not None else draw(dims)
    rank = d if full_rank else draw(st.integers(1, d))
    return random_density(d, rank, draw(seeds))


@st.composite
def unitaries(draw, d):
    return random_unitary(d, draw(seeds))


@st.composite
def bloch_vectors(draw, max_norm=1.0):
    v = np.array(draw(st.lists(st.floats(-1, 1), min_size=3, max_size=3)))
    n = np.linalg.norm(v)
    r = draw(st.floats(0, max_norm))
    if n < 1e-9:
        return np.zeros(3)
    return v / n * r


def ginibre(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def hermitian(rng, d):
    g = ginibre(rng, d)
    return (g + g.conj().T) / 2


def h2(x):
    return 0.0 if x in (0.0, 1.0) else -x * math.log2(x) - (1 - x) * math.log2(1 - x)
