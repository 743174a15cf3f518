"""Hypothesis strategies shared by the property tests."""

import numpy as np
from hypothesis import strategies as st

from feynlogic.amplitudes import random_model
from feynlogic.logic import SequenceFactory

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dimensions = st.sampled_from([2, 3, 4, 8])


@st.composite
def factories(draw, coarse_rate=0.3):
    return SequenceFactory(np.random.default_rng(draw(seeds)), coarse_rate=coarse_rate)


@st.composite
def models(draw, dims=dimensions):
    """Random closed models with measurements L, M, N and interactions I1, I2."""
    return random_model(np.random.default_rng(draw(seeds)), draw(dims))


@st.composite
def blocks(draw, atomic_count):
    """A nonempty subset of 1..N."""
    return frozenset(draw(st.sets(st.integers(1, atomic_count), min_size=1)))


@st.composite
def partitions(draw, atomic_count):
    """A random partition of 1..N as a list of blocks."""
    labels = draw(st.lists(st.integers(0, atomic_count - 1), min_size=atomic_count, max_size=atomic_count))
    grouped = {}
    for i, label in enumerate(labels, start=1):
        grouped.setdefault(label, set()).add(i)
    return [frozenset(b) for b in grouped.values()]
