import pytest

from feynlogic.errors import (
    LengthMismatch,
    MismatchedJunction,
    NonAtomicEndpoint,
    NotParallelCompatible,
    SameSystem,
    SequenceError,
    TimeMismatch,
)
from feynlogic.logic import (
    Event,
    Measurement,
    OutcomeId,
    compose,
    invert,
    invert_interaction,
    parallel,
    sequence_from_outcomes,
    series,
)

L, M, N = (Measurement.atomic(name, 3) for name in "LMN")


def seq(measurements, outcomes, times=None, interactions=None, system="S"):
    return sequence_from_outcomes(system, measurements, outcomes, interactions=interactions, times=times)


def test_sequence_defaults():
    a = seq([L, M], [1, 2])
    assert a.times == (0, 1)
    assert a.interactions == ("identity",)
    assert a.system == ("S",)
    assert str(a) == "S: L[1]@0 -identity-> M[2]@1"


@pytest.mark.parametrize(
    "kwargs",
    [
        {"measurements": [L], "outcomes": [1]},
        {"measurements": [L, M], "outcomes": [1, 2], "times": [1, 1]},
        {"measurements": [L, M], "outcomes": [1, 2], "interactions": ["a", "b"]},
    ],
)
def test_malformed_sequences_raise(kwargs):
    with pytest.raises(SequenceError):
        seq(**kwargs)


def test_first_outcome_must_be_atomic():
    with pytest.raises(NonAtomicEndpoint):
        seq([L, M], [[1, 2], 1])


def test_series_shares_the_junction():
    a = seq([L, M], [1, 2], times=[0, 1], interactions=["I1"])
    b = seq([M, N], [2, 3], times=[1, 2], interactions=["I2"])
    c = series(a, b)
    assert c.length == 3
    assert c.times == (0, 1, 2)
    assert c.interactions == ("I1", "I2")
    assert c.outcome_at(1) == OutcomeId("M", {2})


def test_series_rejects_mismatched_junction():
    a = seq([L, M], [1, 2], times=[0, 1])
    with pytest.raises(MismatchedJunction):
        series(a, seq([M, N], [1, 3], times=[1, 2]))
    with pytest.raises(MismatchedJunction):
        series(a, seq([M, N], [2, 3], times=[1, 2], system="T"))


def test_series_rejects_coarse_final_outcome():
    a = seq([L, M], [1, 2], times=[0, 1])
    b = seq([M, N], [2, [1, 2]], times=[1, 2])
    with pytest.raises(NonAtomicEndpoint):
        series(a, b)


def test_parallel_merges_interior_outcome():
    a = seq([L, M, N], [1, 1, 2])
    b = seq([L, M, N], [1, 3, 2])
    c = parallel(a, b)
    merged = c.events[1]
    assert merged.outcome.indices == frozenset({1, 3})
    assert merged.measurement.partition == (frozenset({1, 3}), frozenset({2}))
    assert parallel(b, a) == c


@pytest.mark.parametrize(
    "b_outcomes",
    [
        [2, 1, 2],  # differs at the first event
        [1, 1, 3],  # differs at the last event
        [1, 1, 2],  # identical
    ],
)
def test_parallel_requires_one_interior_difference(b_outcomes):
    a = seq([L, M, N], [1, 1, 2])
    with pytest.raises(NotParallelCompatible):
        parallel(a, seq([L, M, N], b_outcomes))


def test_parallel_rejects_overlapping_outcomes():
    a = seq([L, M, N], [1, [1, 2], 2])
    b = seq([L, M, N], [1, [2, 3], 2])
    with pytest.raises(NotParallelCompatible):
        parallel(a, b)


def test_event_equality_ignores_partition():
    coarse = Measurement("M", 3, partition=((1, 2), (3,)))
    assert Event(0, M, OutcomeId("M", {3})) == Event(0, coarse, OutcomeId("M", {3}))


def test_compose_flattens_outcomes():
    a = seq([L, M], [2, 1], system="S1", interactions=["I1"])
    b = seq([M, N], [3, 2], system="S2", interactions=["I2"])
    c = compose(a, b)
    assert c.system == ("S1", "S2")
    assert c.interactions == ("I1⊗I2",)
    assert c.outcome_at(0) == OutcomeId("L⊗M", {6})
    assert c.outcome_at(1) == OutcomeId("M⊗N", {2})


def test_compose_preconditions():
    a = seq([L, M], [1, 1], system="S1")
    with pytest.raises(LengthMismatch):
        compose(a, seq([L, M, N], [1, 1, 1], system="S2"))
    with pytest.raises(TimeMismatch):
        compose(a, seq([L, M], [1, 1], times=[0, 2], system="S2"))
    with pytest.raises(SameSystem):
        compose(a, seq([L, M], [1, 1], system="S1"))


@pytest.mark.parametrize(
    "interaction, expected",
    [
        ("identity", "identity"),
        ("I1", "I1^-1"),
        ("I1^-1", "I1"),
        ("I1⊗identity", "I1^-1⊗identity"),
    ],
)
def test_invert_interaction(interaction, expected):
    assert invert_interaction(interaction) == expected


def test_invert_reverses_and_mirrors():
    a = seq([L, M, N], [1, [1, 2], 3], times=[0, 2, 5], interactions=["I1", "I2"])
    b = invert(a)
    assert b.times == (-5, -2, 0)
    assert b.interactions == ("I2^-1", "I1^-1")
    assert [e.measurement.id for e in b.events] == ["N", "M", "L"]
    assert invert(b) == a


def test_invert_reverses_a_series():
    a = seq([L, M], [1, 2], times=[0, 1], interactions=["I1"])
    b = seq([M, N], [2, 3], times=[1, 4], interactions=["I2"])
    inverse = invert(series(a, b))
    assert inverse == series(invert(b), invert(a))
    assert inverse.times == (-4, -1, 0)


def test_invert_rejects_coarse_final_outcome():
    with pytest.raises(NonAtomicEndpoint):
        invert(seq([L, M], [1, [1, 2]]))
