import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from feynlogic.amplitudes import (
    amplitude,
    amplitude_of_inverse,
    outcome_distribution,
    probability,
    random_model,
    refinements,
    sum_rule_residual,
)
from feynlogic.composition import composite_amplitude
from feynlogic.constants import RULE_TOL
from feynlogic.errors import NonAtomicEndpoint
from feynlogic.logic import (
    Event,
    OutcomeId,
    SequenceFactory,
    coarse_grain,
    compose,
    invert,
    parallel,
    sequence_from_outcomes,
    series,
    trivialize,
)

from .strategies import models, seeds

SLACK = RULE_TOL


@pytest.mark.parametrize(
    "name, expected",
    [
        ("stay", 1.0),
        ("z-x-z", 0.5),
        ("z-x-z-flip", -0.5),
        ("z-xany-z", 1.0),
        ("z-xany-z-flip", 0.0),
        ("rotate", np.cos(np.pi / 6)),
    ],
)
def test_spin_half_amplitudes(spin_half, name, expected):
    assert amplitude(spin_half.model, spin_half.sequence(name)) == pytest.approx(expected, abs=SLACK)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("stay", 1.0),
        ("a-b-a", 1 / 3),
        ("a-bcoarse-a", 2 / 3),
        ("a-ball-a", 1.0),
        ("phase", 1j),
        ("a-p-b", 1 / np.sqrt(3)),
    ],
)
def test_qutrit_amplitudes(qutrit, name, expected):
    assert amplitude(qutrit.model, qutrit.sequence(name)) == pytest.approx(expected, abs=SLACK)


def test_composite_amplitude_is_the_product(composite_pair):
    model = composite_pair.model
    left, right = composite_pair.sequence("left"), composite_pair.sequence("right")
    assert amplitude(model, composite_pair.sequence("pair")) == pytest.approx(-0.5, abs=SLACK)
    assert amplitude(model, compose(left, right)) == pytest.approx(amplitude(model, left) * amplitude(model, right))
    assert amplitude(model, composite_pair.sequence("pair-long")) == pytest.approx(0.5, abs=SLACK)


@given(models(dims=st.sampled_from([2, 3])), st.data())
def test_composed_amplitude_is_the_product_of_factor_amplitudes(model, data):
    L, M, N = (model.measurement(x) for x in "LMN")
    indices = st.lists(st.integers(1, L.atomic_count), min_size=3, max_size=3)
    left = sequence_from_outcomes("A", [L, M, N], data.draw(indices), ["I1", "I2"])
    right = sequence_from_outcomes("B", [M, N, L], data.draw(indices), ["I2", "I1"])
    expected = composite_amplitude(amplitude(model, left), amplitude(model, right))
    assert amplitude(model, compose(left, right)) == pytest.approx(expected, abs=SLACK)


def test_coarse_final_outcome_has_no_amplitude(spin_half):
    z, x = spin_half.model.measurement("Z"), spin_half.model.measurement("X")
    seq = sequence_from_outcomes("S", [z, x], [1, [1, 2]])
    with pytest.raises(NonAtomicEndpoint):
        amplitude(spin_half.model, seq)


def _draw(seed, model, coarse_rate=0.4):
    catalogue = tuple(model.measurements.values())
    return SequenceFactory(
        np.random.default_rng(seed), catalogue=catalogue, interactions=("identity", "I1", "I2"), coarse_rate=coarse_rate
    )


@given(models(), seeds)
def test_inverse_amplitude_is_conjugate(model, seed):
    seq = _draw(seed, model).sequence()
    assert amplitude_of_inverse(model, seq) == pytest.approx(np.conj(amplitude(model, seq)), abs=SLACK)
    assert amplitude(model, invert(seq)) == pytest.approx(np.conj(amplitude(model, seq)), abs=SLACK)


@given(models(), seeds)
def test_product_rule_over_series(model, seed):
    a, b = _draw(seed, model).series_chain(2)
    assert amplitude(model, series(a, b)) == pytest.approx(amplitude(model, a) * amplitude(model, b), abs=SLACK)


@given(models(), seeds)
def test_sum_rule_over_parallel(model, seed):
    a, b = _draw(seed, model).parallel_family(2)
    assert amplitude(model, parallel(a, b)) == pytest.approx(amplitude(model, a) + amplitude(model, b), abs=SLACK)


@given(models(), seeds)
def test_sum_rule_over_refinements(model, seed):
    seq = _draw(seed, model, coarse_rate=0.8).sequence(length=4)
    assert sum_rule_residual(model, seq) <= SLACK
    assert all(r.events[k].is_atomic for r in refinements(seq) for k in range(r.length))


def test_refinements_enumerate_every_atomic_alternative(qutrit):
    seq = qutrit.sequence("a-ball-a")
    refined = list(refinements(seq))
    assert len(refined) == 3
    assert [r.outcome_at(1) for r in refined] == [OutcomeId("B", {k}) for k in (1, 2, 3)]
    assert sum(probability(qutrit.model, r) for r in refined) == pytest.approx(1.0)


@given(models(), seeds)
def test_final_probabilities_are_bounded(model, seed):
    seq = _draw(seed, model).sequence()
    final = seq.final.measurement
    total = sum(
        probability(model, seq.with_event(seq.length - 1, Event(seq.final.time, final, OutcomeId(final.id, {k}))))
        for k in range(1, final.atomic_count + 1)
    )
    # projecting onto interior outcomes can only remove norm
    assert total <= 1.0 + SLACK


def test_outcome_distribution_with_trivial_intermediate(spin_half):
    model = spin_half.model
    z, x = model.measurement("Z"), model.measurement("X")
    prep = Event(0, z, OutcomeId("Z", {1}))
    observed = outcome_distribution(model, prep, [(x, "identity")], z)
    unobserved = outcome_distribution(model, prep, [(trivialize(x), "identity")], z)
    assert observed[1] == pytest.approx(0.5)
    assert unobserved[1] == pytest.approx(1.0)
    assert unobserved.is_normalized()


def test_outcome_distribution_sums_every_observed_history():
    model = random_model(np.random.default_rng(11), 8)
    L, M, N = (model.measurement(x) for x in "LMN")
    coarse = coarse_grain(M, [[1, 2, 3], [4, 5, 6, 7, 8]])
    chain = [(coarse, "I1"), (N, "I2"), (L, "I1")]
    table = outcome_distribution(model, Event(0, L, OutcomeId("L", {2})), chain, M, "I2")
    expected = np.zeros(8)
    for block, n, l in itertools.product(coarse.partition, range(1, 9), range(1, 9)):
        for k in range(1, 9):
            seq = sequence_from_outcomes("S", [L, coarse, N, L, M], [2, block, n, l, k], ["I1", "I2", "I1", "I2"])
            expected[k - 1] += probability(model, seq)
    np.testing.assert_allclose([table[k] for k in range(1, 9)], expected, atol=1e-12)
    assert table.is_normalized()
