import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from feynlogic.amplitudes import AmplitudeModel, random_model
from feynlogic.errors import AsymmetricTransitions, InvalidPosition, NonAtomicEndpoint, OutOfRange, SequenceError
from feynlogic.logic import Event, Measurement, OutcomeId, coarse_grain
from feynlogic.disturbance import (
    Experiment,
    Stage,
    binomial_bounds,
    classical_prediction,
    disturbance_report,
    insert_trivial,
    is_repeat_layout,
    monte_carlo,
    quantum_prediction,
    repeat_layout,
    repeatability_gap,
)

from .strategies import seeds


def test_insert_trivial_splits_the_interval(spin_half):
    experiment = spin_half.experiment("rotated-chain")
    inserted = insert_trivial(experiment, 1, spin_half.model.measurement("X"))
    assert len(inserted.stages) == 3
    trivial, following = inserted.stages[0], inserted.stages[1]
    assert trivial.measurement.is_trivial
    assert trivial.interaction == "R"
    assert following.interaction == "identity"
    assert following.measurement == experiment.stages[0].measurement


@pytest.mark.parametrize("position", [0, 3, -1])
def test_insert_trivial_rejects_endpoints(spin_half, position):
    with pytest.raises(InvalidPosition):
        insert_trivial(spin_half.experiment("rotated-chain"), position)


def test_experiment_preconditions(spin_half):
    z = spin_half.model.measurement("Z")
    with pytest.raises(SequenceError):
        Experiment.build(z, 1, [])
    coarse = coarse_grain(Measurement.atomic("Z", 2), [[1, 2]])
    with pytest.raises(NonAtomicEndpoint):
        Experiment(Event(0, coarse, OutcomeId("Z", {1, 2})), (Stage(z),))


@pytest.mark.parametrize(
    "config, name, repeat",
    [
        ("spin_half", "repeat-z", 0.5),
        ("qutrit", "repeat-a", 1 / 3),
    ],
)
def test_repeat_layouts(config, name, repeat, request):
    loaded = request.getfixturevalue(config)
    experiment = loaded.experiment(name)
    position, trivial = loaded.insert_positions[name]
    report = disturbance_report(loaded.model, experiment, position, trivial)
    assert is_repeat_layout(experiment)
    assert report.max_quantum_deviation <= 1e-12
    assert report.with_trivial[1] == pytest.approx(1.0)
    assert report.classical[1] == pytest.approx(repeat)
    assert report.max_classical_deviation == pytest.approx(1 - repeat)


@pytest.mark.parametrize("config, name", [("spin_half", "rotated-chain"), ("qutrit", "coarse-final")])
def test_trivial_insertion_changes_nothing(config, name, request):
    loaded = request.getfixturevalue(config)
    position, trivial = loaded.insert_positions[name]
    report = disturbance_report(loaded.model, loaded.experiment(name), position, trivial)
    assert report.max_quantum_deviation <= 1e-12
    assert report.with_trivial.is_normalized()
    assert report.classical.is_normalized(1e-9)


@settings(max_examples=120)
@given(seeds, st.sampled_from([2, 3, 4, 8]), st.integers(1, 2))
def test_no_disturbance_on_random_models(seed, dim, position):
    rng = np.random.default_rng(seed)
    model = random_model(rng, dim)
    L, M, N = (model.measurement(x) for x in "LMN")
    experiment = Experiment.build(L, 1, [(M, "I1"), (N, "I2")])
    report = disturbance_report(model, experiment, position, M)
    assert report.max_quantum_deviation <= 1e-12


def test_repeatability_gap():
    assert repeatability_gap(0.5) == pytest.approx(0.5)
    assert repeatability_gap(0.0) == 1.0
    assert repeatability_gap(1.0) == 1.0
    for alpha in (-0.1, 1.1, float("nan")):
        with pytest.raises(OutOfRange):
            repeatability_gap(alpha)


def test_repeat_layout_matches_the_gap():
    theta = 0.4
    model = AmplitudeModel.from_bases(
        {"L": np.eye(2), "M": [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]}
    )
    experiment = repeat_layout(model.measurement("L"), model.measurement("M"))
    alpha = np.cos(theta) ** 2
    assert classical_prediction(model, experiment)[1] == pytest.approx(repeatability_gap(alpha))
    assert quantum_prediction(model, experiment)[1] == pytest.approx(1.0)


def test_classical_oracle_requires_symmetric_transitions():
    t = np.array([[np.sqrt(0.5), np.sqrt(0.5), 0], [np.sqrt(0.5), -np.sqrt(0.5), 0], [0, 0, 1]])
    u = np.array([[1, 0, 0], [0, np.sqrt(0.5), np.sqrt(0.5)], [0, np.sqrt(0.5), -np.sqrt(0.5)]])
    model = AmplitudeModel(
        [Measurement.atomic("L", 3), Measurement.atomic("M", 3)],
        transitions={("L", "M", "identity"): u @ t},
    )
    L, M = model.measurement("L"), model.measurement("M")
    experiment = Experiment.build(L, 1, [(M, "identity"), (L, "identity")])
    with pytest.raises(AsymmetricTransitions):
        classical_prediction(model, experiment)
    table = classical_prediction(model, experiment, require_symmetric=False)
    assert table.is_normalized(1e-9)


def test_monte_carlo_is_reproducible(spin_half):
    model = spin_half.model
    experiment = insert_trivial(spin_half.experiment("rotated-chain"), 2, model.measurement("X"))
    first = monte_carlo(model, experiment, 2_000, seed=11, batches=4)
    second = monte_carlo(model, experiment, 2_000, seed=11, batches=4)
    assert first.probabilities == second.probabilities
    assert first.total() == pytest.approx(1.0)


def test_monte_carlo_matches_the_prediction(spin_half):
    model = spin_half.model
    experiment = spin_half.experiment("rotated-chain")
    predicted = quantum_prediction(model, experiment)
    estimate = monte_carlo(model, experiment, 20_000, seed=3, batches=2)
    bounds = binomial_bounds(predicted, 20_000, sigmas=5.0)
    for label, p in predicted.labelled().items():
        assert abs(estimate.labelled()[label] - p) <= bounds[label] + 1e-12


def test_monte_carlo_repeat_is_certain(spin_half):
    model = spin_half.model
    experiment = insert_trivial(spin_half.experiment("repeat-z"), 1, model.measurement("X"))
    estimate = monte_carlo(model, experiment, 500, seed=1)
    assert estimate[1] == 1.0


def test_monte_carlo_rejects_bad_counts(spin_half):
    experiment = spin_half.experiment("repeat-z")
    with pytest.raises(OutOfRange):
        monte_carlo(spin_half.model, experiment, 0, seed=1)
    with pytest.raises(OutOfRange):
        monte_carlo(spin_half.model, experiment, 10, seed=1, batches=0)


@given(seeds, st.sampled_from([2, 3, 4, 8]))
def test_classical_matches_quantum_when_every_stage_is_observed(seed, dim):
    model = random_model(np.random.default_rng(seed), dim)
    L, M, N = (model.measurement(x) for x in "LMN")
    experiment = Experiment.build(L, 1, [(M, "I1"), (N, "I2")])
    quantum = quantum_prediction(model, experiment)
    classical = classical_prediction(model, experiment)
    for block in quantum.outcomes:
        assert classical[block] == pytest.approx(quantum[block], abs=1e-12)


def test_a_single_run_is_one_hot(spin_half):
    table = monte_carlo(spin_half.model, spin_half.experiment("rotated-chain"), 1, seed=4)
    values = sorted(table.probabilities.values())
    assert values[-1] == 1.0
    assert all(v == 0.0 for v in values[:-1])


@pytest.mark.parametrize("config", ["spin_half", "qutrit", "composite_pair"])
def test_monte_carlo_on_bundled_experiments(config, request):
    loaded = request.getfixturevalue(config)
    runs = 100_000
    for name, experiment in loaded.experiments.items():
        position, trivial = loaded.insert_positions[name]
        inserted = insert_trivial(experiment, position, trivial)
        predicted = quantum_prediction(loaded.model, inserted)
        estimate = monte_carlo(loaded.model, inserted, runs, seed=2024, batches=4)
        assert estimate == monte_carlo(loaded.model, inserted, runs, seed=2024, batches=4)
        bounds = binomial_bounds(predicted, runs, sigmas=4.0)
        observed = estimate.labelled()
        for label, p in predicted.labelled().items():
            assert abs(observed[label] - p) <= bounds[label] + 1e-12, (name, label)
