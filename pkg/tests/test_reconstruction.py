import numpy as np
import pytest
from hypothesis import given

from feynlogic.amplitudes import random_model
from feynlogic.constants import MAX_DIMENSION
from feynlogic.errors import (
    DimensionMismatch,
    NormalizationFailure,
    NotHermitian,
    NotUnitary,
    ReferenceMismatch,
)
from feynlogic.linalg import random_state
from feynlogic.logic import Event, OutcomeId
from feynlogic.reconstruction import (
    EvolutionOperator,
    MeasurementOperator,
    StateVector,
    TransformationMatrix,
    born_probability,
    change_representation,
    compose_states,
    conjugate_operator,
    evolution_operator,
    evolve,
    expectation,
    measurement_operator,
    outcome_probabilities,
    prepared_states,
    self_transformation,
    state_after_preparation,
    summary_checks,
    transformation_from_operator,
    transformation_matrix,
)

from .strategies import models

S = 1 / np.sqrt(2)


def test_state_must_be_normalized():
    with pytest.raises(NormalizationFailure):
        StateVector([1, 1], "Z")
    v = StateVector([S, S], "Z")
    assert v.dim == 2
    assert v.norm == pytest.approx(1.0)


def test_state_after_preparation_is_a_column(spin_half):
    model = spin_half.model
    z, x = model.measurement("Z"), model.measurement("X")
    v = state_after_preparation(model, Event(0, z, OutcomeId("Z", {2})), "identity", x)
    assert v.reference == "X"
    np.testing.assert_allclose(v.components, [S, -S])


def test_prepared_states_are_conjugate_rows(spin_half):
    model = spin_half.model
    t = transformation_matrix(model, model.measurement("Z"), model.measurement("X"))
    states = prepared_states(t)
    assert [u.reference for u in states] == ["Z", "Z"]
    np.testing.assert_allclose(states[0].components, [S, S])
    np.testing.assert_allclose(states[1].components, [S, -S])
    assert born_probability(states[0], states[0]) == pytest.approx(1.0)
    assert born_probability(states[0], states[1]) == pytest.approx(0.0, abs=1e-15)


def test_prepared_states_need_a_unitary():
    t = TransformationMatrix([[1, 1], [0, 1]], "Z", "X", validate=False)
    with pytest.raises(NotUnitary):
        prepared_states(t)
    with pytest.raises(NotUnitary):
        TransformationMatrix([[1, 1], [0, 1]], "Z", "X")


def test_self_transformation_is_identity(spin_half):
    t = self_transformation(spin_half.model.measurement("Z"))
    np.testing.assert_allclose(t.matrix, np.eye(2))
    assert (t.source, t.target) == ("Z", "Z")


def test_born_rule_rejects_mismatched_references():
    with pytest.raises(ReferenceMismatch):
        born_probability(StateVector([1, 0], "Z"), StateVector([1, 0], "X"))
    with pytest.raises(DimensionMismatch):
        born_probability(StateVector([1, 0], "Z"), StateVector([1, 0, 0], "Z"))


def test_change_representation(spin_half, rng):
    model = spin_half.model
    V = transformation_matrix(model, model.measurement("X"), model.measurement("Z"))
    v = StateVector(random_state(2, rng), "Z")
    moved = change_representation(v, V)
    assert moved.reference == "X"
    np.testing.assert_allclose(moved.components, V.matrix.conj().T @ v.components)
    with pytest.raises(ReferenceMismatch):
        change_representation(moved, V)


def test_evolution(spin_half):
    model = spin_half.model
    z = model.measurement("Z")
    U = evolution_operator(model, z, "R")
    v = evolve(StateVector([1, 0], "Z"), U)
    np.testing.assert_allclose(v.components, [np.cos(np.pi / 6), 0.5])
    with pytest.raises(ReferenceMismatch):
        evolve(StateVector([1, 0], "X"), U)
    with pytest.raises(NotUnitary):
        EvolutionOperator([[2, 0], [0, 1]])


def test_compose_states_is_row_major_kronecker():
    v = compose_states(StateVector([1, 0], "A"), StateVector([0, S, S], "B"))
    assert v.reference == "A⊗B"
    np.testing.assert_allclose(v.components, [0, S, S, 0, 0, 0])
    with pytest.raises(ReferenceMismatch):
        compose_states(StateVector([1, 0], "A"), StateVector([1, 0], "B"), reference="B⊗A")


def test_measurement_operator_of_x(spin_half):
    model = spin_half.model
    t = transformation_matrix(model, model.measurement("Z"), model.measurement("X"))
    op = measurement_operator(t, [1, -1])
    np.testing.assert_allclose(op.matrix, [[0, 1], [1, 0]], atol=1e-12)
    assert op.reference == "Z"
    assert op.measurement == "X"
    assert op.hermiticity_defect() < 1e-12
    assert op.orthonormality_defect() < 1e-12
    assert expectation(op, StateVector([S, S], "Z")) == pytest.approx(1.0)
    table = outcome_probabilities(op, StateVector([1, 0], "Z"))
    assert table.labelled() == pytest.approx({"1": 0.5, "2": 0.5})
    with pytest.raises(DimensionMismatch):
        measurement_operator(t, [1, 0, -1])


def test_operator_from_matrix_orders_eigenpairs():
    op = MeasurementOperator.from_matrix([[0, 1], [1, 0]], "Z", "X")
    assert op.eigenvalues == pytest.approx((1.0, -1.0))
    np.testing.assert_allclose(op.eigenstates[0].components, [S, S])
    np.testing.assert_allclose(op.eigenstates[1].components, [S, -S])
    V = transformation_from_operator(op)
    assert (V.source, V.target) == ("X", "Z")
    with pytest.raises(NotHermitian):
        MeasurementOperator.from_matrix([[0, 1], [0, 0]], "Z")


def test_conjugate_operator_keeps_the_spectrum(qutrit):
    model = qutrit.model
    a, b = model.measurement("A"), model.measurement("B")
    op = measurement_operator(transformation_matrix(model, a, b), [-1, 0, 1])
    V = transformation_matrix(model, b, a)
    moved = conjugate_operator(op, V)
    assert moved.reference == "B"
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(moved.matrix)), [-1, 0, 1], atol=1e-12)
    with pytest.raises(ReferenceMismatch):
        conjugate_operator(moved, V)


@pytest.mark.parametrize("name", ["spin_half", "qutrit", "composite_pair"])
def test_summary_checks_pass_on_bundled_models(name, request, rng):
    loaded = request.getfixturevalue(name)
    results = summary_checks(loaded.model, rng, samples=3)
    assert all(r.passed for r in results), [(r.name, r.residual) for r in results if not r.passed]
    assert {r.name for r in results} >= {
        "reconstruction:born-rule",
        "reconstruction:tensor-product",
        "reconstruction:representation-invariance",
    }


@given(models())
def test_summary_checks_pass_on_random_models(model):
    results = summary_checks(model, np.random.default_rng(0), samples=2)
    assert all(r.passed for r in results), [(r.name, r.residual) for r in results if not r.passed]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_summary_checks_pass_on_eight_outcome_models(seed):
    model = random_model(np.random.default_rng(seed), 8)
    results = summary_checks(model, np.random.default_rng(seed), samples=3)
    assert all(r.passed for r in results), [(r.name, r.residual) for r in results if not r.passed]


def test_summary_checks_at_the_dimension_cap():
    model = random_model(np.random.default_rng(64), MAX_DIMENSION, measurements=("L", "M"), interactions=("I1",))
    results = summary_checks(model, np.random.default_rng(0), samples=1)
    assert all(r.passed for r in results), [(r.name, r.residual) for r in results if not r.passed]


def test_row_phases_do_not_change_born_probabilities(spin_half, rng):
    model = spin_half.model
    z, x = model.measurement("Z"), model.measurement("X")
    v = StateVector(random_state(2, rng), "Z")
    for t in (self_transformation(z), transformation_matrix(model, z, x)):
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, t.dim))
        shifted = TransformationMatrix(phases[:, None] * t.matrix, t.source, t.target)
        before = [born_probability(u, v) for u in prepared_states(t)]
        after = [born_probability(u, v) for u in prepared_states(shifted)]
        np.testing.assert_allclose(after, before, atol=1e-12)
        np.testing.assert_allclose(np.abs(shifted.matrix @ v.components) ** 2, np.abs(t.matrix @ v.components) ** 2)


def test_operator_rejects_a_non_hermitian_matrix():
    states = (StateVector([1, 0], "Z"), StateVector([0, 1], "Z"))
    with pytest.raises(NotHermitian):
        MeasurementOperator((1.0, -1.0), states, [[1, 1], [0, -1]], "Z")


def test_operator_rejects_a_non_orthonormal_eigenbasis():
    states = (StateVector([1, 0], "Z"), StateVector([S, S], "Z"))
    with pytest.raises(NormalizationFailure):
        MeasurementOperator((1.0, -1.0), states, [[1, 0], [0, -1]], "Z")
