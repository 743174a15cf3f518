import pytest
from hypothesis import given

from feynlogic.logic import IDENTITIES, check_identity, default_factory, invert, run_identity_suite

from .strategies import factories


@pytest.mark.parametrize("name", sorted(IDENTITIES))
@given(factory=factories())
def test_identity_holds(name, factory):
    lhs, rhs = IDENTITIES[name](factory)
    assert lhs == rhs


def test_identity_suite_passes():
    results = run_identity_suite(default_factory(20240101), trials=200)
    assert len(results) == len(IDENTITIES)
    assert all(r.passed for r in results), [r.name for r in results if not r.passed]
    assert {r.name for r in results} == {f"identity:{name}" for name in IDENTITIES}


def test_identity_suite_on_custom_catalogue():
    factory = default_factory(3, catalogue={"A": 2, "B": 3, "C": 5})
    results = run_identity_suite(factory, trials=50, names=["series-associative", "compose-interchange"])
    assert [r.name for r in results] == ["identity:series-associative", "identity:compose-interchange"]
    assert all(r.passed for r in results)


def test_failing_identity_reports_a_witness(monkeypatch):
    monkeypatch.setitem(IDENTITIES, "bogus", lambda f: (invert(f.sequence()), f.sequence()))
    result = check_identity("bogus", default_factory(5), trials=10)
    assert not result.passed
    assert result.residual == 10.0
    assert set(result.witness) == {"lhs", "rhs"}
