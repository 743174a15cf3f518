import orjson
import pytest

from feynlogic.cli.config import bundled_configs, build_config, load, parse_config, read_config_bytes
from feynlogic.errors import NotUnitary, ParseError, UnknownSequence, UnresolvedReference

MINIMAL = {
    "schema_version": 1,
    "name": "minimal",
    "measurements": [
        {"name": "Z", "outcomes": 2, "basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
        {"name": "X", "outcomes": 2, "basis": [[[0.6, 0], [0.8, 0]], [[0.8, 0], [-0.6, 0]]]},
    ],
    "sequences": {
        "zx": {"events": [{"measurement": "Z", "outcome": 1}, {"measurement": "X", "outcome": 2}]},
    },
}


def dumps(data) -> bytes:
    return orjson.dumps(data)


def with_changes(**changes):
    return {**MINIMAL, **changes}


def test_bundled_configs_are_listed():
    assert bundled_configs() == ["composite_pair", "qutrit", "spin_half"]


@pytest.mark.parametrize("name", ["composite_pair", "qutrit", "spin_half"])
def test_bundled_configs_load(name):
    loaded = load(name)
    assert loaded.name == name
    assert loaded.model.validated
    assert loaded.sequences


def test_minimal_config_resolves():
    loaded = build_config(parse_config(dumps(MINIMAL)))
    seq = loaded.sequence("zx")
    assert seq.times == (0, 1)
    assert seq.system == ("S",)
    assert seq.final.outcome.indices == frozenset({2})


def test_malformed_json_reports_position():
    with pytest.raises(ParseError, match="line 1"):
        parse_config(b'{"schema_version": 1, "name": }')


@pytest.mark.parametrize(
    "data, field",
    [
        (with_changes(schema_version=1, name=None), "name"),
        (with_changes(unexpected=True), "unexpected"),
        (with_changes(measurements=[{"name": "Z"}]), "measurements"),
        (with_changes(interactions={"identity": [[[1, 0]]]}), "interactions"),
        (with_changes(interactions={"U": [[[1, 0], [0, 0]]]}), "interactions"),
    ],
)
def test_schema_violations_name_the_field(data, field):
    with pytest.raises(ParseError, match=field):
        parse_config(dumps(data))


def test_unsupported_schema_version():
    with pytest.raises(ParseError, match="schema_version"):
        parse_config(dumps(with_changes(schema_version=2)))


def test_undeclared_measurement():
    data = with_changes(sequences={"bad": {"events": [{"measurement": "Z", "outcome": 1}, {"measurement": "Y", "outcome": 1}]}})
    with pytest.raises(UnresolvedReference, match="'Y'"):
        build_config(parse_config(dumps(data)))


def test_undeclared_interaction():
    data = with_changes(
        sequences={
            "bad": {
                "events": [{"measurement": "Z", "outcome": 1}, {"measurement": "X", "outcome": 1}],
                "interactions": ["U"],
            }
        }
    )
    with pytest.raises(UnresolvedReference, match="'U'"):
        build_config(parse_config(dumps(data)))


def test_outcome_out_of_range():
    data = with_changes(sequences={"bad": {"events": [{"measurement": "Z", "outcome": 3}, {"measurement": "X", "outcome": 1}]}})
    with pytest.raises(UnresolvedReference):
        build_config(parse_config(dumps(data)))


def test_invalid_partition_is_a_parse_error():
    measurements = MINIMAL["measurements"] + [{"name": "Xc", "base": "X", "partition": [[1], [1, 2]]}]
    with pytest.raises(ParseError, match="Xc"):
        build_config(parse_config(dumps(with_changes(measurements=measurements))))


def test_non_unitary_basis_only_fails_when_validating():
    measurements = [
        MINIMAL["measurements"][0],
        {"name": "X", "outcomes": 2, "basis": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]},
    ]
    config = parse_config(dumps(with_changes(measurements=measurements)))
    with pytest.raises(NotUnitary):
        build_config(config)
    assert not build_config(config, validate=False).model.validated


def test_insert_position_is_checked():
    data = with_changes(
        experiments={
            "e": {"preparation": {"measurement": "Z", "outcome": 1}, "stages": [{"measurement": "Z"}], "insert_at": 2}
        }
    )
    with pytest.raises(ParseError, match="insert_at"):
        build_config(parse_config(dumps(data)))


def test_composites_and_paths(composite_pair, spin_half):
    pair = composite_pair.sequence("pair")
    assert pair.system == ("S1", "S2")
    assert pair.initial.measurement.id == "Z⊗Z"
    hop = spin_half.paths["hop"]
    assert hop.segments == 3
    assert hop.end == (2.0, 2.0)


def test_coarse_outcome_on_an_atomic_measurement(spin_half):
    seq = spin_half.sequence("z-xany-z")
    middle = seq.events[1]
    assert middle.outcome.indices == frozenset({1, 2})
    assert middle.measurement.is_trivial
    assert spin_half.measurements["Xany"].id == "X"


def test_lookup_errors(spin_half):
    with pytest.raises(UnknownSequence):
        spin_half.sequence("nope")
    with pytest.raises(UnresolvedReference):
        spin_half.experiment("nope")


def test_config_from_a_file(tmp_path):
    path = tmp_path / "minimal.json"
    path.write_bytes(dumps(MINIMAL))
    assert load(str(path)).name == "minimal"
    data, source = read_config_bytes(str(path))
    assert source == str(path)
    with pytest.raises(ParseError):
        read_config_bytes(str(tmp_path / "missing.json"))


@pytest.mark.parametrize(
    "path",
    [
        {"positions": [0.0, 1.0, 2.0], "times": [0.0, 1.0]},
        {"positions": [0.0, None], "times": [0.0, 1.0]},
        {"positions": [0.0, 1.0], "times": [1.0, 1.0]},
        {"positions": [0.0, 1.0, 2.0], "times": [0.0, 2.0, 1.0]},
    ],
)
def test_bad_paths_are_parse_errors(path):
    with pytest.raises(ParseError, match="bad"):
        parse_config(dumps(with_changes(paths={"bad": path})))
