import orjson
import pytest
from click.testing import CliRunner

from feynlogic.cli.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, cli
from feynlogic.settings import set_settings

FAST_ACTION = ["action", "--paths", "50", "--samples", "2000"]
MINIMAL_PATHS = {
    "schema_version": 1,
    "name": "paths",
    "measurements": [{"name": "Z", "outcomes": 2, "basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}],
}


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, ["-q", "--seed", "5", *args])


def records(result):
    return [orjson.loads(line) for line in result.stdout.splitlines() if line.startswith("{")]


@pytest.mark.parametrize(
    "args",
    [
        ["validate", "spin_half", "--trials", "50"],
        ["validate", "composite_pair", "--trials", "50"],
        ["amplitude", "spin_half", "z-x-z"],
        ["amplitude", "composite_pair", "pair"],
        ["check-nd", "spin_half", "--scenario", "repeat-z", "--runs", "2000"],
        ["check-nd", "qutrit", "--runs", "0"],
        ["reconstruct", "qutrit"],
        ["reconstruct", "composite_pair", "--samples", "2"],
        ["check-composition", "--samples", "500"],
        FAST_ACTION,
    ],
)
def test_commands_pass(runner, args):
    result = invoke(runner, *args)
    assert result.exit_code == EXIT_OK, result.output
    assert "verdict: PASS" in result.stdout


def test_jsonl_report(runner):
    result = invoke(runner, "--format", "jsonl", "amplitude", "spin_half", "z-x-z")
    assert result.exit_code == EXIT_OK, result.output
    lines = records(result)
    assert lines[0]["record"] == "run"
    assert lines[0]["seed"] == 5
    assert lines[-1] == {"record": "verdict", "verdict": "pass", "checks": lines[-1]["checks"], "failed": 0}
    (value,) = [r for r in lines if r.get("name") == "sequence:z-x-z"]
    assert value["values"]["probability"] == pytest.approx(0.25)
    assert all("elapsed" not in r for r in lines if r["record"] == "check")


def test_coarse_final_outcome_reports_a_probability(runner):
    result = invoke(runner, "--format", "jsonl", "amplitude", "qutrit", "a-bcoarse-a")
    assert result.exit_code == EXIT_OK, result.output
    (value,) = [r for r in records(result) if r.get("name") == "sequence:a-bcoarse-a"]
    assert value["values"]["amplitude"] is None
    assert 0.0 <= value["values"]["probability"] <= 1.0


def test_same_seed_gives_identical_reports(runner):
    args = ["--format", "jsonl", "check-nd", "spin_half", "--runs", "1000", "--batches", "2"]
    assert invoke(runner, *args).stdout == invoke(runner, *args).stdout


def test_output_file(runner, tmp_path):
    out = tmp_path / "report.jsonl"
    result = invoke(runner, "--format", "jsonl", "-o", str(out), "check-composition", "--samples", "300")
    assert result.exit_code == EXIT_OK
    assert result.stdout == ""
    assert orjson.loads(out.read_bytes().splitlines()[-1])["verdict"] == "pass"


@pytest.mark.parametrize(
    "args",
    [
        ["amplitude", "spin_half", "no-such-sequence"],
        ["validate", "no/such/config.json"],
        ["check-nd", "spin_half", "--scenario", "nope"],
        [*FAST_ACTION, "--size", "300"],
        [*FAST_ACTION, "--omega", "2.0"],
        [*FAST_ACTION, "--window", "-1"],
        ["check-nd", "spin_half", "--runs", "-1"],
        ["no-such-command"],
    ],
)
def test_usage_errors(runner, args):
    result = invoke(runner, *args)
    assert result.exit_code == EXIT_USAGE, result.output


def test_bad_description_file(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"schema_version": 1, "name": "broken",')
    result = invoke(runner, "validate", str(path))
    assert result.exit_code == EXIT_USAGE
    assert "line" in result.output


def test_non_unitary_model_fails(runner, tmp_path):
    path = tmp_path / "skewed.json"
    path.write_bytes(
        orjson.dumps(
            {
                "schema_version": 1,
                "name": "skewed",
                "measurements": [
                    {"name": "Z", "outcomes": 2, "basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
                    {"name": "X", "outcomes": 2, "basis": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]},
                ],
                "sequences": {"zx": {"events": [{"measurement": "Z", "outcome": 1}, {"measurement": "X", "outcome": 1}]}},
            }
        )
    )
    assert invoke(runner, "amplitude", str(path), "zx").exit_code == EXIT_FAILURE
    result = invoke(runner, "--format", "jsonl", "validate", str(path), "--trials", "20")
    assert result.exit_code == EXIT_FAILURE
    failed = [r["name"] for r in records(result) if r["record"] == "check" and r["status"] == "fail"]
    assert failed


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == EXIT_OK
    assert "feynlogic" in result.output


def test_monte_carlo_runs_default_to_the_environment(runner, monkeypatch):
    monkeypatch.setenv("FEYNLOGIC_MC_RUNS", "300")
    set_settings(None)
    result = invoke(runner, "--format", "jsonl", "check-nd", "spin_half", "--scenario", "repeat-z")
    assert result.exit_code == EXIT_OK, result.output
    (mc,) = [r for r in records(result) if r.get("name") == "monte-carlo:repeat-z"]
    assert mc["values"]["runs"] == 300


@pytest.mark.parametrize(
    "args",
    [
        ["check-nd", "spin_half", "--scenario", "repeat-z", "--runs", "100", "--seed", "9"],
        ["check-composition", "--samples", "300", "--seed", "9"],
    ],
)
def test_command_seed_overrides_the_global_seed(runner, args):
    result = invoke(runner, "--format", "jsonl", *args)
    assert result.exit_code == EXIT_OK, result.output
    assert records(result)[0]["seed"] == 9


def test_command_seed_changes_the_sample(runner):
    base = ["--format", "jsonl", "check-nd", "spin_half", "--scenario", "rotated-chain", "--runs", "500"]
    first = invoke(runner, *base, "--seed", "1").stdout
    assert first == invoke(runner, *base, "--seed", "1").stdout
    assert first != invoke(runner, *base, "--seed", "2").stdout


@pytest.mark.parametrize("config", ["spin_half", "qutrit", "composite_pair"])
def test_full_monte_carlo_reruns_are_byte_identical(runner, config):
    args = ["--format", "jsonl", "check-nd", config, "--runs", "100000", "--batches", "4"]
    first = invoke(runner, *args)
    assert first.exit_code in (EXIT_OK, EXIT_FAILURE), first.output
    assert any(r.get("name", "").startswith("monte-carlo:") for r in records(first))
    assert first.stdout == invoke(runner, *args).stdout


@pytest.mark.parametrize(
    "path",
    [
        {"positions": [0.0, 1.0, 2.0], "times": [0.0, 1.0]},
        {"positions": [0.0, 1.0], "times": [1.0, 0.0]},
    ],
)
def test_bad_path_in_a_config_is_a_usage_error(runner, tmp_path, path):
    data = orjson.loads(orjson.dumps(MINIMAL_PATHS))
    data["paths"] = {"bad": path}
    config = tmp_path / "paths.json"
    config.write_bytes(orjson.dumps(data))
    result = invoke(runner, *FAST_ACTION, "--config", str(config))
    assert result.exit_code == EXIT_USAGE, result.output
    assert "bad" in result.output
