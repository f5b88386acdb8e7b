"""The dvb command line: exit codes, determinism, error channels."""

import json

import pytest

from dvbcalc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def scenario_file(tmp_path, capsys):
    path = tmp_path / "scenario.json"
    code, out, _ = run_cli(capsys, "gen", "--seed", "11")
    assert code == 0
    path.write_text(out)
    return str(path)


def test_check_random_passes(capsys):
    code, out, err = run_cli(
        capsys, "check", "axioms", "--random", "--seed", "2", "--samples", "10"
    )
    assert code == 0
    assert "result: PASS (7/7 properties)" in out
    assert err == ""


def test_check_scenario_file(scenario_file, capsys):
    code, out, _ = run_cli(
        capsys, "check", "duality", "--scenario", scenario_file, "--samples", "10"
    )
    assert code == 0
    assert "result: PASS (8/8 properties)" in out


def test_check_all_deterministic_modulo_elapsed(capsys):
    args = ("check", "all", "--random", "--seed", "11", "--samples", "10",
            "--naive-identification")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    strip = lambda text: [l for l in text.splitlines() if not l.startswith("elapsed")]
    assert strip(out1) == strip(out2)
    assert out1.splitlines()[-1].startswith("elapsed: ")


def test_check_json_output(capsys):
    code, out, _ = run_cli(
        capsys, "check", "third-dual", "--random", "--seed", "4", "--samples", "10",
        "--json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert obj["suite"] == "third-dual"


def test_gen_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "gen", "--seed", "9")
    _, out2, _ = run_cli(capsys, "gen", "--seed", "9")
    assert out1 == out2
    json.loads(out1)


def test_usage_errors_exit_2(capsys):
    assert run_cli(capsys, "check", "bogus", "--random")[0] == 2
    assert run_cli(capsys)[0] == 2
    assert run_cli(capsys, "check", "axioms")[0] == 2  # no source
    assert run_cli(
        capsys, "check", "axioms", "--random", "--scenario", "x.json"
    )[0] == 2  # exclusive


def test_help_exits_0(capsys):
    assert run_cli(capsys, "--help")[0] == 0


def test_parse_error_channel(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("nonsense")
    code, _, err = run_cli(capsys, "check", "axioms", "--scenario", str(bad))
    assert code == 2
    assert err.startswith("PARSE_ERROR:")


def test_missing_file_is_parse_error(capsys):
    code, _, err = run_cli(capsys, "check", "axioms", "--scenario", "/no/such/file")
    assert code == 2
    assert err.startswith("PARSE_ERROR:")


def test_inconsistent_scenario_channel(tmp_path, capsys):
    obj = {
        "bundle": {"n": 1, "n_F": 1, "n_C": 1, "n_E": 1},
        "metric": {"g": [[[{"coeff": "0", "exps": [0]}]]]},
    }
    path = tmp_path / "singular.json"
    path.write_text(json.dumps(obj))
    code, _, err = run_cli(capsys, "check", "axioms", "--scenario", str(path))
    assert code == 2
    assert err.startswith("INCONSISTENT_SCENARIO:")


def test_dualize_prints_duals(scenario_file, capsys):
    code, out, _ = run_cli(capsys, "dualize", "--scenario", scenario_file)
    assert code == 0
    assert "right dual:" in out and "left dual:" in out
    assert "F*" in out


def test_dualize_at_point(scenario_file, capsys):
    code, out, _ = run_cli(
        capsys, "dualize", "--scenario", scenario_file, "--point", "x=1/2,-1,2"
    )
    assert code == 0
    assert "dual morphism blocks at x = (1/2, -1, 2):" in out
    assert "\nl:" in out and "\nr:" in out


def test_dualize_point_determinism(scenario_file, capsys):
    args = ("dualize", "--scenario", scenario_file, "--point", "2,0,-3")
    assert run_cli(capsys, *args)[1] == run_cli(capsys, *args)[1]


def test_dualize_bad_point_exits_2(scenario_file, capsys):
    code, out, err = run_cli(
        capsys, "dualize", "--scenario", scenario_file, "--point", "1/2"
    )
    assert code == 2
    assert err.startswith("PARSE_ERROR:")
    assert "dual morphism blocks" not in out


def test_dualize_point_without_morphism(tmp_path, capsys):
    obj = {"bundle": {"n": 1, "n_F": 1, "n_C": 1, "n_E": 1}}
    path = tmp_path / "bare.json"
    path.write_text(json.dumps(obj))
    code, _, err = run_cli(
        capsys, "dualize", "--scenario", str(path), "--point", "x=1"
    )
    assert code == 2
    assert err.startswith("INCONSISTENT_SCENARIO:")


def test_lift_vertical_both_sides(scenario_file, capsys):
    code, out, _ = run_cli(
        capsys, "lift", "vertical", "--scenario", scenario_file,
        "--side", "right", "--point", "1,0,2", "--outer", "3",
    )
    assert code == 0
    assert "vertical lift (right)" in out
    assert "f = (0, 0, 0)" in out
    code, out, _ = run_cli(
        capsys, "lift", "vertical", "--scenario", scenario_file,
        "--side", "left", "--point", "1,0,2", "--outer", "1/2,0,1",
    )
    assert code == 0
    assert "e = (0)" in out


def test_lift_complete_tangent_and_cotangent(scenario_file, capsys):
    code, tangent, _ = run_cli(
        capsys, "lift", "complete", "--scenario", scenario_file, "--kind", "tangent"
    )
    assert code == 0
    assert "complete tangent lift" in tangent and "label TM" in tangent
    code, cotangent, _ = run_cli(
        capsys, "lift", "complete", "--scenario", scenario_file, "--kind", "cotangent"
    )
    assert code == 0
    assert "complete cotangent lift" in cotangent and "label T*M" in cotangent


def test_lift_complete_needs_projectable_base(tmp_path, capsys):
    def lit(c, exps):
        return [{"coeff": c, "exps": exps}]

    obj = {
        "bundle": {"n": 1, "n_F": 1, "n_C": 1, "n_E": 1},
        "vector_field": {
            "base": [lit("1", [0, 1])],  # depends on the fiber variable
            "vert": [lit("0", [0, 0])],
        },
    }
    path = tmp_path / "vertical_base.json"
    path.write_text(json.dumps(obj))
    code, _, err = run_cli(
        capsys, "lift", "complete", "--scenario", str(path), "--kind", "tangent"
    )
    assert code == 2
    assert err.startswith("INCONSISTENT_SCENARIO:")


def test_connection_check_exit_codes(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys, "connection", "check", "symmetric", "--random", "--seed", "5",
        "--symmetric",
    )
    assert code == 0
    assert "connection is symmetric" in out
    # seed 3 generates a square but asymmetric connection
    _, gen_out, _ = run_cli(capsys, "gen", "--seed", "3")
    path = tmp_path / "asym.json"
    path.write_text(gen_out)
    code, out, _ = run_cli(capsys, "connection", "check", "symmetric",
                           "--scenario", str(path))
    assert code == 1
    assert "replay seed" in out
    assert "result: FAIL (0/1 properties)" in out


def test_connection_check_rank_mismatch_exits_2(tmp_path, capsys):
    _, gen_out, _ = run_cli(capsys, "gen", "--seed", "2")  # side rank 1, dim 2
    path = tmp_path / "thin.json"
    path.write_text(gen_out)
    code, _, err = run_cli(capsys, "connection", "check", "lagrangian",
                           "--scenario", str(path))
    assert code == 2
    assert err.startswith("INCONSISTENT_SCENARIO:")


def test_connection_check_failure_replays_identically(tmp_path, capsys):
    _, gen_out, _ = run_cli(capsys, "gen", "--seed", "3")
    path = tmp_path / "asym.json"
    path.write_text(gen_out)
    args = ("connection", "check", "symmetric", "--scenario", str(path))
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    strip = lambda text: [l for l in text.splitlines() if not l.startswith("elapsed")]
    assert strip(out1) == strip(out2)
