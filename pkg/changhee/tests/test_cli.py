import json

import pytest

from changhee.main import EXIT_EXPRESSION, EXIT_FAILED, EXIT_OK, EXIT_USAGE, run


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    for name in ("N_MAX", "K_MAX", "TRUNCATION", "FORMAT", "OUT", "JOBS"):
        monkeypatch.delenv(f"CHANGHEE_{name}", raising=False)
    monkeypatch.chdir(tmp_path)


def invoke(capsys, *argv):
    status = run(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


@pytest.mark.parametrize(
    "family, k, n_max, values",
    [
        ("changhee1-number", "1", "3", ["1", "-1/2", "1/2", "-3/4"]),
        ("euler-number", "1", "0", ["1"]),
        ("changhee2-number", "1", "2", ["1", "1/2", "-1/2"]),
    ],
)
def test_table(capsys, family, k, n_max, values):
    status, out, _ = invoke(capsys, "table", "--family", family, "--k", k, "--n-max", n_max)
    assert status == EXIT_OK
    assert json.loads(out) == {"family": family, "k": int(k), "values": values}


def test_table_csv_matches_json(capsys):
    _, as_json, _ = invoke(capsys, "table", "--family", "euler-poly", "--k", "2", "--n-max", "4")
    _, as_csv, _ = invoke(capsys, "table", "--family", "euler-poly", "--k", "2", "--n-max", "4", "--format", "csv")
    cells = [line.split(",", 1)[1] for line in as_csv.splitlines()[1:]]
    assert cells == [";".join(v) for v in json.loads(as_json)["values"]]


def test_table_is_deterministic(capsys):
    argv = ("table", "--family", "changhee2-poly", "--k", "3", "--n-max", "6")
    assert invoke(capsys, *argv)[1] == invoke(capsys, *argv)[1]


def test_table_to_file(capsys, tmp_path):
    target = tmp_path / "table.csv"
    status, out, _ = invoke(
        capsys, "table", "--family", "changhee1-number", "--k", "1", "--n-max", "1", "--format", "csv", "--out", str(target)
    )
    assert status == EXIT_OK
    assert out == ""
    assert target.read_text(encoding="utf-8") == "n,value\n0,1\n1,-1/2\n"


def test_polynomial_table(capsys):
    status, out, _ = invoke(capsys, "table", "--family", "euler-poly", "--k", "1", "--n-max", "2")
    assert status == EXIT_OK
    assert json.loads(out)["values"] == [["1"], ["-1/2", "1"], ["0", "-1", "1"]]


def test_unwritable_output_path(capsys, tmp_path):
    target = tmp_path / "missing" / "table.csv"
    status, out, err = invoke(capsys, "table", "--family", "euler-number", "--k", "1", "--out", str(target))
    assert status == EXIT_USAGE
    assert out == ""
    assert "cannot write output file" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "--family", "bernoulli-number", "--k", "1"),
        ("table", "--family", "euler-number", "--k", "0"),
        ("table", "--family", "euler-number", "--k", "1", "--n-max", "-1"),
        ("table", "--family", "euler-number"),
    ],
)
def test_table_usage_errors(capsys, argv):
    status, out, err = invoke(capsys, *argv)
    assert status == EXIT_USAGE
    assert out == ""
    assert err


@pytest.mark.parametrize(
    "family, x, expected",
    [
        ("changhee1-poly", "0", "-1/2"),
        ("changhee1-poly", "1/2", "0"),
        ("changhee2-poly", "-1/2", "0"),
        ("euler-poly", "3", "5/2"),
    ],
)
def test_eval(capsys, family, x, expected):
    status, out, _ = invoke(capsys, "eval", "--family", family, "--k", "1", "--n", "1", f"--x={x}")
    assert status == EXIT_OK
    assert json.loads(out)["value"] == expected


def test_eval_csv(capsys):
    status, out, _ = invoke(capsys, "eval", "--family", "changhee1-poly", "--k", "1", "--n", "1", "--x", "2", "--format", "csv")
    assert status == EXIT_OK
    assert out == "x,value\n2,3/2\n"


@pytest.mark.parametrize(
    "family, x",
    [("changhee1-number", "0"), ("changhee1-poly", "1/0"), ("changhee1-poly", "0.5")],
)
def test_eval_usage_errors(capsys, family, x):
    status, _, err = invoke(capsys, "eval", "--family", family, "--k", "1", "--n", "1", f"--x={x}")
    assert status == EXIT_USAGE
    assert "error" in err


def test_expand(capsys):
    status, out, _ = invoke(capsys, "expand", "(2/(2+t))^2", "--n", "2")
    assert status == EXIT_OK
    assert json.loads(out)["coefficients"] == ["1", "-1", "3/2"]
    status, out, _ = invoke(capsys, "expand", "t", "--n", "1", "--format", "csv")
    assert out == "n,value\n0,0\n1,1\n"


def test_expand_polynomial_coefficients(capsys):
    _, out, _ = invoke(capsys, "expand", "(1+t)^x", "--n", "2")
    assert json.loads(out)["coefficients"] == ["1", ["0", "1"], ["0", "-1", "1"]]


def test_expand_syntax_error(capsys):
    status, out, err = invoke(capsys, "expand", "2/^t")
    assert status == EXIT_EXPRESSION
    assert out == ""
    assert "offset 2" in err


def test_expand_evaluation_error(capsys):
    status, _, err = invoke(capsys, "expand", "1/(x+t)", "--n", "3")
    assert status == EXIT_EXPRESSION
    assert "offset 3..6" in err


def test_verify_all(capsys):
    status, out, _ = invoke(capsys, "verify", "--ids", "all")
    assert status == EXIT_OK
    reports = json.loads(out)
    assert len(reports) == 19
    assert all(r["verdict"] == "pass" and r["witness"] is None for r in reports)
    assert {r["id"] for r in reports} >= {"thm1", "thm11", "cor4", "eq37", "eq40"}


def test_verify_single(capsys):
    status, out, _ = invoke(capsys, "verify", "--ids", "thm1", "--n-max", "0", "--k-max", "1")
    assert status == EXIT_OK
    assert json.loads(out) == [
        {"id": "thm1", "verdict": "pass", "grid": {"n_max": 0, "k_max": 1}, "witness": None}
    ]


def test_verify_unknown_id(capsys):
    status, out, err = invoke(capsys, "verify", "--ids", "nosuch")
    assert status == EXIT_USAGE
    assert "nosuch" in err


def test_verify_perturbed_table_fails(capsys):
    status, out, _ = invoke(
        capsys, "verify", "--ids", "thm2", "thm3", "--n-max", "4", "--k-max", "2", "--perturb", "euler-number:3:2"
    )
    assert status == EXIT_FAILED
    reports = json.loads(out)
    assert [r["verdict"] for r in reports] == ["fail", "fail"]
    assert (reports[0]["witness"]["n"], reports[0]["witness"]["k"]) == (3, 2)


def test_verify_bad_perturbation(capsys):
    status, _, err = invoke(capsys, "verify", "--ids", "thm1", "--perturb", "euler-number:three:2")
    assert status == EXIT_USAGE
    assert "FAMILY:N:K" in err


def test_verify_jobs_do_not_change_output(capsys):
    argv = ("verify", "--n-max", "5", "--k-max", "2", "--format", "csv")
    serial = invoke(capsys, *argv)[1]
    parallel = invoke(capsys, *argv, "--jobs", "3")[1]
    assert serial == parallel
    assert serial.splitlines()[1].startswith("thm1,pass,5,2")


def test_verify_config_file(capsys, tmp_path):
    config = tmp_path / "ci.yaml"
    config.write_text("n_max: 2\nk_max: 1\nformat: csv\n", encoding="utf-8")
    _, out, _ = invoke(capsys, "verify", "--ids", "thm1", "--config", str(config))
    assert out.splitlines()[1] == "thm1,pass,2,1,,,,,"
    _, out, _ = invoke(capsys, "verify", "--ids", "thm1", "--config", str(config), "--n-max", "3")
    assert out.splitlines()[1] == "thm1,pass,3,1,,,,,"


def test_verify_key_value_config_file(capsys, tmp_path):
    config = tmp_path / "ci.conf"
    config.write_text("# nightly grid\nn_max=2\nk_max=1\nformat=csv\n", encoding="utf-8")
    status, out, _ = invoke(capsys, "verify", "--ids", "thm1", "--config", str(config))
    assert status == EXIT_OK
    assert out.splitlines()[1] == "thm1,pass,2,1,,,,,"


def test_verify_bad_config(capsys, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("n_max: 8\ntruncation: 4\n", encoding="utf-8")
    status, _, err = invoke(capsys, "verify", "--ids", "thm1", "--config", str(config))
    assert status == EXIT_USAGE
    assert "truncation" in err


def test_verbose_logs_go_to_stderr(capsys):
    status, out, err = invoke(capsys, "verify", "-v", "--ids", "thm1", "--n-max", "1", "--k-max", "1")
    assert status == EXIT_OK
    assert "checking thm1" in err
    assert "checking" not in out
