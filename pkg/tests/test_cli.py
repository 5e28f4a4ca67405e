import json

import pytest

from onlinesearch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


def test_simulate_advice(capsys):
    code, out, _ = run(capsys, "simulate", "--strategy", "advice", "--b", "1", "--m", "1", "--M", "8", "--seq", "3,1,1")
    f = fields(out)
    assert code == 0
    assert (f["tape"], float(f["profit"]), float(f["opt_profit"]), float(f["ratio"])) == ("0", 3, 3, 1)


def test_simulate_rpp(capsys):
    code, out, _ = run(capsys, "simulate", "--strategy", "rpp", "--p", "10", "--m", "1", "--M", "100", "--seq", "9,11,2")
    f = fields(out)
    assert code == 0 and float(f["profit"]) == 11 and float(f["ratio"]) <= 10


def test_simulate_opt_day(capsys):
    code, out, _ = run(capsys, "simulate", "--strategy", "opt-day", "--seq", "3,7,5")
    f = fields(out)
    assert code == 0 and float(f["profit"]) == 7 and float(f["ratio"]) == 1.0
    code, out, _ = run(capsys, "simulate", "--strategy", "opt-day", "--seq", "3,7,5", "--unknown-n")
    assert fields(out)["tape"] == "1001"


def test_simulate_opt_day_bad_tape(capsys):
    code, _, err = run(capsys, "simulate", "--strategy", "opt-day", "--seq", "3,7,5", "--unknown-n", "--tape", "1011")
    assert code == 2 and "day 4" in err


def test_simulate_random_geo(capsys):
    code, out, _ = run(capsys, "simulate", "--strategy", "random-geo", "--m", "1", "--M", "8", "--seq", "1.9,3.9,7.9", "--strict")
    f = fields(out)
    assert code == 0
    assert float(f["expected_ratio"]) == pytest.approx(1.7299270072992701, rel=1e-9)


def test_simulate_generated_sequence(capsys):
    code, out, _ = run(capsys, "simulate", "--strategy", "advice", "--b", "2", "--n", "20", "--seed", "42", "--format", "doc")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == 20 and doc["ratio"] <= 100 ** (1 / 5) * (1 + 1e-9)


def test_simulate_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--strategy", "rpp", "--p", "2", "--seq", "1,3", "--format", "csv")
    header, row = out.splitlines()
    assert dict(zip(header.split(","), row.split(",")))["profit"] == "3.0"


def test_simulate_input_files(capsys, tmp_path):
    doc = tmp_path / "s.json"
    doc.write_text('{"m": 1, "M": 8, "prices": [3, 1, 1]}')
    code, out, _ = run(capsys, "simulate", "--strategy", "advice", "--input", str(doc))
    assert code == 0 and float(fields(out)["profit"]) == 3

    plain = tmp_path / "s.txt"
    plain.write_text("3\n1\n1\n")
    code, out, _ = run(capsys, "simulate", "--strategy", "advice", "--input", str(plain), "--m", "1", "--M", "8")
    assert code == 0 and float(fields(out)["profit"]) == 3


@pytest.mark.parametrize("content", ["{broken", '{"m": 1, "M": 8, "prices": [30]}', "1\nx\n"])
def test_simulate_malformed_file(capsys, tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    code, _, _ = run(capsys, "simulate", "--strategy", "rpp", "--p", "2", "--input", str(path), "--m", "1", "--M", "8")
    assert code == 3


def test_simulate_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "simulate", "--strategy", "rpp", "--p", "2", "--input", str(tmp_path / "none"))
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--strategy", "rpp", "--seq", "1,2"],
        ["simulate", "--strategy", "rpp", "--p", "2", "--m", "1", "--M", "3", "--seq", "1,9"],
        ["simulate", "--strategy", "rpp", "--p", "2", "--m", "1", "--seq", "1,2"],
        ["simulate", "--strategy", "advice", "--b", "99", "--seq", "1,2"],
        ["simulate", "--strategy", "random-geo", "--m", "1", "--M", "10", "--seq", "2", "--strict"],
        ["simulate", "--strategy", "rpp", "--p", "2", "--seq", "1", "--out", "/no/such/dir/x"],
        ["bounds", "--ratio", "0.5"],
    ],
)
def test_config_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--strategy", "nope"])
    assert info.value.code == 2


def test_adversary_adaptive(capsys, tmp_path):
    out_file = tmp_path / "t.json"
    code, out, _ = run(capsys, "adversary", "--mode", "adaptive", "--b", "1", "--m", "1", "--M", "8", "--n", "3", "--out", str(out_file))
    assert code == 0 and "forced_ratio=2.0" in out
    doc = json.loads(out_file.read_text())
    assert doc["prices"] == [2.0, 4.0, 8.0]
    assert doc["metadata"]["case"] == "all_accepted_then_M"


def test_adversary_precondition(capsys):
    code, _, err = run(capsys, "adversary", "--mode", "adaptive", "--b", "3", "--n", "8")
    assert code == 2 and "n >= 2**b + 1 = 9" in err


def test_adversary_staircase(capsys):
    code, out, _ = run(capsys, "adversary", "--mode", "staircase", "--n", "4", "--m", "4", "--M", "8", "--format", "doc")
    summary, body = out.split("\n", 1)
    assert code == 0 and "delta=1.0" in summary
    assert len(json.loads(body)["members"]) == 4


def test_adversary_random_policies(capsys):
    code, out, _ = run(capsys, "adversary", "--mode", "adaptive", "--b", "4", "--n", "17", "--policies", "random", "--seed", "3")
    ratio = float(out.split("forced_ratio=")[1])
    assert code == 0 and ratio >= 100 ** (1 / 17) - 1e-9


def test_bounds_table(capsys):
    code, out, _ = run(capsys, "bounds", "--m", "1", "--M", "8", "--b-max", "3")
    rows = [line.split(",") for line in out.splitlines()[2:]]
    assert code == 0
    assert [float(r[1]) for r in rows] == pytest.approx([2.828, 2, 1.516, 1.26], abs=1e-3)


def test_bounds_flat(capsys):
    code, out, _ = run(capsys, "bounds", "--m", "5", "--M", "5")
    assert code == 0 and all(float(line.split(",")[1]) == 1 for line in out.splitlines()[2:])


def test_figure_defaults(capsys):
    code, out, _ = run(capsys, "figure")
    lines = out.splitlines()
    assert code == 0 and "crossover=1.503" in lines[0] and lines[2].startswith("0,10.0,")
    code, out, _ = run(capsys, "figure", "--format", "doc")
    assert json.loads(out)["rows"][0]["advice_bound"] == pytest.approx(10)


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--m", "1", "--M", "8", "--b-max", "1", "--n", "3")
    assert code == 0 and out.splitlines()[-1].startswith("PASS overall")
    assert "measured=2.0" in out.splitlines()[1]


def test_certify_negative_control(capsys):
    code, out, _ = run(capsys, "certify", "--m", "1", "--M", "8", "--b-max", "1", "--n", "3", "--perturb", "1e-3")
    assert code == 1 and "delta:" in out


def test_certify_bad_budget(capsys):
    code, _, _ = run(capsys, "certify", "--b-max", "3", "--n", "8")
    assert code == 2


def test_tolerance_env_override(capsys, monkeypatch):
    monkeypatch.setenv("ONLINESEARCH_TOL", "0.5")
    from onlinesearch.cli import build_parser

    args = build_parser().parse_args(["certify"])
    assert args.tol == 0.5
