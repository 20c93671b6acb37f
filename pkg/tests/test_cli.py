from types import SimpleNamespace

import pytest

import ntlab
from ntlab.lab import runner
from ntlab.lab.cli import EXIT_CONFIG, EXIT_INVARIANT, EXIT_OK, build_parser, main
from ntlab.models import ExperimentRecord


def records_from(text):
    return [ExperimentRecord.from_line(line) for line in text.splitlines() if line.strip()]


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert ntlab.__version__ in capsys.readouterr().out


def test_parser__flags():
    args = build_parser().parse_args(
        ["smooth-mean", "--x", "500", "--Y", "64", "--poisson", "--no-cross-check", "-vv"]
    )
    assert args.command == "smooth-mean"
    assert (args.x, args.Y) == ("500", "64")
    assert (args.poisson, args.cross_check) == ("true", "false")
    assert args.verbose == 2


def test_parser__dashed_parameters():
    args = build_parser().parse_args(["mean", "--a-mode", "nonsquare", "--d", "2"])
    assert args.a_mode == "nonsquare"


def test_parser__rejects_unknown_command(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["hooley"])
    assert exc.value.code == 2


def test_main__single_point(capsys):
    assert main(["mean", "--d", "2", "--x", "1e3", "--y", "100"]) == EXIT_OK
    (record,) = records_from(capsys.readouterr().out)
    assert record.command == "mean"
    assert record.params["x"] == 1000
    assert record.values["main_term"] == 84


def test_main__writes_out_and_csv(tmp_path, capsys):
    out, csv_path = tmp_path / "env.jsonl", tmp_path / "env.csv"
    argv = [
        "envelope",
        "--theorem",
        "cubquarsex",
        "--x",
        "1e6",
        "--y",
        "1e4",
        "--out",
        str(out),
        "--csv",
        str(csv_path),
        "--eps",
        "0",
    ]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == ""
    (record,) = records_from(out.read_text(encoding="utf-8"))
    assert record.values["eps_factor"] == 1
    assert csv_path.exists()
    assert (tmp_path / "env.jsonl.index.json").exists()


def test_main__sweep(mean_config, tmp_path, capsys):
    assert main(["sweep", "--config", str(mean_config), "--threads", "2"]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert len(records_from((tmp_path / "mean.jsonl").read_text(encoding="utf-8"))) == 4


def test_main__flags_override_config(mean_config, tmp_path, capsys):
    assert main(["sweep", "--config", str(mean_config), "--x", "500"]) == EXIT_OK
    records = records_from((tmp_path / "mean.jsonl").read_text(encoding="utf-8"))
    assert [record.params["x"] for record in records] == [500, 500]


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep"],
        ["mean", "--d", "2", "--x", "1000"],
        ["mean", "--d", "2", "--x", "many", "--y", "100"],
        ["mean", "--d", "2", "--x", "1000", "--y", "100", "--Y", "5"],
        ["mean", "--d", "2", "--x", "1000", "--y", "100", "--threads", "0"],
        ["mean", "--mode", "fast"],
    ],
)
def test_main__config_errors(argv, capsys):
    assert main(argv) == EXIT_CONFIG
    assert "ntlab: error:" in capsys.readouterr().err


def test_main__no_parameters(capsys):
    assert main(["mean"]) == EXIT_CONFIG
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "ntlab: error: mean: no parameters given" in captured.err


def test_main__sweep_without_grid(write_config, capsys):
    path = write_config(
        """
        [sweep]
        command = polya-verify
        """
    )
    assert main(["sweep", "--config", str(path)]) == EXIT_CONFIG
    assert "polya-verify: no parameters given" in capsys.readouterr().err


def test_main__missing_config_file(tmp_path, capsys):
    assert main(["sweep", "--config", str(tmp_path / "missing.ini")]) == EXIT_CONFIG


def test_main__failed_precondition(capsys):
    assert main(["envelope", "--theorem", "resd2", "--x", "1", "--y", "10"]) == EXIT_CONFIG
    assert "x > 1" in capsys.readouterr().err


def test_main__sweep_with_failed_point_still_succeeds(write_config, capsys):
    path = write_config(
        """
        [sweep]
        command = envelope

        [envelope]
        theorem = resd2
        x = 1, 1e4
        y = 10
        """
    )
    assert main(["sweep", "--config", str(path)]) == EXIT_OK
    records = records_from(capsys.readouterr().out)
    assert [record.status for record in records] == ["error", "ok"]


def test_main__invariant_violation(monkeypatch, capsys):
    monkeypatch.setattr(
        runner, "polya_vinogradov_check", lambda p, d: SimpleNamespace(p=p, d=d, max_ratio=1.5)
    )
    assert main(["polya-verify", "--p-max", "20"]) == EXIT_INVARIANT
    assert "1.5" in capsys.readouterr().err


def test_main__verify(capsys):
    assert main(["gauss-verify", "--k-max", "15", "--m-max", "6", "--pairs", "10"]) == EXIT_OK
    (record,) = records_from(capsys.readouterr().out)
    assert record.kind == "gauss_check"
    assert record.status == "ok"
