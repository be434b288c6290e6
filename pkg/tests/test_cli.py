import json
import logging
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

from centerlab.cli import run_command
from centerlab.Context import Context
from centerlab.lib.io import MatrixFile, load_matrix, save_matrix


@pytest.fixture
def data_csv(tmp_path, rng):
    return str(save_matrix(rng.standard_normal((12, 9)) + np.arange(9.0), tmp_path / "in.csv"))


def run_ok(argv, capsys):
    code = run_command(argv)
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return json.loads(captured.out)


def run_fail(argv, capsys, expected, **kwargs):
    code = run_command(argv, **kwargs)
    captured = capsys.readouterr()
    assert code == expected, captured.err
    return json.loads(captured.err)


def test_center_double(tmp_path, data_csv, capsys):
    summary = run_ok(["center", "--centering", "double", data_csv, "--out-dir", str(tmp_path / "out")], capsys)
    assert summary["artifacts"] == ["centered.csv"]
    assert "[CENTER]" in summary["logs"]
    C = load_matrix(str(tmp_path / "out" / "centered.csv")).values
    assert_allclose(C.sum(axis=0), 0.0, atol=1e-12)
    assert_allclose(C.sum(axis=1), 0.0, atol=1e-12)


def test_energy_test_is_byte_identical(tmp_path, data_csv, capsys):
    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        summary = run_ok(["energy-test", "-B", "500", "--seed", "7", data_csv, "--out-dir", str(out)], capsys)
        assert isinstance(summary["result"]["reject"], bool)
        outputs.append((out / "energy_test.json").read_bytes())
    assert outputs[0] == outputs[1]
    report = json.loads(outputs[0])
    assert report["B"] == 500 and len(report["null_samples"]) == 500


def test_energy_test_omit_null(tmp_path, data_csv, capsys):
    run_ok(["energy-test", "-B", "50", "--seed", "1", "--omit-null", data_csv, "--out-dir", str(tmp_path)], capsys)
    report = json.loads((tmp_path / "energy_test.json").read_text())
    assert "null_samples" not in report


def test_synth_then_pls_alignment(tmp_path, capsys):
    run_ok(["synth", "two-block", "--seed", "1", "--out-dir", str(tmp_path)], capsys)
    summary = run_ok([
        "pls", str(tmp_path / "block1.csv"), str(tmp_path / "block2.csv"),
        "--centering", "double", "-K", "2", "--truth", str(tmp_path / "truth.json"),
        "--out-dir", str(tmp_path / "pls"),
    ], capsys)
    report = json.loads((tmp_path / "pls" / "alignment.json").read_text())
    assert summary["result"]["n_components"] == 2
    for comp in report["components"]:
        assert comp["block1_weight"] >= 0.9
        assert comp["block2_weight"] >= 0.9
    for name in ("pls_block1.csv", "pls_block2.csv", "pls_covariances.csv"):
        assert (tmp_path / "pls" / name).exists()


def test_synth_is_deterministic(tmp_path, capsys):
    for run in ("a", "b"):
        run_ok(["synth", "toy", "--noise", "0.1", "--seed", "3", "--out-dir", str(tmp_path / run)], capsys)
    assert (tmp_path / "a" / "toy.csv").read_bytes() == (tmp_path / "b" / "toy.csv").read_bytes()


def test_pls_with_trait_centering_is_a_config_error(tmp_path, data_csv, capsys):
    err = run_fail(["pls", data_csv, data_csv, "--centering", "trait", "--out-dir", str(tmp_path)], capsys, 5)
    assert err["errors"][0]["source"]["pointer"] == "/centering"
    assert "objetos" in err["errors"][0]["detail"]


def test_missing_required_flag_is_a_config_error(tmp_path, data_csv, capsys):
    err = run_fail(["center", data_csv, "--out-dir", str(tmp_path)], capsys, 5)
    assert err["errors"][0]["code"] == "config.missing"


def test_unknown_flag_is_a_usage_error(data_csv, capsys):
    err = run_fail(["center", "--bogus", data_csv], capsys, 1)
    assert err["errors"][0]["code"] == "cli.usage"
    run_fail(["frobnicate"], capsys, 1)
    run_fail(["energy-test", "-B", "many", data_csv], capsys, 1)


def test_unusable_out_dir(tmp_path, data_csv, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    run_fail(["means", data_csv, "--out-dir", str(blocker)], capsys, 2)


def test_missing_writer_is_a_deps_error(data_csv, capsys):
    err = run_fail(["means", data_csv], capsys, 6, context=Context(utils=[]))
    assert err["errors"][0]["source"]["pointer"] == "/writer"


def test_execution_errors_are_json(tmp_path, capsys):
    path = tmp_path / "rows.csv"
    path.write_text("1,1,1\n2,2,2\n")
    err = run_fail(["energy-test", str(path), "--out-dir", str(tmp_path)], capsys, 3)
    assert err["errors"][0]["code"] == "input.degenerate"

    path.write_text("1,2\n3\n")
    err = run_fail(["means", str(path), "--out-dir", str(tmp_path)], capsys, 3)
    assert err["errors"][0]["meta"]["line"] == 2


def test_means_and_modes(tmp_path, data_csv, capsys):
    run_ok(["means", data_csv, "--out-dir", str(tmp_path)], capsys)
    means = json.loads((tmp_path / "means.json").read_text())
    assert abs(means["inner_object_trait"]["grand_centered"]) < 1e-9
    for name in ("mean_object.csv", "mean_trait.csv", "mean_grand.csv", "mean_double.csv"):
        assert (tmp_path / name).exists()

    summary = run_ok(["modes", data_csv, "--centering", "object", "--rank", "3", "--out-dir", str(tmp_path)], capsys)
    assert summary["result"]["rank"] == 3
    shares = (tmp_path / "energy_shares.csv").read_text().splitlines()
    assert shares[0] == "component,share,cumulative"
    assert len(shares) == 4


def test_ledger_and_breakdown(tmp_path, data_csv, capsys):
    run_ok(["ledger", data_csv, "--out-dir", str(tmp_path)], capsys)
    assert (tmp_path / "ledger.csv").read_text().startswith("centering,rank,")
    summary = run_ok(["breakdown", data_csv, "-k", "2", "--out-dir", str(tmp_path)], capsys)
    assert summary["result"]["k"] == 2
    report = json.loads((tmp_path / "energy_breakdown.json").read_text())
    assert len(report["object_centered_shares"]) == 2


def test_transform_and_transpose_flags(tmp_path, capsys):
    path = tmp_path / "counts.csv"
    path.write_text("0,9\n99,999\n0,0\n")
    run_ok(["center", "--centering", "none", "--transform", "log10_plus1", "--transpose", str(path),
            "--out-dir", str(tmp_path / "out")], capsys)
    C = load_matrix(MatrixFile(path=str(tmp_path / "out" / "centered.csv"))).values
    assert_allclose(C, [[0.0, 2.0, 0.0], [1.0, 3.0, 0.0]])


def test_plot_with_labels(tmp_path, data_csv, capsys):
    labels = tmp_path / "labels.csv"
    labels.write_text("object,group\n0,a\n1,a\n2,b\n")
    for kind in ("heatmap", "curves", "scatter_matrix", "energy_breakdown"):
        run_ok(["plot", kind, data_csv, "--labels", str(labels), "--out-dir", str(tmp_path)], capsys)
        assert (tmp_path / f"{kind}.svg").read_text().lstrip().startswith("<?xml")
    run_ok(["plot", "energy_test", data_csv, "-B", "50", "--seed", "0", "--out-dir", str(tmp_path)], capsys)


def test_out_dir_from_environment(tmp_path, data_csv, capsys, monkeypatch):
    monkeypatch.setenv("CENTERLAB_OUT_DIR", str(tmp_path / "env"))
    run_ok(["ledger", data_csv], capsys)
    assert (tmp_path / "env" / "ledger.csv").exists()


@pytest.mark.skipif(not os.getenv("CENTERLAB_MORTALITY_CSV"), reason="CENTERLAB_MORTALITY_CSV no definido")
def test_mortality_constant_direction(tmp_path, capsys):
    path = os.environ["CENTERLAB_MORTALITY_CSV"]
    run_ok(["energy-test", path, "--transform", "log10", "--seed", "0", "--out-dir", str(tmp_path)], capsys)
    report = json.loads((tmp_path / "energy_test.json").read_text())
    assert report["observed"] == pytest.approx(0.65, abs=0.05)
    assert report["reject"] is True

    run_ok(["breakdown", path, "--transform", "log10", "-k", "3", "--out-dir", str(tmp_path)], capsys)
    breakdown = json.loads((tmp_path / "energy_breakdown.json").read_text())
    assert breakdown["drop_fraction_of_constant"] == pytest.approx(0.993, abs=0.01)


def test_plot_modes_and_display_flags(tmp_path, data_csv, capsys):
    summary = run_ok(["plot", "modes", data_csv, "--centering", "double", "--components", "2",
                      "--orientation", "traits", "--x-label", "edad", "--out-dir", str(tmp_path)], capsys)
    assert summary["config"]["orientation"] == "traits"
    svg = (tmp_path / "modes.svg").read_text()
    assert "modo 2 (" in svg and "edad" in svg

    summary = run_ok(["plot", "scatter_matrix", data_csv, "--no-connect", "--out-dir", str(tmp_path)], capsys)
    assert summary["config"]["connect"] is False
    summary = run_ok(["plot", "curves", data_csv, "--no-mean", "--out-dir", str(tmp_path)], capsys)
    assert summary["config"]["show_mean"] is False
    run_fail(["plot", "modes", data_csv, "--orientation", "sideways"], capsys, 1)


def test_empty_group_in_labels_is_an_execution_error(tmp_path, data_csv, capsys):
    labels = tmp_path / "labels.csv"
    labels.write_text("object,group\n0\n")
    err = run_fail(["plot", "curves", data_csv, "--labels", str(labels), "--out-dir", str(tmp_path)], capsys, 3)
    assert err["errors"][0]["meta"]["line"] == 2


def test_invalid_log_level_is_reported_as_json(tmp_path, data_csv, capsys, monkeypatch):
    monkeypatch.setenv("CENTERLAB_LOG_LEVEL", "chatty")
    err = run_fail(["ledger", data_csv, "--out-dir", str(tmp_path)], capsys, 2)
    assert "CENTERLAB_LOG_LEVEL" in err["message"]


def test_root_log_level_is_restored(tmp_path, data_csv, capsys, monkeypatch):
    root = logging.getLogger()
    monkeypatch.setattr(root, "level", logging.WARNING)
    monkeypatch.setenv("CENTERLAB_LOG_LEVEL", "info")
    summary = run_ok(["ledger", data_csv, "--out-dir", str(tmp_path)], capsys)
    assert "[IO]" in summary["logs"]
    assert root.level == logging.WARNING
