"""End-to-end tests of the command-line entry point."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from src.cli.commands import SCALING_COLUMNS
from src.cli.main import main


def _stdout_json(capsys: pytest.CaptureFixture[str]) -> dict:
    return json.loads(capsys.readouterr().out)


def test_gen_graph_to_stdout_and_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Generated graphs print as JSON or land in --out."""

    assert main(["gen-graph", "--family", "complete", "--n", "4"]) == 0
    payload = _stdout_json(capsys)
    assert payload["n"] == 4
    assert len(payload["edges"]) == 6

    target = tmp_path / "rr.json"
    assert main(["gen-graph", "--family", "random-regular", "--n", "10", "--degree", "3", "--seed", "1", "--out", str(target)]) == 0
    assert len(json.loads(target.read_text())["edges"]) == 15


def test_gen_graph_rejects_infeasible_parameters() -> None:
    """n = 0 is invalid input."""

    assert main(["gen-graph", "--family", "path", "--n", "0"]) == 1


def test_routes_methods(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Shortest, brute-force, and zero-iteration anneal congestion reports."""

    assert main(["routes", "--family", "path", "--n", "3"]) == 0
    report = _stdout_json(capsys)
    assert report["congestion"]["g"] == 7
    assert report["bracket_holds"] is True
    assert report["inequality"]["g"] == 7

    paths_file = tmp_path / "paths.json"
    assert main(["routes", "--family", "path", "--n", "3", "--method", "bruteforce", "--out", str(paths_file)]) == 0
    assert _stdout_json(capsys)["congestion"]["g"] == 7
    assert paths_file.exists()

    report_file = tmp_path / "anneal.json"
    args = ["routes", "--family", "cycle", "--n", "4", "--method", "anneal", "--iters", "0", "--report", str(report_file)]
    assert main(args) == 0
    assert json.loads(report_file.read_text())["congestion"]["g"] == 9


def test_adversary_with_full_verification(tmp_path: Path) -> None:
    """K4, L = 2: the exact minimum 64/59, every check passing, byte-stable output."""

    first, second, summary = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "a.md"
    base = ["adversary", "--family", "complete", "--n", "4", "--L", "2", "--verify", "all"]

    assert main([*base, "--out", str(first), "--report-md", str(summary)]) == 0
    assert main([*base, "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()

    report = json.loads(first.read_text())
    assert report["mode"] == "full"
    assert report["exact"] is True
    assert (report["min_ratio_squared"]["numerator"], report["min_ratio_squared"]["denominator"]) == ("64", "59")
    assert report["witness"]["v"] == 3
    assert report["estimates"]["bound_meets_threshold"] is True
    assert {c["status"] for c in report["checks"]} == {"pass"}
    assert report["provenance"]["g"] == 7
    assert "64/59" in summary.read_text()


def test_adversary_error_exit_codes() -> None:
    """Empty relation and non-square exact mode exit 1; budget overruns exit 2."""

    assert main(["adversary", "--family", "complete", "--n", "2", "--L", "2"]) == 1
    assert main(["adversary", "--family", "complete", "--n", "3", "--L", "1"]) == 1
    assert main(["adversary", "--family", "complete", "--n", "4", "--L", "2", "--budget-labels", "10"]) == 2


def test_adversary_float_fallback(capsys: pytest.CaptureFixture[str]) -> None:
    """Non-square n succeeds with --float and is flagged inexact."""

    assert main(["adversary", "--family", "complete", "--n", "3", "--L", "1", "--float"]) == 0
    report = _stdout_json(capsys)
    assert report["exact"] is False
    assert report["provenance"]["exactness"] == "float-fallback"


def test_adversary_sampled(capsys: pytest.CaptureFixture[str]) -> None:
    """Sampled mode is marked as an upper bound; it cannot be combined with checks."""

    assert main(["adversary", "--family", "complete", "--n", "4", "--L", "2", "--sampled", "50", "--seed", "3"]) == 0
    report = _stdout_json(capsys)
    assert report["mode"] == "sampled"
    assert report["upper_bound"] is True
    assert report["samples"] == 50

    assert main(["adversary", "--family", "complete", "--n", "4", "--sampled", "50", "--verify", "all"]) == 1


@pytest.mark.slow
def test_adversary_sampled_beyond_enumeration_budget(capsys: pytest.CaptureFixture[str]) -> None:
    """n = 16 exceeds the full-enumeration budget; sampling still reports."""

    assert main(["adversary", "--family", "complete", "--n", "16"]) == 2
    capsys.readouterr()

    assert main(["adversary", "--family", "complete", "--n", "16", "--sampled", "100"]) == 0
    report = _stdout_json(capsys)
    assert (report["n"], report["L"], report["g"]) == (16, 4, 31)
    assert report["upper_bound"] is True


def test_solve_save_then_decide(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """A saved instance carries its bit into a later decision run."""

    instance_file = tmp_path / "inst.json"
    args = ["solve", "--family", "cycle", "--n", "4", "--milestones", "1,3", "--b", "1", "--save-instance", str(instance_file)]
    assert main(args) == 0
    steepest = _stdout_json(capsys)
    assert steepest["answer"] == 3
    assert steepest["trace"] == [1, 2, 3]
    assert (steepest["distinct_queries"], steepest["total_queries"]) == (4, 7)

    assert main(["solve", "--instance", str(instance_file), "--algo", "decide"]) == 0
    decision = _stdout_json(capsys)
    assert (decision["answer"], decision["bit"]) == (3, 1)


def test_solve_requires_an_instance_source() -> None:
    """No instance and no milestones is invalid input; so is decide without a bit."""

    assert main(["solve", "--family", "cycle", "--n", "4"]) == 1
    assert main(["solve", "--family", "cycle", "--n", "4", "--milestones", "1,3", "--algo", "decide"]) == 1


def test_scaling_csv(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """An empty n list gives the header only; n = 4 gives one exact row."""

    assert main(["scaling", "--ns"]) == 0
    assert capsys.readouterr().out == ",".join(SCALING_COLUMNS) + "\n"

    target = tmp_path / "scaling.csv"
    assert main(["scaling", "--ns", "4", "--out", str(target)]) == 0
    header, row = target.read_text().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert (values["n"], values["L"], values["g"], values["mode"]) == ("4", "2", "7", "full")
    assert (values["min_ratio_squared_numerator"], values["min_ratio_squared_denominator"]) == ("64", "59")
    assert float(values["ratio"]) >= 1


def test_verify_command(capsys: pytest.CaptureFixture[str]) -> None:
    """Structural checks come first, then the proof-chain suite."""

    assert main(["verify", "--family", "complete", "--n", "4", "--L", "2"]) == 0
    payload = _stdout_json(capsys)

    names = [c["name"] for c in payload["checks"]]
    assert names[:2] == ["unique-minimum", "congestion-bracket"]
    assert "final-chain" in names
    assert payload["passed"] is True


def test_invalid_run_configuration(tmp_path: Path) -> None:
    """L < 1, non-positive budgets, and two graph sources are rejected."""

    assert main(["adversary", "--family", "complete", "--n", "4", "--L", "0"]) == 1
    assert main(["adversary", "--family", "complete", "--n", "4", "--budget-rprime", "0"]) == 1
    assert main(["routes", "--graph", str(tmp_path / "g.json"), "--family", "complete", "--n", "4"]) == 1


def test_malformed_arguments_exit_with_validation_code(capsys: pytest.CaptureFixture[str]) -> None:
    """Unparseable values, unknown flags, and a missing subcommand all exit 1."""

    assert main(["adversary", "--L", "two"]) == 1
    assert main(["gen-graph", "--family", "path", "--n", "x"]) == 1
    assert main(["routes", "--family", "path", "--n", "3", "--no-such-flag"]) == 1
    assert main([]) == 1
    assert "error:" in capsys.readouterr().err


def test_adversary_verify_beyond_square_root_length() -> None:
    """P4 with L = 3 runs the whole suite and exits 0."""

    assert main(["adversary", "--family", "path", "--n", "4", "--L", "3", "--verify", "all"]) == 0
