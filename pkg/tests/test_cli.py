import json

import pandas as pd
import pytest
from click.testing import CliRunner

from sced_cmp_platform.app.main import cli
from sced_cmp_platform.app.models.network import Bus, Case, Generator, Line, Load
from sced_cmp_platform.app.storage.case_store import load_case, write_case


@pytest.fixture
def runner():
    return CliRunner()


def _line_starting(output: str, prefix: str) -> str:
    return next(line for line in output.splitlines() if line.startswith(prefix))


def test_strict_run_writes_results(runner, sample_case_path, tmp_path):
    result = runner.invoke(cli, ["run", "--case", str(sample_case_path), "--mode", "strict", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    summary_line = _line_starting(result.output, "mode=strict")
    assert "total_cost=91500.00" in summary_line
    assert "zones=1 / 0 / 0" in summary_line
    assert "scarcity=3" in summary_line

    periods = pd.read_csv(tmp_path / "periods.csv")
    assert list(periods["period"]) == [0, 1, 2]
    lmp = pd.read_csv(tmp_path / "lmp.csv")
    assert list(lmp.columns) == ["period", "1", "2"]
    assert lmp["2"].tolist() == pytest.approx([1000.0] * 3, abs=1e-4)
    assert list(pd.read_csv(tmp_path / "flows.csv").columns) == ["period", "L1"]
    summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
    assert summary["total_cost"] == pytest.approx(91500.0, rel=1e-6)


def test_cmp_run_reports_zones(runner, sample_case_path, tmp_path):
    result = runner.invoke(cli, ["run", "--case", str(sample_case_path), "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    summary_line = _line_starting(result.output, "mode=cmp")
    assert "total_cost=12300.00" in summary_line
    assert "zones=0 / 0.333 / 0.667" in summary_line


def test_missing_case_is_a_usage_error(runner, tmp_path):
    missing = tmp_path / "nope.case"
    result = runner.invoke(cli, ["run", "--case", str(missing)])
    assert result.exit_code == 2
    assert "nope.case" in result.output


def test_malformed_case_exits_with_error(runner, tmp_path):
    bad = tmp_path / "bad.case"
    bad.write_text("[buses]\n1,-1,1\n[lines]\nL1,1,2\n", encoding="utf-8")
    result = runner.invoke(cli, ["run", "--case", str(bad), "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "bad.case:4" in result.output


def test_invalid_hyperparameter(runner, sample_case_path, tmp_path):
    result = runner.invoke(cli, ["run", "--case", str(sample_case_path), "--epsilon", "-1", "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert "epsilon" in result.output


def test_yaml_config_is_applied(runner, sample_case_path, tmp_path):
    config = tmp_path / "dca.yaml"
    config.write_text("dca:\n  epsilon: 0.01\n  lmp_source: resolve\n", encoding="utf-8")
    result = runner.invoke(
        cli, ["run", "--case", str(sample_case_path), "--config", str(config), "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    assert "total_cost=12300.00" in _line_starting(result.output, "mode=cmp")


@pytest.mark.parametrize("body, field", [("gamma_l: 0", "gamma_l"), ("rho: 1", "rho")])
def test_yaml_config_is_validated(runner, sample_case_path, tmp_path, body, field):
    config = tmp_path / "dca.yaml"
    config.write_text(f"dca:\n  {body}\n", encoding="utf-8")
    result = runner.invoke(
        cli, ["run", "--case", str(sample_case_path), "--config", str(config), "--out", str(tmp_path)]
    )
    assert result.exit_code == 2
    assert field in result.output


def test_compare_writes_table(runner, sample_case_path, tmp_path):
    result = runner.invoke(
        cli,
        ["compare", "--case", str(sample_case_path), "--load-scale", "1.0", "--load-scale", "0.5",
         "--jobs", "1", "--out", str(tmp_path)],
    )
    assert result.exit_code == 0, result.output
    table = pd.read_csv(tmp_path / "comparison.csv")
    assert table["load_scale"].tolist() == [0.5, 1.0]
    full = table[table["load_scale"] == 1.0].iloc[0]
    assert full["cost_strict"] == pytest.approx(91500.0, rel=1e-6)
    assert full["cost_cmp"] == pytest.approx(12300.0, rel=1e-5)
    assert full["zones_strict"] == "1 / 0 / 0"
    assert str(full["monitored_bus"]) == "2"
    assert full["scarcity_strict"] == "0-2"
    assert full["scarcity_cmp"] == "1-1"
    light = table[table["load_scale"] == 0.5].iloc[0]
    assert light["cost_decrease_pct"] == pytest.approx(0.0, abs=1e-6)


def test_grid_search_checks_direction(runner, sample_case_path, tmp_path):
    result = runner.invoke(
        cli,
        ["grid-search", "--case", str(sample_case_path), "--epsilons", "0.0001,1",
         "--gammas-l", "0.5", "--gammas-s", "0.5", "--jobs", "1", "--out", str(tmp_path)],
    )
    assert result.exit_code == 0, result.output
    assert "evaluated 2 combinations (0 failed)" in result.output
    assert "holds" in result.output
    assert len(pd.read_csv(tmp_path / "grid.csv")) == 2


def test_grid_search_rejects_bad_lists(runner, sample_case_path, tmp_path):
    result = runner.invoke(
        cli, ["grid-search", "--case", str(sample_case_path), "--epsilons", "a,b", "--out", str(tmp_path)]
    )
    assert result.exit_code == 2


def test_oracle_certifies_the_sample(runner, sample_case_path):
    result = runner.invoke(cli, ["oracle", "--case", str(sample_case_path), "--period", "0"])
    assert result.exit_code == 0, result.output
    assert _line_starting(result.output, "oracle zones:") == "oracle zones: ste"
    gap = float(_line_starting(result.output, "relative gap:").split(":")[1])
    assert abs(gap) <= 1e-6


def test_oracle_rejects_large_networks(runner, tmp_path):
    n = 14
    case = Case(
        buses=tuple(Bus(id=str(k)) for k in range(1, n + 1)),
        lines=tuple(
            Line(id=f"L{k}", from_bus=str(k), to_bus=str(k + 1), x=0.1, zeta_n=10, zeta_l=20, zeta_s=30)
            for k in range(1, n)
        ),
        generators=(Generator(id="G1", bus="1", p_min=0, p_max=50, cost=10),),
        loads=(Load(id="D1", bus=str(n), penalty=1000, demand=(5.0,)),),
        horizon=1,
        dt=1.0,
        t_l=1,
        t_s=1,
    )
    path = write_case(case, tmp_path / "chain.case")
    result = runner.invoke(cli, ["oracle", "--case", str(path)])
    assert result.exit_code == 1
    assert "budget" in result.output


def test_oracle_period_out_of_range(runner, sample_case_path):
    result = runner.invoke(cli, ["oracle", "--case", str(sample_case_path), "--period", "3"])
    assert result.exit_code == 2


def test_synth_then_run(runner, tmp_path):
    result = runner.invoke(
        cli,
        ["synth", "--out", str(tmp_path), "--seed", "1", "--buses", "6", "--lines", "8",
         "--generators", "4", "--renewables", "2", "--periods", "8", "--name", "tiny"],
    )
    assert result.exit_code == 0, result.output
    case = load_case(tmp_path / "tiny.case")
    assert (len(case.buses), len(case.lines), len(case.generators), case.horizon) == (6, 8, 4, 8)

    out = tmp_path / "res"
    result = runner.invoke(cli, ["run", "--case", str(tmp_path / "tiny.case"), "--mode", "strict", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(out / "periods.csv")) == 8


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "cmp-sced" in result.output


def test_non_utf8_case_exits_with_error(runner, tmp_path):
    bad = tmp_path / "latin.case"
    bad.write_bytes(b"[meta]\n# r\xe9seau\n")
    result = runner.invoke(cli, ["run", "--case", str(bad), "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "not valid UTF-8" in result.output
    assert not isinstance(result.exception, UnicodeDecodeError)


def test_aggregate_merges_periods(runner, sample_case_path, tmp_path):
    result = runner.invoke(
        cli,
        ["run", "--case", str(sample_case_path), "--mode", "strict", "--aggregate", "3", "--out", str(tmp_path)],
    )
    assert result.exit_code == 0, result.output
    summary_line = _line_starting(result.output, "mode=strict")
    assert "periods=1 " in summary_line
    # o perioadă de 3 h la aceeași putere costă cât cele trei perioade de 1 h
    assert "total_cost=91500.00" in summary_line
    assert len(pd.read_csv(tmp_path / "periods.csv")) == 1


def test_aggregate_must_divide_the_horizon(runner, sample_case_path, tmp_path):
    result = runner.invoke(cli, ["run", "--case", str(sample_case_path), "--aggregate", "2", "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "not a multiple of 2" in result.output
    result = runner.invoke(cli, ["run", "--case", str(sample_case_path), "--aggregate", "0", "--out", str(tmp_path)])
    assert result.exit_code == 2
