import json

import pytest
from click.testing import CliRunner

from src.core.models.report import ClassificationModel
from src.platforms.cli import cli

POLAR_FIRST = "y'''' + 15*x^3*y'^7 + 45*x*y'^5 + 48*y'^3/x + 24*y'/x^3"


@pytest.fixture
def runner():
    return CliRunner()


class TestClassify:
    def test_linearizable(self, runner):
        result = runner.invoke(cli, ["classify", POLAR_FIRST])
        assert result.exit_code == 0
        assert "verdict:    linearizable" in result.output
        assert "[fourth21] linearizable" in result.output

    def test_no_class_matches(self, runner):
        result = runner.invoke(cli, ["classify", "y'''' + y'*y''*y'''"])
        assert result.exit_code == 1
        assert "inconclusive" in result.output

    def test_syntax_error_points_at_column(self, runner):
        result = runner.invoke(cli, ["classify", "y'' +"])
        assert result.exit_code == 2
        assert "error:" in result.output
        assert "column 6: found end of input" in result.output
        assert "     ^" in result.output

    def test_bad_parameter_name(self, runner):
        result = runner.invoke(cli, ["classify", "y''", "--params", "x"])
        assert result.exit_code == 2

    def test_reads_file(self, runner, tmp_path):
        source = tmp_path / "equation.txt"
        source.write_text(POLAR_FIRST + "\n", encoding="utf-8")
        result = runner.invoke(cli, ["classify", str(source), "--no-audit"])
        assert result.exit_code == 0

    def test_json_report(self, runner):
        result = runner.invoke(
            cli, ["classify", "y'' - 2*y'^2/y + k*y'/2 + l*y", "--params", "k,l", "--format", "json"],
        )
        assert result.exit_code == 0
        model = ClassificationModel.model_validate(json.loads(result.output))
        assert model.verdict == "linearizable"
        assert model.candidates[0].form == "root8"
        assert model.candidates[0].criteria == ["0", "0"]
        assert model.to_json() == result.output.rstrip("\n")


class TestGenerate:
    def test_json_coefficients(self, runner):
        result = runner.invoke(cli, ["generate", "--c", "x", "--h", "2/x", "--class", "fourth21", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["class"] == "fourth21"
        assert data["coefficients"]["P7"] == "15*x^3"

    def test_zero_root(self, runner):
        result = runner.invoke(cli, ["generate", "--class", "fourth18"])
        assert result.exit_code == 0
        assert result.output.strip() == "y''''"

    def test_unknown_class(self, runner):
        result = runner.invoke(cli, ["generate", "--class", "fifth1"])
        assert result.exit_code == 2

    def test_output_classifies(self, runner):
        generated = runner.invoke(cli, ["generate", "--c", "x", "--h", "2/x", "--class", "fourth30"])
        assert generated.exit_code == 0
        result = runner.invoke(cli, ["classify", "-"], input=generated.output)
        assert result.exit_code == 0


class TestGeometryCommands:
    def test_criteria(self, runner):
        result = runner.invoke(cli, ["criteria", "--c", "x", "--h", "2/x"])
        assert result.exit_code == 0
        assert "criteria: (0, 0)" in result.output

    def test_criteria_fail(self, runner):
        result = runner.invoke(cli, ["criteria", "--c", "x", "--h", "2/x", "--d", "y^3"])
        assert result.exit_code == 1
        assert "linearizable: false" in result.output

    def test_curvature(self, runner):
        result = runner.invoke(cli, ["curvature", "--c", "x", "--e=-1/x"])
        assert result.exit_code == 0
        assert "flat: true" in result.output

    def test_gauge(self, runner):
        result = runner.invoke(cli, ["gauge", "--c", "x", "--h", "2/x"])
        assert result.exit_code == 0
        assert "gauge: b = 0, e = -1/x" in result.output

    def test_gauge_override_rejected(self, runner):
        result = runner.invoke(cli, ["gauge", "--c", "x", "--h", "2/x", "--gauge", "b=0,e=0"])
        assert result.exit_code == 1
        assert "gauge not found" in result.output

    def test_metric(self, runner):
        result = runner.invoke(
            cli, ["metric", "--c", "x", "--e=-1/x", "--path", "2,1", "--check", "--format", "json"],
        )
        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["final"]["r"] == pytest.approx(4.0, abs=1e-8)
        assert data["independent"] is True

    def test_metric_needs_parameter_values(self, runner):
        result = runner.invoke(cli, ["metric", "--a", "k", "--params", "k", "--path", "2,1"])
        assert result.exit_code == 2


class TestExactAndCorpus:
    def test_exact(self, runner):
        result = runner.invoke(cli, ["exact", "y'''*y' + y''^2"])
        assert result.exit_code == 0
        assert "total derivative of: y''*y'" in result.output

    def test_not_exact(self, runner):
        result = runner.invoke(cli, ["exact", POLAR_FIRST])
        assert result.exit_code == 1

    def test_selected_cases(self, runner):
        result = runner.invoke(cli, ["corpus", "--cases", "6,7"])
        assert result.exit_code == 0
        assert "2/2 verified" in result.output

    def test_perturbation_fails_one_case(self, runner):
        result = runner.invoke(cli, ["corpus", "--cases", "4", "--perturb", "4:d=y^3"])
        assert result.exit_code == 1
        assert "criteria residuals nonzero" in result.output

    def test_bad_perturbation(self, runner):
        result = runner.invoke(cli, ["corpus", "--cases", "4", "--perturb", "4:z=1"])
        assert result.exit_code == 2

    @pytest.mark.slow
    def test_full_corpus(self, runner):
        result = runner.invoke(cli, ["corpus"])
        assert result.exit_code == 0
        assert result.output.strip().endswith("12/12 verified")
