"""Tests for the command-line interface."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from bohrkit.cli.app import cli
from bohrkit.cli.common import parse_n_range, verification_exit_code
from bohrkit.exceptions import GrammarError
from bohrkit.polynomials import mobius_family
from bohrkit.polynomials.serialization import write_family


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def run_json(runner, tmp_path):
    """Invoke a command with JSON written to a file and return (result, payload)."""

    def invoke(*args: str):
        out = tmp_path / "out.json"
        result = runner.invoke(cli, [*args, "--format", "json", "--output", str(out)])
        payload = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
        return result, payload

    return invoke


class TestNRange:
    """Tests for the --n range grammar."""

    def test_step_one(self):
        """A..B counts up by one."""
        assert parse_n_range("3..6") == [3, 4, 5, 6]

    def test_arithmetic(self):
        """A..B:+K steps by K."""
        assert parse_n_range("1..10:+4") == [1, 5, 9]

    def test_geometric(self):
        """A..B:xK multiplies by K."""
        assert parse_n_range("2..64:x2") == [2, 4, 8, 16, 32, 64]

    @pytest.mark.parametrize("text", ["5..2", "0..3", "1..9:x1", "a..b", "1-9"])
    def test_rejected(self, text):
        """Empty, zero-based, stalling or malformed ranges are rejected."""
        with pytest.raises(GrammarError):
            parse_n_range(text)

    def test_exit_codes(self):
        """Verification failures map to 9 + count, capped at 99."""
        assert verification_exit_code(0) == 0
        assert verification_exit_code(2) == 11
        assert verification_exit_code(500) == 99


class TestBoundsCommand:
    """Tests for bohrkit bounds."""

    def test_thm19_on_space(self, run_json):
        """C/sup‖z‖₁ on the Euclidean ball of C⁴ is 1/4."""
        result, payload = run_json("bounds", "--formula", "thm19", "--space", "lq:q=2:n=4", "--lambda", "2")
        assert result.exit_code == 0, result.output
        assert payload[0]["formula_id"] == "thm19"
        assert payload[0]["value"] == pytest.approx(0.25)

    def test_cor14(self, run_json):
        """cor14 on the polydisc at n = 100."""
        result, payload = run_json("bounds", "--formula", "cor14", "--regime", "p_eq_1", "--q", "inf",
                                   "--n", "100", "--lambda", "2")
        assert result.exit_code == 0, result.output
        assert payload[0]["value"] == pytest.approx(0.07153, abs=1e-5)

    def test_unknown_formula(self, runner):
        """Unknown formula ids are a usage error."""
        result = runner.invoke(cli, ["bounds", "--formula", "thm99"])
        assert result.exit_code == 2

    def test_invalid_lambda(self, runner):
        """λ < 1 exits with the validation code."""
        result = runner.invoke(cli, ["bounds", "--formula", "thm19", "--lambda", "0.5"])
        assert result.exit_code == 2

    def test_csv(self, runner):
        """CSV output has the stable header."""
        result = runner.invoke(cli, ["bounds", "--formula", "cor14", "--regime", "p_eq_1", "--n", "16", "--format", "csv"])
        assert result.exit_code == 0, result.output
        assert "n,formula_id,role,value,certified" in result.output


def by_quantity(payload):
    return {row["quantity"]: row for row in payload}


class TestNormsCommand:
    """Tests for bohrkit norms."""

    def test_euclidean_invariants(self, run_json):
        """ℓ⁴₂ has dual-ones and ℓ₁ embedding norm 2, the other embeddings 1."""
        result, payload = run_json("norms", "--space", "lq:q=2:n=4")
        assert result.exit_code == 0, result.output
        rows = by_quantity(payload)
        assert rows["space"]["value"] == "lq:q=2:n=4"
        assert rows["‖Σe*_k‖ (dual ones)"]["value"] == pytest.approx(2.0)
        assert rows["‖Σe*_k‖ (dual ones)"]["method"] == "closed_form"
        assert rows["‖Id: Z → ℓ1‖"]["value"] == pytest.approx(2.0)
        assert rows["‖Id: ℓ2 → Z‖"]["value"] == pytest.approx(1.0)
        assert rows["‖Id: Z → ℓ∞‖"]["value"] == pytest.approx(1.0)

    def test_target_and_sup_pnorm(self, run_json):
        """--target reports both directions and --p the sup of ‖z‖_p."""
        result, payload = run_json("norms", "--space", "lq:q=2:n=4", "--target", "lq:q=1:n=4", "--p", "1")
        assert result.exit_code == 0, result.output
        rows = by_quantity(payload)
        assert rows["sup ‖z‖_1 on B_Z"]["value"] == pytest.approx(2.0)
        assert rows["‖Id: Z → lq:q=1:n=4‖"]["value"] == pytest.approx(2.0)
        assert rows["‖Id: lq:q=1:n=4 → Z‖"]["value"] == pytest.approx(1.0)

    def test_numeric_method(self, run_json):
        """--method numeric is reported as such and lands on √2 for ℓ²₂."""
        result, payload = run_json("norms", "--space", "lq:q=2:n=2", "--method", "numeric", "--seed", "3")
        assert result.exit_code == 0, result.output
        dual = by_quantity(payload)["‖Σe*_k‖ (dual ones)"]
        assert dual["method"] == "numeric"
        assert dual["value"] == pytest.approx(2 ** 0.5, rel=0.02)

    def test_minkowski_functional_at_point(self, run_json):
        """p_Ω(0.5, 0.5i) on 2·B_{ℓ₁} is 0.5 and the point lies inside."""
        result, payload = run_json("norms", "--space", "lq:q=1:n=2:scale=2", "--point", "0.5,0.5i")
        assert result.exit_code == 0, result.output
        rows = by_quantity(payload)
        assert rows["p_Ω(z)"]["value"] == pytest.approx(0.5)
        assert rows["z ∈ Ω"]["value"] is True

    def test_point_on_boundary(self, run_json):
        """A boundary point has gauge 1 and is outside the open ball."""
        result, payload = run_json("norms", "--space", "lq:q=1:n=2", "--point", "0.5,0.5i")
        assert result.exit_code == 0, result.output
        rows = by_quantity(payload)
        assert rows["p_Ω(z)"]["value"] == pytest.approx(1.0)
        assert rows["z ∈ Ω"]["value"] is False

    def test_unconditional(self, run_json):
        """Lattice norms pass the unconditionality check with zero deviation."""
        result, payload = run_json("norms", "--space", "lorentz:s=2:t=1:n=4", "--unconditional")
        assert result.exit_code == 0, result.output
        row = by_quantity(payload)["unconditional deviation"]
        assert row["method"] == "PASS"
        assert row["value"] == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("space", ["lq:q=2", "sobolev:q=2:n=2", "lq:q=0.5:n=2"])
    def test_malformed_space(self, runner, space):
        """A space that does not parse exits with code 2."""
        assert runner.invoke(cli, ["norms", "--space", space]).exit_code == 2

    def test_point_dimension_mismatch(self, runner):
        """--point must have one entry per coordinate."""
        result = runner.invoke(cli, ["norms", "--space", "lq:q=2:n=3", "--point", "0.5,0.5"])
        assert result.exit_code == 2


class TestEstimateCommand:
    """Tests for bohrkit estimate."""

    def test_mobius_on_disc(self, run_json):
        """The default Möbius grid pins the disc radius near 1/3."""
        result, payload = run_json("estimate", "--family", "mobius", "--lambda", "1", "--tol", "1e-3")
        assert result.exit_code == 0, result.output
        assert 0.3355 <= payload["upper_bracket"] <= 0.337
        assert payload["certified"]

    def test_family_file(self, run_json, tmp_path):
        """A family file is read and bisected."""
        path = tmp_path / "family.txt"
        write_family(path, [mobius_family(0.5)])
        result, payload = run_json("estimate", "--family", f"file:{path}", "--tol", "1e-3")
        assert result.exit_code == 0, result.output
        assert payload["upper_bracket"] == pytest.approx(0.5, abs=1e-3)

    def test_failed_estimate(self, run_json):
        """‖U‖ > λ fails at r = 0 and exits with the numeric code."""
        result, payload = run_json("estimate", "--family", "mobius", "--normU", "2", "--tol", "1e-2")
        assert result.exit_code == 3
        assert payload["failed"]

    def test_mobius_needs_one_variable(self, runner):
        """The Möbius family is rejected in C²."""
        result = runner.invoke(cli, ["estimate", "--space", "lq:q=inf:n=2", "--family", "mobius"])
        assert result.exit_code == 2


class TestVerifyCommand:
    """Tests for bohrkit verify."""

    def test_example11(self, run_json):
        """r = 0.1 finds k = 6 and passes."""
        result, payload = run_json("verify", "--suite", "example11", "--r", "0.1")
        assert result.exit_code == 0, result.output
        (report,) = payload
        assert report["name"] == "example11"
        assert report["pass"]
        assert report["details"]["scans"]["0.1"]["k"] == 6

    def test_failing_scan_exit_code(self, run_json):
        """A ceiling too small for r = 0.01 is one failure: exit 10."""
        result, payload = run_json("verify", "--suite", "example11", "--r", "0.01", "--ceiling", "5")
        assert result.exit_code == 10
        assert not payload[0]["pass"]


class TestSweepCommand:
    """Tests for bohrkit sweep."""

    def test_geometric_sweep(self, runner):
        """Six dimensions give six CSV rows after the header."""
        result = runner.invoke(cli, ["sweep", "--formula", "cor14", "--regime", "p_eq_1", "--n", "2..64:x2"])
        assert result.exit_code == 0, result.output
        lines = result.output.strip().splitlines()
        assert lines[0] == "n,formula_id,role,value,certified"
        assert [line.split(",")[0] for line in lines[1:]] == ["2", "4", "8", "16", "32", "64"]

    def test_empty_range(self, runner):
        """An empty range exits with the validation code."""
        result = runner.invoke(cli, ["sweep", "--formula", "cor14", "--n", "5..2"])
        assert result.exit_code == 2


class TestConfigCommand:
    """Tests for bohrkit config."""

    def test_set_and_show(self, runner):
        """Values set are shown back."""
        assert runner.invoke(cli, ["config", "set", "tolerance", "1e-6"]).exit_code == 0
        assert runner.invoke(cli, ["config", "set", "constants.E1", "0.5"]).exit_code == 0
        result = runner.invoke(cli, ["config", "show"])
        assert result.exit_code == 0
        assert "tolerance: 1e-06" in result.output
        assert "E1 = 0.5" in result.output

    def test_set_nested(self, runner):
        """Sampling fields are addressed with a dotted key."""
        assert runner.invoke(cli, ["config", "set", "sampling.starts", "4"]).exit_code == 0
        assert "'starts': 4" in runner.invoke(cli, ["config", "show"]).output

    @pytest.mark.parametrize("key,value", [("nope", "1"), ("workers", "0"), ("constants.E9", "1"), ("output_format", "xml")])
    def test_set_rejects(self, runner, key, value):
        """Unknown keys and invalid values exit with code 2."""
        assert runner.invoke(cli, ["config", "set", key, value]).exit_code == 2

    def test_version(self, runner):
        """--version prints the package version."""
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "bohrkit" in result.output
