"""Tests for the command-line front end and JSON serialization."""
import json

import pytest

from mirror_mf.algebra.mf import mf_from_pair
from mirror_mf.algebra.ring import LaurentPolynomial, T
from mirror_mf.api.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, attach_list_values, main
from mirror_mf.services.serialization import dump, mf_to_model, parse_mf_json
from mirror_mf.services.strips import enumerate_weighted, enumerate_weighted_bulk, family_to_mf
from mirror_mf.services.toric import StackyLine


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestPotential:
    """The potential command."""

    def test_cp1(self, capsys):
        """cp1 prints lambda = 2T^(1/2)."""
        code, out = run(capsys, "potential", "cp1")
        assert code == EXIT_OK
        assert "λ = 2*T^(1/2)" in out

    def test_weighted(self, capsys):
        """P(3,1) prints the reduced value 4 alpha^3 T and its relation."""
        code, out = run(capsys, "potential", "weighted", "3", "1")
        assert code == EXIT_OK
        assert "relation: 3*α^4 = 1" in out
        assert "λ = 4*α^3*T" in out

    def test_q_root_convention(self, capsys):
        """With q = T^(1/3) the value reads 4 alpha^3 q^3."""
        code, out = run(capsys, "potential", "weighted", "3", "1", "--q-convention", "q-root")
        assert code == EXIT_OK
        assert "λ = 4*α^3*q^3" in out

    @pytest.mark.parametrize("name", ["q-square", "section3"])
    def test_q_square_convention_on_cp1(self, capsys, name):
        """The projective line's own chart prints lambda = 2 sqrt(q)."""
        code, out = run(capsys, "potential", "cp1", "--q-convention", name)
        assert code == EXIT_OK
        assert "λ = 2*q^(1/2)" in out

    def test_q_square_convention_on_weighted_line(self, capsys):
        """On P(1,1) q = T^2, so 2 alpha T reads 2 alpha sqrt(q)."""
        code, out = run(capsys, "potential", "weighted", "1", "1", "--q-convention", "section3")
        assert code == EXIT_OK
        assert "λ = 2*α*q^(1/2)" in out

    def test_section6_alias(self, capsys):
        """section6 is q = T^(1/m)."""
        code, out = run(capsys, "potential", "weighted", "3", "1", "--q-convention", "section6")
        assert code == EXIT_OK
        assert "λ = 4*α^3*q^3" in out

    def test_bulk_outside_lambda_plus(self, capsys):
        """At u = 1/3 the bulk parameter is reported outside Lambda_+."""
        code, out = run(capsys, "potential", "teardrop-bulk", "1/3")
        assert code == EXIT_OK
        assert "c in Λ+: false" in out

    def test_bulk_all_roots(self, capsys):
        """--all-roots lists four critical points."""
        code, out = run(capsys, "potential", "teardrop-bulk", "1/6", "--all-roots")
        assert code == EXIT_OK
        assert out.count("root: ") == 4

    def test_json(self, capsys):
        """--json emits a critical-data document."""
        code, out = run(capsys, "potential", "weighted", "2", "3", "--json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["relation"] == {"kind": "quotient", "m": 2, "n": 3}

    @pytest.mark.parametrize("argv", [("weighted", "0", "1"), ("weighted", "3"), ("weighted", "a", "b"), ("cp1", "1")])
    def test_bad_input(self, capsys, argv):
        """Invalid parameters exit with code 2."""
        code, _ = run(capsys, "potential", *argv)
        assert code == EXIT_INPUT


class TestFactorize:
    """The factorize command."""

    @pytest.mark.parametrize("argv", [("cp1",), ("weighted", "3", "1"), ("teardrop-bulk", "1/6"), ("antidiagonal",)])
    def test_verified(self, capsys, argv):
        """Every family verifies."""
        code, out = run(capsys, "factorize", *argv)
        assert code == EXIT_OK
        assert "verified: true" in out

    def test_printed_bound_fails(self, capsys):
        """The uncorrected sum reports residuals and exits 1."""
        code, out = run(capsys, "factorize", "weighted", "3", "1", "--printed-bound")
        assert code == EXIT_FAILED
        assert "verified: false" in out
        assert "residual FG[0][0]" in out
        assert "residual GF[0][0]" in out

    def test_bulk_outside_range(self, capsys):
        """u = 1/3 is rejected as input."""
        code, _ = run(capsys, "factorize", "teardrop-bulk", "1/3")
        assert code == EXIT_INPUT

    def test_printed_bound_needs_weighted(self, capsys):
        """--printed-bound only applies to weighted lines."""
        code, _ = run(capsys, "factorize", "cp1", "--printed-bound")
        assert code == EXIT_INPUT

    def test_deterministic(self, capsys):
        """Two runs print identical text."""
        _, first = run(capsys, "factorize", "weighted", "2", "3", "--json")
        _, second = run(capsys, "factorize", "weighted", "2", "3", "--json")
        assert first == second

    def test_json_shape(self, capsys):
        """The JSON output carries the family strips with from/to keys."""
        code, out = run(capsys, "factorize", "cp1", "--json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["verified"] is True
        assert data["family"]["geometry"] == "cp1"
        assert {"from", "to"} <= set(data["family"]["strips"][0])


class TestVerify:
    """The verify command and JSON round trips."""

    def test_round_trip_is_stable(self):
        """Serializing a parsed factorization reproduces the same text."""
        for M in (
            family_to_mf(enumerate_weighted(StackyLine(3, 1))),
            family_to_mf(enumerate_weighted_bulk("1/6", free_alpha=True)),
        ):
            text = dump(mf_to_model(M))
            assert dump(mf_to_model(parse_mf_json(text))) == text

    def test_verify_file(self, capsys, tmp_path):
        """A factorize output verifies when read back."""
        _, out = run(capsys, "factorize", "weighted", "2", "3", "--json")
        path = tmp_path / "mf.json"
        path.write_text(json.dumps(json.loads(out)["factorization"]), encoding="utf-8")
        code, report = run(capsys, "verify", str(path))
        assert code == EXIT_OK
        assert json.loads(report)["verified"] is True

    def test_verify_trivial_split(self, capsys, tmp_path):
        """F = 1, G = W - lambda verifies from a file."""
        z = LaurentPolynomial.variable("z", ("z",))
        W = z ** 2 + T(3) * z ** -1
        lam = T(1, 5)
        M = mf_from_pair(LaurentPolynomial.constant(1, ("z",)), W - lam, W, lam, "trivial")
        path = tmp_path / "trivial.json"
        path.write_text(dump(mf_to_model(M)), encoding="utf-8")
        code, report = run(capsys, "verify", str(path))
        assert code == EXIT_OK
        assert json.loads(report)["verified"] is True

    def test_verify_broken_file(self, capsys, tmp_path):
        """A tampered lambda fails with residuals."""
        _, out = run(capsys, "factorize", "cp1", "--json")
        model = json.loads(out)["factorization"]
        model["lam"] = []
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(model), encoding="utf-8")
        code, report = run(capsys, "verify", str(path))
        assert code == EXIT_FAILED
        assert len(json.loads(report)["residuals"]) == 2

    def test_malformed_json(self, capsys, tmp_path):
        """Unparseable input exits 2."""
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        code, _ = run(capsys, "verify", str(path))
        assert code == EXIT_INPUT

    def test_missing_file(self, capsys, tmp_path):
        """A missing path exits 2."""
        code, _ = run(capsys, "verify", str(tmp_path / "absent.json"))
        assert code == EXIT_INPUT


class TestOtherCommands:
    """tensor, floer-torus, equivalence and strip-quadratic."""

    def test_tensor(self, capsys):
        """The cp1 pair relates to the central fiber only by reversing the grading."""
        code, out = run(capsys, "tensor")
        assert code == EXIT_OK
        assert "central fiber matrix equals cp1(z) ⊗ cp1(w)[1]: true" in out
        assert "witness: grading-reversing" in out

    def test_tensor_needs_both(self, capsys, tmp_path):
        """A single factor is an input error."""
        code, _ = run(capsys, "tensor", str(tmp_path / "one.json"))
        assert code == EXIT_INPUT

    def test_floer_torus_acyclic(self, capsys):
        """Opposite holonomies on T^2 give zero homology."""
        code, out = run(capsys, "floer-torus", "2", "--h0=1,-1", "--h1=-1,1", "--check-iso")
        assert code == EXIT_OK
        assert "ranks: 0,0,0" in out
        assert "total: 0" in out
        assert "Ψ∂ = ∂̃Ψ: true" in out

    def test_floer_torus_separate_negative_values(self, capsys):
        """Holonomy lists starting with a minus sign may follow the option as a separate word."""
        code, out = run(capsys, "floer-torus", "2", "--h0", "1,-1", "--h1", "-1,1")
        assert code == EXIT_OK
        assert "ranks: 0,0,0" in out

    def test_attach_list_values(self):
        """Only --h0 and --h1 are joined to their values."""
        argv = ["floer-torus", "2", "--h0", "-i,1", "--h1", "-1,1", "--json"]
        assert attach_list_values(argv) == ["floer-torus", "2", "--h0=-i,1", "--h1=-1,1", "--json"]

    def test_floer_torus_equal_bundles(self, capsys):
        """Equal bundles give ranks 1, 3, 3, 1."""
        code, out = run(capsys, "floer-torus", "3", "--h0=i,1,1", "--h1=i,1,1", "--json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["ranks"] == [1, 3, 3, 1]
        assert data["total"] == 8

    def test_floer_torus_zero_holonomy(self, capsys):
        """A zero holonomy exits 2."""
        code, _ = run(capsys, "floer-torus", "2", "--h0=0,1", "--h1=1,1")
        assert code == EXIT_INPUT

    @pytest.mark.parametrize("sign", ["1", "-1"])
    def test_equivalence(self, capsys, sign):
        """Both composites are the signed identity."""
        code, out = run(capsys, "equivalence", "--sign", sign, "--l", "1/2")
        assert code == EXIT_OK
        assert "verified: true" in out

    def test_equivalence_json(self, capsys):
        """--json reports the signs and the area parameter."""
        code, out = run(capsys, "equivalence", "--sign-t", "-1", "--json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert (data["eps_a"], data["eps_t"], data["l"]) == (1, -1, [1, 1])

    def test_strip_quadratic(self, capsys):
        """t1 = -1/2 at theta = pi/2 has a real pair of roots."""
        code, out = run(capsys, "strip-quadratic", "--t1=-0.5", "--t2-angle=1.5707963267948966")
        assert code == EXIT_OK
        assert "classification: real-pair" in out

    def test_strip_quadratic_scan(self, capsys):
        """--scan prints a CSV header and one row per grid point."""
        code, out = run(capsys, "strip-quadratic", "--scan", "--t1-steps", "2", "--angle-steps", "3")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "t1,theta,classification,in_disc"
        assert len(lines) == 7

    def test_strip_quadratic_needs_inputs(self, capsys):
        """Without --scan both parameters are required."""
        code, _ = run(capsys, "strip-quadratic", "--t1=0.2")
        assert code == EXIT_INPUT

    def test_strip_quadratic_domain(self, capsys):
        """t1 outside (-1, 1) exits 2."""
        code, _ = run(capsys, "strip-quadratic", "--t1=1.5", "--t2-angle=1.0")
        assert code == EXIT_INPUT

    def test_unknown_geometry(self):
        """argparse rejects unknown geometries with exit status 2."""
        with pytest.raises(SystemExit) as info:
            main(["potential", "torus"])
        assert info.value.code == 2
