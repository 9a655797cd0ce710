import json
import subprocess
import sys

import pytest

from poisson_env.cli import InstanceError, bundled_instances, load_instance, parse_instance, run_command
from poisson_env.extensions import DEDataPoisson, PoissonOreData
from poisson_env.report import FAIL, PASS, Verdict, emit_report

ALL = [
    "bad_e.dpe", "diag_alpha.dpe", "nonjacobi.pois", "offdiag_alpha.dpe", "ore_single.pois",
    "quantum_plane.dpe", "so3.pois", "symplectic.pois", "trivial.dpe",
]


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestLoading:
    def test_bundled_list(self):
        assert bundled_instances() == ALL

    def test_quantum_plane(self):
        inst = load_instance("quantum_plane.dpe")
        assert inst.base.arity == 0
        assert isinstance(inst.extension, DEDataPoisson)
        assert (inst.extension.q11, inst.extension.q12) == (0, 1)

    def test_ore_section(self):
        inst = load_instance("ore_single.pois")
        assert isinstance(inst.extension, PoissonOreData)

    def test_loads_from_path(self, tmp_path):
        f = tmp_path / "w.pois"
        f.write_text("ring a b  # comment\n\nbracket b a : 2*a\n")
        inst = load_instance(f)
        assert inst.base.bracket(inst.base.gen("a"), inst.base.gen("b")) == -2 * inst.base.gen("a")

    @pytest.mark.parametrize(
        "text, line, fragment",
        [
            ("ring z1 z2\nbracket z1 z1 : 1\n", 2, "diagonal"),
            ("ring z1 z2\nbracket z1 z2 : 1\nbracket z2 z1 : 1\n", 3, "duplicate bracket"),
            ("ring z\ndedata\nend\nore\nend\n", 4, "at most one"),
            ("ring z\nbracket z w : 1\n", 2, "undeclared"),
            ("ring z\ndedata\nalpha 1 3 z : 1\nend\n", 3, "index"),
            ("ring z\ndedata\nnu 1 w : 1\nend\n", 3, "undeclared"),
            ("ring z\ndedata\nq11 : z\nend\n", 3, "rational"),
            ("ring z\nore\nbeta z : 1\nend\n", 3, "unknown ore key"),
            ("ring z\nbracket z\n", 2, "key : value"),
            ("ring z\nfoo\n", 2, "unknown directive"),
            ("bracket a b : 1\n", 1, "'ring' must come first"),
            ("ring z\nore\nalpha z : z^-1\nend\n", 3, "exponent"),
            ("ring x1\n", 1, "reserved"),
            ("ring z\nore\nalpha z : 1\nalpha z : 2\nend\n", 4, "duplicate entry"),
        ],
    )
    def test_errors(self, text, line, fragment):
        with pytest.raises(InstanceError) as exc:
            parse_instance(text)
        assert exc.value.line == line
        assert fragment in str(exc.value)

    @pytest.mark.parametrize("text", ["ring z\ndedata\n", "", "# only a comment\n"])
    def test_structural_errors(self, text):
        with pytest.raises(InstanceError):
            parse_instance(text)


class TestCommands:
    def test_check_jacobi(self, capsys):
        code, out, _ = run(capsys, "check-jacobi", "so3.pois")
        assert code == 0 and out.startswith("CHECK jacobi PASS")
        code, out, _ = run(capsys, "check-jacobi", "nonjacobi.pois")
        assert code == 1 and "[witness: (z1, z2, z3) -> z1 + z2 + z3]" in out

    def test_check_dedata(self, capsys):
        code, out, _ = run(capsys, "check-dedata", "bad_e.dpe")
        assert code == 1 and "CHECK dedata.e FAIL [witness: a=z2, defect -1]" in out
        code, _, err = run(capsys, "check-dedata", "so3.pois")
        assert code == 2 and "no dedata" in err

    def test_nf(self, capsys):
        code, out, _ = run(capsys, "nf", "symplectic.pois", "d(z1) * z2")
        assert (code, out) == (0, "z2 * d(z1) + 1\n")
        code, _, err = run(capsys, "nf", "symplectic.pois", "d(z1) *")
        assert code == 2 and "error" in err

    def test_nf_on_failing_instance(self, capsys):
        code, _, err = run(capsys, "nf", "nonjacobi.pois", "z1")
        assert code == 1 and "jacobi" in err

    def test_verify_theorem(self, capsys):
        code, out, _ = run(capsys, "verify", "quantum_plane.dpe", "--suite", "theorem")
        assert code == 0 and out.startswith("CHECK theorem PASS")

    def test_verify_gate_failure(self, capsys):
        code, out, _ = run(capsys, "verify", "bad_e.dpe")
        assert code == 1 and "dedata.e FAIL" in out

    def test_usage_errors(self, capsys):
        assert run(capsys, "verify", "so3.pois", "--suite", "bogus")[0] == 2
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys, "check-jacobi", "missing.pois")[0] == 2
        assert run(capsys, "verify", "so3.pois", "--suite", "theorem")[0] == 2

    def test_json_and_determinism(self, capsys):
        argv = ["verify", "ore_single.pois", "--samples", "10", "--format", "json", "--no-timing", "--seed", "3"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b
        rows = json.loads(a)
        assert [r["name"] for r in rows] == sorted(r["name"] for r in rows)
        assert all(list(r) == ["name", "status", "witness", "elapsed_ms"] for r in rows)

    def test_list(self, capsys):
        code, out, _ = run(capsys, "list")
        assert code == 0 and out.split() == ALL

    def test_module_entry_point(self):
        r = subprocess.run([sys.executable, "-m", "poisson_env", "nf", "symplectic.pois", "d(z1)*z2"],
                           capture_output=True, text=True)
        assert r.returncode == 0 and r.stdout == "z2 * d(z1) + 1\n"


class TestReports:
    def test_empty(self):
        assert emit_report([], "text") == ""

    def test_json_schema(self):
        out = emit_report([Verdict("jacobi", PASS, elapsed_ms=1.5)], "json")
        assert out.startswith('[{"name":"jacobi","status":"pass","witness":null,"elapsed_ms":')
        assert emit_report([Verdict("jacobi", PASS, elapsed_ms=1.5)], "json", timing=False) == (
            '[{"name":"jacobi","status":"pass","witness":null,"elapsed_ms":0}]\n'
        )

    def test_fail_witness(self):
        v = Verdict("jacobi", FAIL, witness="(z1, z2, z3) -> z1 + z2 + z3")
        assert json.loads(emit_report([v], "json"))[0]["witness"] == "(z1, z2, z3) -> z1 + z2 + z3"
        assert emit_report([v], "text", timing=False) == "CHECK jacobi FAIL [witness: (z1, z2, z3) -> z1 + z2 + z3] (0 ms)\n"

    def test_sorted(self):
        out = emit_report([Verdict("b", PASS), Verdict("a", PASS)], timing=False)
        assert out == "CHECK a PASS (0 ms)\nCHECK b PASS (0 ms)\n"


@pytest.mark.parametrize("name", [n for n in ALL if n not in ("bad_e.dpe", "nonjacobi.pois")])
def test_every_valid_instance_verifies(capsys, name):
    code, out, _ = run(capsys, "verify", name, "--samples", "20", "--no-timing")
    assert code == 0, out
    assert "FAIL" not in out
