import json
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import abelian_triple, parse_expected, so2_block, split_family, sym_poly
from holonomy_forge.catalog import rho_so3_matrices
from holonomy_forge.cli import main
from holonomy_forge.exact import parse_scalar
from holonomy_forge.serialize import algebra_to_json, dumps, family_to_json, metric_from_json
from published_values import G2_U

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def triple_files(tmp_path):
    """An algebra file and a three-member family whose last member needs order 2."""
    fam = split_family(abelian_triple())
    alg = tmp_path / "alg.json"
    famf = tmp_path / "fam.json"
    alg.write_text(dumps(algebra_to_json(fam.h)))
    famf.write_text(dumps(family_to_json(fam)))
    return str(alg), str(famf)


class TestInfo:
    def test_catalog_text(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0
        assert [line for line in out.splitlines() if not line.startswith(" ")] == \
            ["g2", "ikemakhen-so3", "ikemakhen-so3-printed", "spin7"]

    def test_catalog_json(self, capsys):
        code, out, _ = run(capsys, "catalog", "--format", "json")
        assert code == 0 and len(json.loads(out)["entries"]) == 4

    @pytest.mark.parametrize("name,dim", [("g2", 64), ("spin7", 112)])
    def test_pspace(self, capsys, name, dim):
        code, out, _ = run(capsys, "pspace", "--builtin", name)
        assert code == 0 and out == f"{dim}\n"

    def test_pspace_basis(self, capsys, tmp_path):
        alg = tmp_path / "so2.json"
        alg.write_text(dumps(algebra_to_json(abelian_triple())))
        code, out, _ = run(capsys, "pspace", "--algebra", str(alg), "--basis")
        doc = json.loads(out)
        assert code == 0 and doc["dim"] == len(doc["members"])


class TestForge:
    def test_golden(self, capsys):
        code, out, _ = run(capsys, "forge", "--builtin", "g2", "--type", "2")
        assert code == 0
        assert out == (GOLDEN / "g2_type2_metric.json").read_text(encoding="utf-8")

    def test_golden_content(self):
        spec = metric_from_json(json.loads((GOLDEN / "g2_type2_metric.json").read_text()))
        for i, text in G2_U.items():
            assert sym_poly(spec.u[i - 1]) == parse_expected(text, 9)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "m.json"
        code, out, _ = run(capsys, "forge", "--builtin", "g2", "--type", "2", "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_text() == (GOLDEN / "g2_type2_metric.json").read_text()

    def test_latex(self, capsys):
        code, out, _ = run(capsys, "forge", "--builtin", "g2", "--type", "2", "--format", "latex")
        assert code == 0 and out.startswith("\\begin{align*}")

    def test_type4_needs_m(self, capsys, triple_files):
        alg, _ = triple_files
        code, _, err = run(capsys, "forge", "--algebra", alg, "--type", "4")
        assert code == 2 and "--m" in err

    def test_type4_psi_file(self, capsys, tmp_path, triple_files):
        alg, _ = triple_files
        psi = tmp_path / "psi.json"
        psi.write_text(json.dumps({"psi": [["1"], ["0"], ["2"]]}))
        code, out, _ = run(capsys, "forge", "--algebra", alg, "--type", "4", "--m", "5",
                           "--psi", str(psi))
        assert code == 2  # E56 is not inside so(5)
        alg4 = tmp_path / "so2.json"
        alg4.write_text(dumps(algebra_to_json(so2_block(3))))
        psi.write_text(json.dumps({"psi": [["3/2"]]}))
        code, out, _ = run(capsys, "forge", "--algebra", str(alg4), "--type", "4", "--m", "2",
                           "--psi", str(psi))
        assert code == 0 and json.loads(out)["target"]["psi"] == [["3/2"]]

    def test_phi_shape_checked(self, capsys, tmp_path, triple_files):
        alg, _ = triple_files
        phi = tmp_path / "phi.json"
        phi.write_text(json.dumps({"phi": [["1"], ["0"], ["2"]]}))
        code, _, _ = run(capsys, "forge", "--algebra", alg, "--type", "3", "--phi", str(phi))
        assert code == 2

    def test_type3_phi_file(self, capsys, tmp_path, triple_files):
        alg, _ = triple_files
        phi = tmp_path / "phi.json"
        phi.write_text(json.dumps(["1", "-1/2", "0"]))
        code, out, _ = run(capsys, "forge", "--algebra", alg, "--type", "3", "--phi", str(phi))
        doc = json.loads(out)
        assert code == 0 and doc["target"]["phi"] == ["1", "-1/2", "0"]

    def test_missing_source(self, capsys):
        code, _, err = run(capsys, "forge", "--type", "2")
        assert code == 2 and "--builtin" in err

    def test_unknown_builtin(self, capsys):
        code, _, err = run(capsys, "forge", "--builtin", "e8", "--type", "2")
        assert code == 2 and "unknown builtin" in err

    def test_bad_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, _ = run(capsys, "forge", "--algebra", str(bad), "--type", "2")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, "forge", "--algebra", "/nonexistent.json", "--type", "2")
        assert code == 2

    def test_argparse_error(self, capsys):
        code, _, _ = run(capsys, "forge", "--type", "7")
        assert code == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0


class TestCurvature:
    def test_ikemakhen_anchor(self, capsys):
        code, out, _ = run(capsys, "curvature", "--builtin", "ikemakhen-so3", "--type", "2",
                           "--index", "*,*,3,6", "--at-origin")
        assert code == 0
        doc = json.loads(out)
        a1 = rho_so3_matrices()[0]
        got = {}
        for comp in doc["components"]:
            b, c = comp["index"][:2]
            assert comp["value"][0]["exps"] == [0] * 7
            got[(b, c)] = parse_scalar(comp["value"][0]["coeff"])
        for i in range(5):
            for j in range(5):
                assert got.get((i + 1, j + 1), 0) == a1[i, j]

    def test_christoffel_latex(self, capsys):
        code, out, _ = run(capsys, "curvature", "--builtin", "g2", "--type", "2", "--christoffel",
                           "--index", "1,2,*", "--format", "latex")
        assert code == 0 and "\\Gamma^{1}_{2,8}" in out
        code, _, err = run(capsys, "curvature", "--builtin", "g2", "--type", "2", "--christoffel",
                           "--index", "1,2,*,*")
        assert code == 2 and "b,c,d" in err

    def test_derivative_order(self, capsys, tmp_path):
        metric = tmp_path / "m.json"
        assert main(["forge", "--builtin", "g2", "--type", "2", "--out", str(metric)]) == 0
        code, out, _ = run(capsys, "curvature", "--metric", str(metric), "--order", "1",
                           "--index", "0,*,*,*")
        doc = json.loads(out)
        assert code == 0 and doc["order"] == 1 and doc["dirs"] == [8]

    def test_bad_dirs(self, capsys):
        code, _, _ = run(capsys, "curvature", "--builtin", "g2", "--type", "2", "--order", "2",
                         "--dirs", "8")
        assert code == 2

    def test_bad_index(self, capsys):
        code, _, err = run(capsys, "curvature", "--builtin", "g2", "--type", "2", "--index", "0,1,99,*")
        assert code == 2 and "out of range" in err


class TestVerify:
    def test_g2_equal(self, capsys):
        code, out, err = run(capsys, "verify", "--builtin", "g2", "--type", "2")
        doc = json.loads(out)
        assert code == 0 and doc["verdict"] == "equal" and doc["dim"] == 21
        assert "verdict = equal" in err

    def test_metric_file(self, capsys):
        code, out, _ = run(capsys, "verify", "--metric", str(GOLDEN / "g2_type2_metric.json"))
        assert code == 0 and json.loads(out)["verdict"] == "equal"

    def test_short_generation_exits_one(self, capsys, triple_files):
        alg, fam = triple_files
        code, out, _ = run(capsys, "verify", "--algebra", alg, "--family", fam, "--type", "2",
                           "--max-order", "1")
        doc = json.loads(out)
        assert code == 1 and doc["verdict"] == "proper-subalgebra" and "witness" in doc
        code, _, _ = run(capsys, "verify", "--algebra", alg, "--family", fam, "--type", "2")
        assert code == 0

    def test_altered_target_exits_one(self, capsys, tmp_path):
        doc = json.loads((GOLDEN / "g2_type2_metric.json").read_text())
        doc["target"]["type"] = 1
        metric = tmp_path / "m.json"
        metric.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", "--metric", str(metric))
        assert code == 1 and json.loads(out)["verdict"] == "proper-subalgebra"

    def test_holonomy_always_zero(self, capsys, triple_files):
        alg, fam = triple_files
        code, out, _ = run(capsys, "holonomy", "--algebra", alg, "--family", fam, "--type", "2",
                           "--max-order", "1", "--format", "latex")
        assert code == 0 and "proper-subalgebra" in out

    def test_type4_full_directions(self, capsys, tmp_path):
        alg = tmp_path / "so2.json"
        alg.write_text(dumps(algebra_to_json(so2_block(3))))
        code, out, _ = run(capsys, "verify", "--algebra", str(alg), "--type", "4", "--m", "2",
                           "--family", "full", "--max-order", "2", "--full-directions")
        doc = json.loads(out)
        assert code == 0 and doc["full_directions"] and doc["classified"]["m"] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "holonomy_forge", "pspace", "--builtin", "g2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "64\n"


def test_runtime_has_no_test_dependencies():
    proc = subprocess.run([sys.executable, "-c",
                           "import sys, holonomy_forge.cli; print('sympy' in sys.modules)"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "False"
