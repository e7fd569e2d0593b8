import json

import pytest

from trispline import io
from trispline.cli import main
from trispline.continuity import enforce_continuity
from trispline.demo import SAMPLE_DATA
from trispline.errors import FormatError
from trispline.fitting import assemble_design, fit

SQUARE_JSON = {
    "format_version": 1,
    "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]],
    "triangles": [[0, 1, 2], [0, 2, 3]],
}


@pytest.fixture
def files(tmp_path):
    mesh = tmp_path / "square.json"
    mesh.write_text(json.dumps(SQUARE_JSON))
    data = tmp_path / "data.csv"
    data.write_text("x,y,z\n" + "".join(f"{x},{y},{z:g}\n" for x, y, z in SAMPLE_DATA))
    return tmp_path, mesh, data


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestFiles:
    def test_mesh_round_trip(self, square):
        text = io.dump_mesh(square)
        assert io.load_mesh(text) == square
        assert io.mesh_hash(io.load_mesh(text)) == io.mesh_hash(square)

    def test_mesh_accepts_decimal_and_fraction_strings(self):
        doc = {"format_version": 1, "vertices": [["0", "0"], ["1/3", 0], [0, 0.5]], "triangles": [[0, 1, 2]]}
        mesh = io.load_mesh(json.dumps(doc))
        assert mesh.vertices[1].x == pytest.approx(1 / 3) and str(mesh.vertices[2].y) == "1/2"

    def test_bad_version(self):
        with pytest.raises(FormatError):
            io.load_mesh(json.dumps({**SQUARE_JSON, "format_version": 2}))

    def test_not_json(self):
        with pytest.raises(FormatError):
            io.load_mesh("{nope")

    def test_basis_round_trip(self, square):
        basis = enforce_continuity(square, 2, 1)
        again = io.load_basis(io.dump_basis(basis))
        assert again.columns == basis.columns
        assert again.continuity_order == 1
        assert io.basis_hash(again) != io.basis_hash(enforce_continuity(square, 2, 0))

    def test_basis_mesh_hash_checked(self, square):
        doc = io.basis_to_dict(enforce_continuity(square, 2, 1))
        doc["mesh"]["vertices"][1] = ["2", "0"]
        with pytest.raises(FormatError):
            io.load_basis(json.dumps(doc))

    def test_model_round_trip(self, square, square_data):
        basis = enforce_continuity(square, 2, 1)
        model = fit(assemble_design(basis, square_data.points), square_data.z)
        again = io.load_model(io.dump_model(model), basis)
        assert (again.gamma == model.gamma).all()
        with pytest.raises(FormatError):
            io.load_model(io.dump_model(model), enforce_continuity(square, 2, 0))

    def test_points(self):
        rows = io.read_points("x,y,z\n0.2,0.1,1\n", require_z=True)
        assert rows == [("0.2", "0.1", 1.0)]
        assert io.read_points("x,y\n1/3,0\n", require_z=False) == [("1/3", "0", None)]
        with pytest.raises(FormatError):
            io.read_points("x,y\n0,0\n", require_z=True)
        with pytest.raises(FormatError):
            io.read_points("x,y,z\n0,abc,1\n")


class TestCli:
    def test_basis_summary(self, files, capsys):
        tmp, mesh, _ = files
        code, out, err = run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 1,
                             "--out", tmp / "b.json")
        assert code == 0
        assert "columns: 12 -> 9 -> 7" in out
        assert len(json.loads((tmp / "b.json").read_text())["columns"]) == 7

    def test_basis_to_stdout(self, files, capsys):
        _, mesh, _ = files
        code, out, err = run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 0)
        assert code == 0
        assert json.loads(out)["column_counts"] == [12, 9]
        assert "columns: 12 -> 9" in err

    def test_basis_output_is_deterministic(self, files, capsys):
        tmp, mesh, _ = files
        for name in ("one.json", "two.json"):
            run(capsys, "basis", "--mesh", mesh, "--degree", 3, "--smoothness", 2, "--out", tmp / name)
        assert (tmp / "one.json").read_bytes() == (tmp / "two.json").read_bytes()

    def test_order_above_degree(self, files, capsys):
        _, mesh, _ = files
        code, _, err = run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 3)
        assert code == 2 and "usage" in err

    def test_single_triangle(self, tmp_path, capsys):
        mesh = tmp_path / "one.json"
        mesh.write_text(json.dumps({"format_version": 1, "vertices": [[0, 0], [1, 0], [0, 1]],
                                    "triangles": [[0, 1, 2]]}))
        code, out, err = run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 1)
        assert code == 0 and len(json.loads(out)["columns"]) == 6

    def test_bad_mesh(self, tmp_path, capsys):
        mesh = tmp_path / "flat.json"
        mesh.write_text(json.dumps({"format_version": 1, "vertices": [[0, 0], [1, 1], [2, 2]],
                                    "triangles": [[0, 1, 2]]}))
        code, _, err = run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 0)
        assert code == 2 and "degeneracy" in err
        code, _, err = run(capsys, "basis", "--mesh", tmp_path / "missing.json", "--degree", 2, "--smoothness", 0)
        assert code == 2 and "mesh parse" in err

    def test_transversal_on_edge(self, files, capsys):
        _, mesh, _ = files
        code, _, err = run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 1,
                           "--transversal", "0=0.5,0.5")
        assert code == 2 and "transversal" in err

    def test_transversal_override(self, files, capsys):
        _, mesh, _ = files
        code, out, _ = run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 1,
                           "--transversal", "0=0,1")
        assert code == 0 and len(json.loads(out)["columns"]) == 7

    def test_check(self, files, capsys):
        tmp, mesh, _ = files
        for r in (0, 1):
            run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", r, "--out", tmp / f"c{r}.json")
        code, out, _ = run(capsys, "check", "--basis", tmp / "c1.json")
        assert code == 0 and out.strip().endswith("PASS")
        for n in (2, 50):
            assert run(capsys, "check", "--basis", tmp / "c1.json", "--samples", n)[0] == 0
            assert run(capsys, "check", "--basis", tmp / "c0.json", "--smoothness", 1, "--samples", n)[0] == 1
        code, out, _ = run(capsys, "check", "--basis", tmp / "c1.json", "--float", "--tol", "1e-12")
        assert code == 0 and "float" in out

    def test_check_bad_samples(self, files, capsys):
        tmp, mesh, _ = files
        run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 1, "--out", tmp / "b.json")
        assert run(capsys, "check", "--basis", tmp / "b.json", "--samples", 1)[0] == 2

    def test_fit_and_predict(self, files, capsys):
        tmp, mesh, data = files
        run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 1, "--out", tmp / "b.json")
        code, out, _ = run(capsys, "fit", "--basis", tmp / "b.json", "--data", data, "--out", tmp / "m.json")
        assert code == 0 and "rank: 5" in out
        model = json.loads((tmp / "m.json").read_text())
        assert model["rank"] == 5 and float(model["residual_norm"]) < 1e-8

        query = tmp / "q.csv"
        query.write_text("x,y\n0.2,0.1\n0.7,0.8\n")
        code, out, _ = run(capsys, "predict", "--basis", tmp / "b.json", "--model", tmp / "m.json", "--data", query)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,y,zhat"
        assert float(lines[1].split(",")[2]) == pytest.approx(1.0, abs=1e-6)
        assert float(lines[2].split(",")[2]) == pytest.approx(4.0, abs=1e-6)

        query.write_text("x,y\n0.2,0.1\n5,5\n")
        code, _, err = run(capsys, "predict", "--basis", tmp / "b.json", "--model", tmp / "m.json", "--data", query)
        assert code == 2 and "point location" in err and "line 3" in err

    def test_fit_bad_data(self, files, capsys):
        tmp, mesh, _ = files
        run(capsys, "basis", "--mesh", mesh, "--degree", 2, "--smoothness", 1, "--out", tmp / "b.json")
        bad = tmp / "bad.csv"
        bad.write_text("a,b,c\n1,2,3\n")
        code, _, err = run(capsys, "fit", "--basis", tmp / "b.json", "--data", bad)
        assert code == 2 and "data parse" in err

    def test_demo(self, capsys):
        code, out, _ = run(capsys, "demo")
        assert code == 0
        assert "columns: 12 -> 9 -> 7" in out
        assert "(0.2, 0.7) in T2 -> (0.3, 0.2, 0.5)" in out
        assert "all embedded checks passed" in out
        assert "MISMATCH" not in out

    def test_module_entry_point(self):
        import subprocess
        import sys

        proc = subprocess.run([sys.executable, "-m", "trispline", "demo"], capture_output=True, text=True)
        assert proc.returncode == 0
