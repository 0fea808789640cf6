import json

from conftest import SEXTIC_COEFFS
from formred.cli import main, sqrt_display
from formred.hyperbolic import PointH2, in_fundamental_domain

SEXTIC_ARG = ",".join(str(c) for c in SEXTIC_COEFFS)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestReduceCommand:
    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "reduce", "--method", "centroid", "--coeffs", SEXTIC_ARG)
        assert code == 0
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        assert payload["matrix"] == [[1, 4], [0, 1]]
        assert payload["height_after"] == "12740"

    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "reduce", "--coeffs", SEXTIC_ARG, "--format", "text")
        assert code == 0
        assert "43940 -> 12740" in out
        assert "[[1,4],[0,1]]" in out

    def test_both_methods(self, capsys):
        code, out, _ = run(capsys, "reduce", "--coeffs", SEXTIC_ARG, "--method", "both")
        assert code == 0
        payload = json.loads(out)
        assert payload["same_reduced_form"] is True

    def test_identity_reduction(self, capsys):
        code, out, _ = run(capsys, "reduce", "--coeffs", "1,0,1")
        assert code == 0
        assert json.loads(out)["matrix"] == [[1, 0], [0, 1]]

    def test_real_root_exit_code(self, capsys):
        code, _, err = run(capsys, "reduce", "--coeffs", "1,0,-1")
        assert code == 2
        assert "real" in err

    def test_usage_error_exit_code(self, capsys):
        code, _, _ = run(capsys, "reduce", "--coeffs", "1,0,1", "--method", "nope")
        assert code == 1

    def test_parse_error_exit_code(self, capsys):
        code, _, err = run(capsys, "reduce", "--coeffs", "garbage!!")
        assert code == 1
        assert "error" in err


class TestZeroCenterJulia:
    def test_zero_both_methods(self, capsys):
        code, out, _ = run(capsys, "zero", "--coeffs", SEXTIC_ARG)
        assert code == 0
        assert "centroid:" in out and "julia:" in out
        assert "t = 230/61" in out
        assert "gradient_norm" in out
        assert "zero_gap" in out

    def test_center_exact_line(self, capsys):
        code, out, _ = run(capsys, "center", "--coeffs", SEXTIC_ARG)
        assert code == 0
        assert "t = 230/61, u = (14/61)*sqrt(426)" in out
        assert "in_fundamental_domain = false" in out

    def test_center_unit_form(self, capsys):
        code, out, _ = run(capsys, "zero", "--coeffs", "1,0,1")
        assert code == 0
        assert out.count("x = 0") == 2  # both methods at the same point

    def test_julia_command(self, capsys):
        code, out, _ = run(capsys, "julia", "--coeffs", SEXTIC_ARG)
        assert code == 0
        assert "gradient_norm" in out


class TestBatch:
    def test_three_line_file(self, capsys, tmp_path):
        path = tmp_path / "forms.txt"
        path.write_text(f"demo,{SEXTIC_ARG}\nunit,1,0,1\nbad,1,0,-1\n")
        code, out, _ = run(capsys, "batch", "--input", str(path))
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4  # three records plus summary
        records = [json.loads(line) for line in lines]
        assert [r["id"] for r in records[:3]] == ["demo", "unit", "bad"]
        assert records[0]["status"] == "ok"
        assert records[0]["centroid"]["height_after"] == "12740"
        assert records[1]["status"] == "ok"
        assert records[2]["status"] == "real_root_detected"
        summary = records[3]
        assert summary["type"] == "summary"
        assert summary["records"] == 3 and summary["ok"] == 2
        assert summary["real_root_detected"] == 1

    def test_matches_single_run(self, capsys, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text(f"demo,{SEXTIC_ARG}\n")
        code, out, _ = run(capsys, "batch", "--input", str(path), "--method", "centroid")
        record = json.loads(out.strip().splitlines()[0])
        code2, single, _ = run(capsys, "reduce", "--coeffs", SEXTIC_ARG)
        report = json.loads(single)
        assert record["centroid"]["matrix"] == report["matrix"]
        assert record["centroid"]["zero_point"] == report["zero_point"]

    def test_empty_file(self, capsys, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        code, out, _ = run(capsys, "batch", "--input", str(path))
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1
        summary = json.loads(lines[0])
        assert summary["records"] == 0 and summary["ok"] == 0

    def test_csv_format(self, capsys, tmp_path):
        path = tmp_path / "forms.txt"
        path.write_text(f"demo,{SEXTIC_ARG}\nbad,1,0,-1\n")
        code, out, _ = run(capsys, "batch", "--input", str(path), "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("id,status,degree")
        assert lines[1].startswith("demo,ok,6,43940,12740")
        assert lines[2].startswith("bad,real_root_detected")
        assert any(line.startswith("# records = 2") for line in lines)

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "batch", "--input", "/nonexistent/path.txt")
        assert code == 1
        assert "cannot open" in err

    def test_byte_identical_reruns(self, capsys, tmp_path):
        path = tmp_path / "forms.txt"
        path.write_text(f"demo,{SEXTIC_ARG}\nunit,1,0,1\n")
        _, first, _ = run(capsys, "batch", "--input", str(path))
        _, second, _ = run(capsys, "batch", "--input", str(path))
        assert first == second


class TestGeodata:
    def test_structure(self, capsys):
        code, out, _ = run(capsys, "geodata", "--coeffs", SEXTIC_ARG)
        assert code == 0
        payload = json.loads(out)
        for key in ("roots", "pairs", "zeros", "reduction", "fundamental_domain"):
            assert key in payload
        assert len(payload["pairs"]) == payload["degree"] // 2
        assert len(payload["roots"]) == payload["degree"]
        assert set(payload["zeros"]) == {"centroid", "julia"}

    def test_path_ends_in_domain(self, capsys):
        code, out, _ = run(capsys, "geodata", "--coeffs", SEXTIC_ARG)
        payload = json.loads(out)
        path = payload["reduction"]["path"]
        assert len(path) >= 2
        assert in_fundamental_domain(PointH2(*path[-1]))


def test_sqrt_display():
    from fractions import Fraction

    assert sqrt_display(Fraction(83496, 3721)) == "(14/61)*sqrt(426)"
    assert sqrt_display(Fraction(9, 4)) == "3/2"
    assert sqrt_display(Fraction(2)) == "sqrt(2)"


def test_schema_version_in_every_json_payload(capsys):
    for argv in (["reduce", "--coeffs", "1,0,1"],
                 ["zero", "--coeffs", "1,0,1", "--format", "json"],
                 ["center", "--coeffs", "1,0,1", "--format", "json"],
                 ["julia", "--coeffs", "1,0,1", "--format", "json"],
                 ["geodata", "--coeffs", "1,0,1"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert json.loads(out)["schema_version"] == 1
