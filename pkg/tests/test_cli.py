import filecmp
import json

import pytest

from speclab.cli import run, run_manifest


def out_json(tmp_path, name, argv):
    path = tmp_path / name
    code = run(argv + ["--out", str(path)])
    return code, json.loads(path.read_text())


class TestExamples:
    def test_specialize_quadratic(self, tmp_path, capsys):
        code, data = out_json(
            tmp_path, "s.json", ["specialize", "--cover", "T^2 - 2", "--t0", "7"]
        )
        assert code == 0
        rep = data["results"]["report"]
        assert rep["m"] == 47 and rep["disc_field"] == 188
        assert "specialize: ok" in capsys.readouterr().out

    def test_specialize_cubic(self, tmp_path):
        code, data = out_json(
            tmp_path, "c.json", ["specialize", "--cubic", "0;T;T", "--t0", "1"]
        )
        assert code == 0
        rep = data["results"]["report"]
        assert rep["group"] == "S3" and rep["d_K"] == -31

    def test_exponent_table(self, tmp_path):
        code, data = out_json(
            tmp_path,
            "e.json",
            ["exponent", "--order", "2", "--indices", "2,2,2,2,2,2"],
        )
        assert code == 0
        r = data["results"]
        assert r["e"] == 1 and r["alpha"] == 1 and r["genus"] == 2
        assert r["eq1"]["holds"] and not r["eq2"]["holds"]

    def test_certify(self, tmp_path):
        code, data = out_json(
            tmp_path, "cert.json", ["certify", "--poly", "T^4 + 1", "--d", "3"]
        )
        assert code == 0
        cert = data["results"]["certificate"]
        assert cert["p"] == 3 and cert["v_p_d"] == 1

    def test_local(self, tmp_path):
        code, data = out_json(
            tmp_path,
            "l.json",
            ["local", "--poly", "T^2 + 1", "--d", "-1", "--place", "infinity"],
        )
        assert code == 0
        assert data["results"]["status"] == "insoluble"

    def test_beckmann(self, tmp_path):
        code, data = out_json(
            tmp_path, "b.json", ["beckmann", "--cover", "T^2 - 2", "--t0", "3"]
        )
        assert code == 0
        entries = data["results"]["entries"]
        assert any(e["p"] == 7 and e["inertia_order"] == 2 for e in entries)

    def test_census_counts(self, tmp_path):
        code, data = out_json(
            tmp_path, "n.json", ["census", "--n", "2", "--N", "2", "--H", "2"]
        )
        assert code == 0
        assert data["results"]["counts"]["P"] == 92

    def test_census_fields(self, tmp_path):
        code, data = out_json(tmp_path, "f.json", ["census", "--x", "10"])
        assert code == 0
        assert data["results"]["discriminants"] == [-3, -4, 5, -7, -8, 8]

    def test_s3_survey(self, tmp_path):
        code, data = out_json(
            tmp_path,
            "sv.json",
            ["s3-survey", "--D", "0", "--H", "2", "--samples", "500", "--seed", "3"],
        )
        assert code == 0
        assert data["results"]["survey"]["exhaustive"] is True

    def test_twist_scan(self, tmp_path):
        code, data = out_json(
            tmp_path,
            "tw.json",
            [
                "twist-scan",
                "--cover",
                "T^8 + 3*T^6 + 4*T^4 + 6*T^2 + 4",
                "--t0",
                "1",
                "--bound",
                "400",
            ],
        )
        assert code == 0
        rows = data["results"]["admissible"]
        assert rows[0]["p"] == 193 and rows[0]["d"] == 386


class TestExitCodes:
    def test_bad_poly_is_error(self, capsys):
        assert run(["specialize", "--cover", "T^2 -", "--t0", "1"]) == 1
        assert "error" in capsys.readouterr().err

    def test_unknowns_exit_2(self, tmp_path, capsys):
        # tiny height starves the point search, leaving unknown twists
        code = run(
            [
                "lgratio",
                "--cover",
                "T^4 + 2*T^2 + 2",
                "--grid",
                "30",
                "--height",
                "2",
                "--out",
                str(tmp_path / "r.json"),
            ]
        )
        assert code == 2
        assert "unknowns present" in capsys.readouterr().out

    def test_missing_subcommand(self):
        assert run([]) == 1


class TestManifest:
    def test_replay_is_byte_identical(self, tmp_path, capsys):
        args = [
            "density",
            "--cover",
            "T^3 - 2",
            "--grid",
            "20,40",
            "--out",
            str(tmp_path / "a.json"),
            "--csv",
            str(tmp_path / "a.csv"),
            "--manifest",
            str(tmp_path / "m.json"),
        ]
        assert run(args) in (0, 2)
        manifest = json.loads((tmp_path / "m.json").read_text())
        assert manifest["subcommand"] == "density"
        assert "timestamp" in manifest
        # redirect outputs and replay from the manifest
        manifest["parameters"]["out"] = str(tmp_path / "b.json")
        manifest["parameters"]["csv"] = str(tmp_path / "b.csv")
        (tmp_path / "m2.json").write_text(json.dumps(manifest))
        assert run_manifest(str(tmp_path / "m2.json")) in (0, 2)
        assert filecmp.cmp(tmp_path / "a.json", tmp_path / "b.json", shallow=False)
        assert filecmp.cmp(tmp_path / "a.csv", tmp_path / "b.csv", shallow=False)
        assert "timestamp" not in (tmp_path / "a.json").read_text()

    def test_csv_header(self, tmp_path):
        run(
            [
                "density",
                "--cover",
                "T^3 - 2",
                "--grid",
                "20",
                "--csv",
                str(tmp_path / "s.csv"),
                "--out",
                str(tmp_path / "s.json"),
            ]
        )
        head = (tmp_path / "s.csv").read_text().splitlines()[0]
        assert head == "x,ratio_lower,ratio_upper,unknowns"


def test_stdout_json_when_no_out(capsys):
    code = run(["exponent", "--order", "2", "--indices", "2,2,2,2,2,2"])
    assert code == 0
    out = capsys.readouterr().out
    body = out[out.index("{") :]
    assert json.loads(body)["command"] == "exponent"
