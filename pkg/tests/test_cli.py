import json
import math

import numpy as np
import pytest

from limrod.cli import main

DEMO = {"alpha": 1.0, "beta": 1.0, "gamma": 1.0, "zeta": 1.0, "eta": 2.0, "iota": 0.0, "p": 2.0}


@pytest.fixture
def demo_file(tmp_path):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DEMO))
    return str(path)


def write_params(tmp_path, name="p.json", **overrides):
    payload = dict(DEMO)
    payload.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def parse_report(text):
    out = {}
    for line in text.splitlines():
        if " = " in line:
            key, _, value = line.partition(" = ")
            try:
                out[key.strip()] = float(value)
            except ValueError:
                out[key.strip()] = value.strip()
    return out


class TestValidate:
    def test_valid_report(self, demo_file, capsys):
        assert main(["validate", demo_file]) == 0
        out = capsys.readouterr().out
        assert "valid: yes" in out
        assert "N_thresh = 1.788854" in out
        report = parse_report(out)
        assert report["dilatational modulus"] == 4.0
        assert "orientation_weak_ok = true" in out

    def test_indefinite_coupling_exits_1(self, tmp_path, capsys):
        path = write_params(tmp_path, eta=1.0, iota=1.5)
        assert main(["validate", path]) == 1
        assert "DefinitenessViolation" in capsys.readouterr().out

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.json")]) == 2

    def test_malformed_file_exits_2(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["validate", str(path)]) == 2

    def test_no_bifurcation_report(self, tmp_path, capsys):
        path = write_params(tmp_path, eta=1.0)
        assert main(["validate", path]) == 0
        assert "no bifurcation" in capsys.readouterr().out


class TestEval:
    def test_forward_zero_loads(self, demo_file, capsys):
        assert main(["eval", demo_file, "forward", "0", "0", "0", "0", "0", "0"]) == 0
        report = parse_report(capsys.readouterr().out)
        assert [report[k] for k in ("u1", "u2", "u3", "v1", "v2", "v3")] == [0, 0, 0, 0, 0, 1]
        assert report["Qstar"] == 0.0

    def test_forward_inverse_round_trip(self, demo_file, capsys):
        loads = ["0.3", "-0.2", "0.5", "0.1", "0.0", "1.25"]
        assert main(["eval", demo_file, "forward", *loads]) == 0
        report = parse_report(capsys.readouterr().out)
        strains = [str(report[k]) for k in ("u1", "u2", "u3", "v1", "v2", "v3")]
        assert main(["eval", demo_file, "inverse", *strains]) == 0
        back = parse_report(capsys.readouterr().out)
        for key, expected in zip(("m1", "m2", "m3", "n1", "n2", "n3"), loads):
            assert back[key] == pytest.approx(float(expected), rel=1e-10, abs=1e-12)

    def test_inverse_out_of_range_exits_1(self, demo_file, capsys):
        # v3 beyond its bound: |v3-1| >= beta/sqrt(det) = 1/2
        assert main(["eval", demo_file, "inverse", "0", "0", "0", "0", "0", "1.6"]) == 1
        assert "StrainOutOfRange" in capsys.readouterr().err


class TestBranch:
    def test_sweep_rows(self, demo_file, tmp_path, capsys):
        out = tmp_path / "branch.csv"
        assert main(["branch", demo_file, "--n-min", "0", "--n-max", "3", "--count", "7",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "N,theta,u3,v3,v_shear_amplitude,branch"
        sheared = [ln for ln in lines[1:] if ln.endswith(",sheared")]
        trivial = [ln for ln in lines[1:] if ln.endswith(",trivial")]
        assert len(trivial) == 7
        thresh = 4 / math.sqrt(5)
        assert all(float(ln.split(",")[0]) > thresh for ln in sheared)
        assert sheared  # the range [0, 3] crosses the threshold

    def test_two_point_sweep(self, demo_file, tmp_path):
        out = tmp_path / "two.csv"
        assert main(["branch", demo_file, "--n-min", "0", "--n-max", "1", "--count", "2",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 3  # header + 2 trivial rows below threshold

    def test_json_format(self, demo_file, tmp_path):
        out = tmp_path / "branch.json"
        assert main(["branch", demo_file, "--n-min", "0", "--n-max", "3", "--count", "4",
                     "--format", "json", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["no_bifurcation"] is None
        assert len(payload["points"]) >= 4
        assert {"N", "theta", "u3", "v3", "v_shear_amplitude", "branch"} == set(
            payload["points"][0]
        )

    def test_no_bifurcation_comment(self, tmp_path):
        params = write_params(tmp_path, eta=1.0)
        out = tmp_path / "nb.csv"
        assert main(["branch", params, "--n-min", "0", "--n-max", "1", "--count", "2",
                     "--out", str(out)]) == 0
        assert out.read_text().startswith("# no bifurcation:")

    def test_bad_range_exits_1(self, demo_file, tmp_path):
        assert main(["branch", demo_file, "--n-min", "3", "--n-max", "0",
                     "--out", str(tmp_path / "x.csv")]) == 1
        assert main(["branch", demo_file, "--n-min", "0", "--n-max", "1", "--count", "1",
                     "--out", str(tmp_path / "x.csv")]) == 1


STATE_ARGS = {
    "trivial": ["--n-thrust", "1.5"],
    "sheared": ["--n-thrust", "2.0"],
    "twist": ["--m3", "1.0", "--theta", "0.4"],
    "helix": ["--m1", "1.0", "--theta", "0.9"],
    "bend": ["--m1", "1.0"],
}


class TestStateAndCheck:
    @pytest.mark.parametrize("family", sorted(STATE_ARGS))
    def test_state_then_check(self, demo_file, tmp_path, family, capsys):
        out = tmp_path / f"{family}.csv"
        argv = ["state", demo_file, "--family", family, "--grid-h", "0.002",
                "--out", str(out), *STATE_ARGS[family]]
        assert main(argv) == 0
        assert out.exists() and out.with_suffix(".json").exists()
        descriptor = json.loads(out.with_suffix(".json").read_text())
        assert descriptor["family"] in ("trivial", "sheared", "twist", "helix")
        assert main(["check", str(out), demo_file]) == 0

    def test_trivial_unloaded_straight_line(self, demo_file, tmp_path):
        out = tmp_path / "ref.csv"
        assert main(["state", demo_file, "--family", "trivial", "--n-thrust", "0",
                     "--grid-h", "0.01", "--out", str(out)]) == 0
        data = np.loadtxt(out, delimiter=",", skiprows=1)
        np.testing.assert_allclose(data[:, 1:3], 0.0, atol=1e-15)
        np.testing.assert_allclose(data[:, 3], data[:, 0], atol=1e-15)

    def test_bend_circle_geometry(self, demo_file, tmp_path):
        # alpha = 1, p = 2, M1 = 1: arc of a circle of radius sqrt(2)
        params = write_params(tmp_path, eta=1.0, name="iso.json")
        out = tmp_path / "bend.csv"
        assert main(["state", params, "--family", "bend", "--m1", "1",
                     "--grid-h", "0.001", "--out", str(out)]) == 0
        data = np.loadtxt(out, delimiter=",", skiprows=1)
        descriptor = json.loads(out.with_suffix(".json").read_text())
        center = np.array([0.0, descriptor["helix_radius"], 0.0])
        radii = np.linalg.norm(data[:, 1:4] - center, axis=1)
        np.testing.assert_allclose(radii, math.sqrt(2), atol=1e-8)

    def test_sheared_below_threshold_exits_1(self, demo_file, tmp_path, capsys):
        code = main(["state", demo_file, "--family", "sheared", "--n-thrust", "1.0",
                     "--out", str(tmp_path / "x.csv")])
        assert code == 1
        assert "BelowThreshold" in capsys.readouterr().err

    def test_check_rejects_perturbed_geometry(self, demo_file, tmp_path):
        out = tmp_path / "helix.csv"
        assert main(["state", demo_file, "--family", "helix", "--m1", "1.0",
                     "--theta", "0.9", "--grid-h", "0.002", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        # move one interior sample point by 0.1
        fields = lines[300].split(",")
        fields[1] = f"{float(fields[1]) + 0.1:.17g}"
        lines[300] = ",".join(fields)
        bad = tmp_path / "perturbed.csv"
        bad.write_text("\n".join(lines) + "\n")
        assert main(["check", str(bad), demo_file]) == 1

    def test_check_rejects_truncated_csv(self, demo_file, tmp_path):
        out = tmp_path / "twist.csv"
        assert main(["state", demo_file, "--family", "twist", "--m3", "1.0",
                     "--grid-h", "0.01", "--out", str(out)]) == 0
        text = out.read_text()
        bad = tmp_path / "trunc.csv"
        bad.write_text(text[: len(text) // 2].rsplit("\n", 1)[0][:-4] + "\n")
        assert main(["check", str(bad), demo_file]) == 2

    def test_outputs_byte_stable(self, demo_file, tmp_path):
        outs = []
        for name in ("r1.csv", "r2.csv"):
            out = tmp_path / name
            assert main(["state", demo_file, "--family", "sheared", "--n-thrust", "2.0",
                         "--grid-h", "0.002", "--out", str(out)]) == 0
            outs.append((out.read_bytes(), out.with_suffix(".json").read_bytes()))
        assert outs[0] == outs[1]
