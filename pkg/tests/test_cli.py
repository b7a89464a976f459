import json

import numpy as np
import pytest

from reparam.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRoundtrip:
    def test_simplex_passes(self, capsys):
        code, out, _ = run(
            capsys, ["roundtrip", "--spec", "simplex(3)", "--trials", "200"]
        )
        assert code == 0
        assert "[PASS]" in out and "roundtrip_max_error" in out

    def test_trivial_empty_spec(self, capsys):
        code, out, _ = run(capsys, ["roundtrip", "--spec", "corr(1)"])
        assert code == 0

    def test_composite_spec(self, capsys):
        code, out, _ = run(
            capsys,
            ["roundtrip", "--spec", "tuple(real(), bounded01(), diagpd(2))", "--trials", "100"],
        )
        assert code == 0

    def test_parse_error_is_usage_error(self, capsys):
        code, _, err = run(capsys, ["roundtrip", "--spec", "simplex(oops"])
        assert code == 2
        assert "error" in err

    def test_semantic_error_is_usage_error(self, capsys):
        code, _, err = run(capsys, ["roundtrip", "--spec", "bounded(a=2,b=1)"])
        assert code == 2

    def test_impossible_tolerance_fails(self, capsys):
        code, out, _ = run(
            capsys,
            ["roundtrip", "--spec", "simplex(3)", "--trials", "50", "--tol", "0"],
        )
        assert code == 1
        assert "[FAIL]" in out


class TestDistcheck:
    def test_simplex(self, capsys):
        code, out, _ = run(
            capsys,
            ["distcheck", "--family", "simplex", "--dim", "4", "--samples", "20000"],
        )
        assert code == 0
        assert "simplex_uniform_ks_coord0" in out

    def test_ball_radial(self, capsys):
        code, out, _ = run(
            capsys,
            ["distcheck", "--family", "ball", "--dim", "2", "--samples", "20000"],
        )
        assert code == 0
        assert "ball_radial_ks" in out

    def test_sphere(self, capsys):
        code, _, _ = run(
            capsys,
            ["distcheck", "--family", "sphere", "--dim", "3", "--samples", "20000"],
        )
        assert code == 0

    def test_small_sample_usage_error(self, capsys):
        code, _, err = run(
            capsys,
            ["distcheck", "--family", "simplex", "--dim", "3", "--samples", "100"],
        )
        assert code == 2

    def test_ball_dim1_usage_error(self, capsys):
        code, _, _ = run(
            capsys,
            ["distcheck", "--family", "ball", "--dim", "1", "--samples", "20000"],
        )
        assert code == 2


class TestGrid:
    @pytest.mark.parametrize("name", ["simplex2", "sphere2", "halfsphere2", "ball2"])
    def test_maps(self, capsys, tmp_path, name):
        out_file = tmp_path / f"{name}.csv"
        code, out, _ = run(
            capsys,
            ["grid", "--map", name, "--range", "5", "--step", "0.5", "--out", str(out_file)],
        )
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        header = lines[0].split(",")
        assert header[:2] == ["x0", "x1"]
        rows = np.loadtxt(str(out_file), delimiter=",", skiprows=1)
        assert rows.shape[0] == 21 * 21 == len(lines) - 1
        y = rows[:, 2:]
        if name == "ball2":
            assert np.max(np.sum(y * y, axis=-1)) < 1.0
        elif name == "simplex2":
            assert np.all(y > 0)
            np.testing.assert_allclose(np.sum(y, axis=-1), 1.0, atol=1e-12)
        else:
            np.testing.assert_allclose(np.linalg.norm(y, axis=-1), 1.0, atol=1e-12)
        if name == "halfsphere2":
            assert np.all(y[:, -1] > 0)

    def test_full_precision_values(self, capsys, tmp_path):
        out_file = tmp_path / "g.csv"
        run(
            capsys,
            ["grid", "--map", "ball2", "--range", "1", "--step", "1", "--out", str(out_file)],
        )
        from reparam.vector_maps import reals_to_ball

        rows = np.loadtxt(str(out_file), delimiter=",", skiprows=1)
        for row in rows:
            np.testing.assert_array_equal(row[2:], reals_to_ball(row[:2]))

    def test_unwritable_path(self, capsys):
        code, _, err = run(
            capsys,
            ["grid", "--map", "ball2", "--out", "/no/such/dir/out.csv"],
        )
        assert code == 2
        assert "error" in err


class TestJsonOutput:
    def test_roundtrip_json_parses(self, capsys):
        code, out, _ = run(
            capsys,
            ["roundtrip", "--spec", "sphere(2)", "--trials", "100", "--json", "--seed", "3"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["seed"] == 3
        assert doc["checks"][0]["name"] == "roundtrip_max_error"
        assert doc["checks"][0]["status"] == "pass"

    def test_byte_identical_reruns(self, capsys):
        argv = ["roundtrip", "--spec", "simplex(2)", "--trials", "100", "--json"]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2

    def test_seed_changes_metric(self, capsys):
        base = ["roundtrip", "--spec", "ball(2)", "--trials", "100", "--json"]
        _, out1, _ = run(capsys, base + ["--seed", "1"])
        _, out2, _ = run(capsys, base + ["--seed", "2"])
        m1 = json.loads(out1)["checks"][0]["metric"]
        m2 = json.loads(out2)["checks"][0]["metric"]
        assert m1 != m2

    def test_human_output_has_wall_time_json_does_not(self, capsys):
        argv = ["roundtrip", "--spec", "real()", "--trials", "10"]
        _, human, _ = run(capsys, argv)
        _, machine, _ = run(capsys, argv + ["--json"])
        assert "wall_time_s" in human
        assert "wall_time" not in machine


class TestMle:
    def test_gumbel_defaults(self, capsys):
        code, out, _ = run(capsys, ["mle", "gumbel", "--json"])
        assert code == 0
        doc = json.loads(out)
        names = {c["name"]: c for c in doc["checks"]}
        assert names["fit_converged"]["status"] == "pass"
        assert names["beta_ci_width"]["status"] == "pass"
        lo, hi = doc["beta_ci"]
        assert lo < doc["beta_hat"] < hi
        assert abs(doc["mu_hat"] - 5.0) < 0.5
        assert doc["converged"] is True
        assert "fisher" in doc and len(doc["fisher"]) == 2

    def test_gumbel_nondefault_skips_width_check(self, capsys):
        code, out, _ = run(
            capsys, ["mle", "gumbel", "--n", "400", "--mu", "1", "--beta", "0.5", "--json"]
        )
        assert code == 0
        names = [c["name"] for c in json.loads(out)["checks"]]
        assert "beta_ci_width" not in names

    def test_student_small(self, capsys):
        code, out, _ = run(capsys, ["mle", "student", "--n", "400", "--json"])
        assert code == 0
        doc = json.loads(out)
        names = {c["name"]: c for c in doc["checks"]}
        assert names["fit_converged"]["status"] == "pass"
        assert names["nu_ci_positive"]["status"] == "pass"
        assert names["det_ci_positive"]["status"] == "pass"
        lo, hi = doc["nu_ci"]
        assert 0 < lo < doc["df_hat"] < hi


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_required_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["roundtrip"])
        assert exc.value.code == 2

    def test_bad_choice(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["distcheck", "--family", "torus"])
        assert exc.value.code == 2
