import io
import json

import pytest

from sparsedisc.cli import main
from sparsedisc.graphs import read_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_sylvester_header(self, tmp_path, capsys):
        out_file = tmp_path / "s2.edges"
        code, out, _ = run(capsys, "gen", "sylvester", "2", "-o", str(out_file))
        assert code == 0
        assert out_file.read_text().splitlines()[0] == "n 8"
        assert json.loads(out)["n"] == 8

    def test_stdout_edge_list(self, capsys):
        code, out, _ = run(capsys, "gen", "cycle", "4")
        assert code == 0
        g = read_edge_list(io.StringIO(out))
        assert g.n == 4 and g.edge_count() == 4

    def test_gnp_deterministic_stdout(self, capsys):
        _, a, _ = run(capsys, "gen", "gnp", "20", "1", "2", "--seed", "7")
        _, b, _ = run(capsys, "gen", "gnp", "20", "1", "2", "--seed", "7")
        assert a == b

    def test_bad_params_exit_2(self, capsys):
        code, _, err = run(capsys, "gen", "grid", "0", "4")
        assert code == 2 and err


class TestDisc:
    @pytest.fixture()
    def c5(self, tmp_path, capsys):
        path = tmp_path / "c5.edges"
        run(capsys, "gen", "cycle", "5", "-o", str(path))
        return path

    def test_exact_neighborhood(self, c5, capsys):
        code, out, _ = run(capsys, "disc", "exact", "-i", str(c5), "--system", "neighborhood")
        assert code == 0
        assert json.loads(out) == {"disc": 2}

    def test_bad_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["disc", "exact", "--badflag"])
        assert exc.value.code == 2

    def test_eval_round_trip(self, c5, tmp_path, capsys):
        sys_file = tmp_path / "c5.json"
        code, out, _ = run(capsys, "system", "neighborhood", "-i", str(c5))
        sys_file.write_text(out)
        col_file = tmp_path / "chi.txt"
        code, out, _ = run(
            capsys, "disc", "exact", "-i", str(sys_file), "-o", str(col_file)
        )
        assert code == 0
        code, out, _ = run(
            capsys, "disc", "eval", "-i", str(sys_file), "--coloring", str(col_file)
        )
        assert code == 0
        assert json.loads(out)["disc"] == 2

    def test_herdisc(self, c5, capsys):
        code, out, _ = run(
            capsys, "disc", "herdisc", "-i", str(c5), "--system", "neighborhood",
            "--budget", "64",
        )
        assert code == 0
        assert json.loads(out)["lower_bound"] == 2

    def test_spectral(self, c5, capsys):
        code, out, _ = run(capsys, "disc", "spectral", "-i", str(c5), "--system", "neighborhood")
        assert code == 0
        num, den = json.loads(out)["bound"].split("/")
        assert 0 < int(num) / int(den) < 2

    def test_exact_cap_exit_3(self, tmp_path, capsys):
        path = tmp_path / "big.edges"
        run(capsys, "gen", "grid", "5", "5", "-o", str(path))
        code, _, err = run(
            capsys, "disc", "exact", "-i", str(path), "--system", "neighborhood"
        )
        assert code == 3 and "resource" in err


class TestColor:
    def test_beck_fiala_report_schema(self, tmp_path, capsys):
        path = tmp_path / "g.edges"
        run(capsys, "gen", "grid", "4", "4", "-o", str(path))
        code, out, _ = run(
            capsys, "color", "beck-fiala", "-i", str(path), "--system", "neighborhood"
        )
        assert code == 0
        report = json.loads(out)
        assert set(report) == {"disc", "bound", "degree", "rounds"}
        assert report["disc"] <= report["bound"]

    def test_power_certificate(self, tmp_path, capsys):
        path = tmp_path / "g.edges"
        run(capsys, "gen", "grid", "4", "4", "-o", str(path))
        code, out, _ = run(capsys, "color", "power", "-i", str(path), "--d", "2")
        assert code == 0
        cert = json.loads(out)
        assert cert["achieved"] < cert["claimed_bound"]
        assert cert["reach_profile"][0] == 1

    def test_qf_color(self, tmp_path, capsys):
        struct = tmp_path / "m.json"
        struct.write_text(
            json.dumps({"n": 5, "functions": {"f": [1, 2, 3, 4, 0]}, "predicates": {}})
        )
        formula = tmp_path / "phi.txt"
        formula.write_text("f(x1)=y1")
        code, out, _ = run(
            capsys, "color", "qf", "-i", str(struct), "--formula", str(formula)
        )
        assert code == 0
        report = json.loads(out)
        assert report["achieved"][0] <= report["bound"]


class TestSystemAndApprox:
    def test_system_power(self, tmp_path, capsys):
        path = tmp_path / "p.edges"
        run(capsys, "gen", "path", "4", "-o", str(path))
        code, out, _ = run(capsys, "system", "power", "-i", str(path), "--d", "2")
        assert code == 0
        data = json.loads(out)
        assert data["ground_size"] == 4

    def test_system_defined(self, tmp_path, capsys):
        struct = tmp_path / "m.json"
        struct.write_text(json.dumps({"n": 3, "functions": {}, "predicates": {}}))
        formula = tmp_path / "phi.txt"
        formula.write_text("x1=y1")
        code, out, _ = run(
            capsys, "system", "defined", "-i", str(struct), "--formula", str(formula)
        )
        assert code == 0
        assert json.loads(out)["sets"] == [[0], [1], [2]]

    def test_edge_color_system(self, tmp_path, capsys):
        path = tmp_path / "k3.edges"
        run(capsys, "gen", "complete", "3", "-o", str(path))
        colors = tmp_path / "gamma.txt"
        colors.write_text("0 1 2\n0 2 1\n1 2 1\n")
        code, out, _ = run(
            capsys, "system", "edge-color", "-i", str(path), "--colors", str(colors)
        )
        assert code == 0
        assert json.loads(out)["sets"] == [[0], [0, 1], [1], [2]]

    def test_approx_build_and_verify(self, tmp_path, capsys):
        path = tmp_path / "g.edges"
        run(capsys, "gen", "grid", "8", "8", "-o", str(path))
        code, out, _ = run(
            capsys, "approx", "build", "-i", str(path), "--system", "neighborhood",
            "--eps", "1/4",
        )
        assert code == 0
        report = json.loads(out)
        sample_file = tmp_path / "sample.txt"
        sample_file.write_text(" ".join(str(v) for v in report["sample"]))
        code, out, _ = run(
            capsys, "approx", "verify", "-i", str(path), "--system", "neighborhood",
            "--eps", "1/4", "--sample", str(sample_file),
        )
        assert code == 0
        verdict = json.loads(out)
        assert verdict["ok"] and verdict["net"]


class TestVerifySuites:
    @pytest.mark.parametrize(
        "suite", ["beck-fiala", "orientation", "wcol-identity", "power", "approx", "spectral"]
    )
    def test_suite_passes(self, suite, capsys):
        code, out, _ = run(capsys, "verify", suite, "--trials", "5")
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_deterministic_stdout(self, capsys):
        _, a, _ = run(capsys, "verify", "beck-fiala", "--trials", "5", "--seed", "3")
        _, b, _ = run(capsys, "verify", "beck-fiala", "--trials", "5", "--seed", "3")
        assert a == b


class TestOrder:
    def test_order_report(self, tmp_path, capsys):
        path = tmp_path / "c5.edges"
        run(capsys, "gen", "cycle", "5", "-o", str(path))
        code, out, _ = run(capsys, "order", "-i", str(path), "--exact-d", "1")
        assert code == 0
        report = json.loads(out)
        assert report["degeneracy"] == 2
        assert report["wcol_exact"] == 3
        assert report["wcol_from_order"]["1"] == 3

    def test_orderings_cap_exit_3(self, tmp_path, capsys):
        path = tmp_path / "p12.edges"
        run(capsys, "gen", "path", "12", "-o", str(path))
        code, _, _ = run(capsys, "order", "-i", str(path), "--exact-d", "1")
        assert code == 3

    def test_missing_file_exit_2(self, capsys):
        code, _, _ = run(capsys, "order", "-i", "/nonexistent.edges")
        assert code == 2


class TestOrderFileRoundTrip:
    def test_order_file_feeds_power_coloring(self, tmp_path, capsys):
        path = tmp_path / "g.edges"
        run(capsys, "gen", "grid", "3", "4", "-o", str(path))
        order_file = tmp_path / "order.txt"
        code, _, _ = run(capsys, "order", "-i", str(path), "-o", str(order_file))
        assert code == 0
        assert len(order_file.read_text().split()) == 12
        code, out, _ = run(
            capsys, "color", "power", "-i", str(path), "--d", "2",
            "--order", str(order_file),
        )
        assert code == 0
        cert = json.loads(out)
        assert cert["order"] == [int(t) for t in order_file.read_text().split()]
