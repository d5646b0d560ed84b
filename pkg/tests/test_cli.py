import csv
import io
import json

import pytest

from perronlab import bounds, cli
from perronlab.bounds import BoundCheck
from perronlab.families import build_family
from perronlab.graph import read_edge_list


def run(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstruct:
    def test_stdout_edge_list(self, capsys):
        code, out, _ = run(["construct", "cycle:5"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "5 5"

    def test_file_output_round_trips(self, tmp_path, capsys):
        target = tmp_path / "g.edges"
        code, _, _ = run(["construct", "kite:r=4,s=3", "-o", str(target)], capsys)
        assert code == 0
        g = read_edge_list(target)
        want = build_family("kite:r=4,s=3").graph
        assert list(g.edges()) == list(want.edges())

    def test_bad_spec_is_a_usage_error(self, capsys):
        code, _, err = run(["construct", "hexagon:6"], capsys)
        assert code == 1
        assert "ParseError" in err


class TestSpectrum:
    def test_json_payload(self, capsys):
        code, out, _ = run(["spectrum", "complete:25"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == "complete:25"
        assert payload["n"] == 25
        assert payload["lambda1"] == pytest.approx(24.0, abs=1e-9)
        assert payload["regular_degree"] == 24
        assert set(payload) >= {"lambda2", "additive_gap", "multiplicative_gap"}


class TestRatio:
    def test_plus_e_switches_to_ringplus(self, capsys):
        code, out, _ = run(["ratio", "ring:r=10,d=3", "--plus-e"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["family"] == "ringplus:r=10,d=3"
        assert payload["gamma"] > 100

    def test_plus_e_rejected_off_ring(self, capsys):
        code, _, err = run(["ratio", "cycle:9", "--plus-e"], capsys)
        assert code == 1
        assert "plus-e" in err

    def test_plain_report_fields(self, capsys):
        code, out, _ = run(["ratio", "kite:r=6,s=4"], capsys)
        payload = json.loads(out)
        assert code == 0
        assert payload["v_min"] == 0
        assert set(payload) >= {"gamma", "log_gamma", "q_max", "q_min", "lambda1", "residual"}


class TestPerturb:
    def test_successful_certificate(self, capsys):
        code, out, _ = run(
            ["perturb", "complete:100", "--edge", "0,1", "--sign", "-", "--c", "0.25"],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["holds"] is True
        assert payload["gamma_observed"] < payload["gamma_certificate"]
        assert payload["edge"] == [0, 1]

    def test_word_sign_accepted(self, capsys):
        code, out, _ = run(
            ["perturb", "complete:40", "--edge", "0,1", "--sign", "minus", "--c", "0.5"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["sign"] == -1

    def test_gap_too_small_is_exit_1(self, capsys):
        code, _, err = run(
            ["perturb", "cycle:12", "--edge", "0,2", "--sign", "+", "--c", "0.3"],
            capsys,
        )
        assert code == 1
        assert "GapTooSmall" in err

    def test_bad_edge_format(self, capsys):
        code, _, err = run(
            ["perturb", "complete:10", "--edge", "0:1", "--sign", "+", "--c", "0.5"],
            capsys,
        )
        assert code == 1
        assert "ParseError" in err

    def test_failed_certificate_is_exit_2(self, capsys, monkeypatch):
        # force a miss by doctoring the report the pipeline returns
        import perronlab.perturbation as pert

        real = pert.certify_ratio

        def doctored(g, e, sign, c):
            rep = real(g, e, sign, c)
            object.__setattr__(rep, "holds", False)
            return rep

        monkeypatch.setattr(cli, "certify_ratio", doctored)
        code, out, _ = run(
            ["perturb", "complete:40", "--edge", "0,1", "--sign", "-", "--c", "0.5"],
            capsys,
        )
        assert code == 2


class TestVerify:
    def test_all_on_dense_graph_minus_edge(self, capsys):
        code, out, err = run(
            ["verify", "all", "complete:25", "--edge-op", "minus"], capsys
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert tuple(rows[0]) == bounds.CSV_HEADER
        names = {r[0] for r in rows[1:]}
        assert names == {
            "ratio_diameter",
            "distance_ratio",
            "regular_diameter",
            "diameter_change",
            "cgn",
            "alon_milman",
            "expander_corollary",
            "removal_poly",
        }
        assert all(r[5] == "true" for r in rows[1:])
        assert "skipped exponential_ring" in err

    def test_single_check(self, capsys):
        code, out, _ = run(["verify", "regular_diameter", "cycle:9"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[1][0] == "regular_diameter"

    def test_samples_control_distance_ratio_count(self, capsys):
        code, out, _ = run(
            ["verify", "distance_ratio", "complete:10", "--samples", "7"], capsys
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) == 1 + 7

    def test_seeded_sampling_is_deterministic(self, capsys):
        args = ["verify", "distance_ratio", "kite:r=6,s=4", "--seed", "3"]
        _, out1, _ = run(args, capsys)
        _, out2, _ = run(args, capsys)
        assert out1 == out2

    def test_ring_family_runs_exponential_check(self, capsys):
        code, out, _ = run(
            ["verify", "exponential_ring", "ringplus:r=125,d=3"], capsys
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[1][0] == "exponential_ring"
        assert rows[1][5] == "true"

    def test_strict_mode_errors_without_edge_op(self, capsys):
        code, _, err = run(["verify", "removal_poly", "cycle:9"], capsys)
        assert code == 1
        assert "edge-op" in err or "edge removal" in err

    def test_unknown_check_rejected(self, capsys):
        code, _, err = run(["verify", "nope", "cycle:9"], capsys)
        assert code == 1
        assert "unknown check" in err

    def test_explicit_edge_is_used(self, capsys):
        code, out, _ = run(
            ["verify", "removal_poly", "complete:25", "--edge-op", "minus", "--edge", "3,7"],
            capsys,
        )
        assert code == 0
        assert "e=(3,7)" in out

    def test_violation_exits_2(self, capsys, monkeypatch):
        broken = BoundCheck(
            name="ratio_diameter",
            params="n=9,m=9",
            lhs=2.0,
            rhs=1.0,
            op="<=",
            log_space=True,
            holds=False,
            slack=-1.0,
            context={},
        )
        monkeypatch.setattr(bounds, "check_ratio_diameter", lambda g: broken)
        code, out, _ = run(["verify", "ratio_diameter", "cycle:9"], capsys)
        assert code == 2
        assert "false" in out


class TestSweep:
    def write_cfg(self, tmp_path, text):
        p = tmp_path / "sweep.cfg"
        p.write_text(text)
        return str(p)

    def test_ratio_sweep_is_monotone_and_deterministic(self, tmp_path, capsys):
        cfg = self.write_cfg(
            tmp_path,
            "family = ringplus:r=$r,d=3\n"
            "sweep.r = 10:20:5\n"
            "analyses = ratio\n",
        )
        code, out1, _ = run(["sweep", cfg], capsys)
        assert code == 0
        code, out2, _ = run(["sweep", cfg], capsys)
        assert out1 == out2  # byte-identical reruns
        rows = list(csv.DictReader(io.StringIO(out1)))
        assert [r["r"] for r in rows] == ["10", "15", "20"]
        logs = [float(r["ratio.log_gamma"]) for r in rows]
        assert logs == sorted(logs) and logs[0] < logs[-1]
        assert all(r["error"] == "" for r in rows)

    def test_error_column_keeps_sweep_alive(self, tmp_path, capsys):
        cfg = self.write_cfg(
            tmp_path,
            "family = cycle:$n\n"
            "sweep.n = 2:4\n"
            "analyses = spectrum\n",
        )
        code, out, _ = run(["sweep", cfg], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert "InvalidSize" in rows[0]["error"]  # cycle:2 cannot exist
        assert rows[1]["error"] == "" and rows[2]["error"] == ""
        assert float(rows[1]["spectrum.lambda1"]) == pytest.approx(2.0, abs=1e-9)

    def test_two_parameter_grid_in_declaration_order(self, tmp_path, capsys):
        cfg = self.write_cfg(
            tmp_path,
            "family = lex:cycle:$r,empty:$s\n"
            "sweep.r = 4:5\n"
            "sweep.s = 2:3\n"
            "analyses = spectrum\n",
        )
        code, out, _ = run(["sweep", cfg], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [(r["r"], r["s"]) for r in rows] == [
            ("4", "2"), ("4", "3"), ("5", "2"), ("5", "3"),
        ]

    def test_json_format(self, tmp_path, capsys):
        cfg = self.write_cfg(
            tmp_path,
            "family = complete:$n\n"
            "sweep.n = 40:50:10\n"
            "analyses = perturb\n"
            "perturb.c = 0.5\n"
            "perturb.sign = -\n"
            "perturb.edge = 0,1\n"
            "format = json\n",
        )
        code, out, _ = run(["sweep", cfg], capsys)
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 2
        assert rows[0]["perturb.holds"] is True
        assert rows[0]["n"] == 40

    def test_output_file(self, tmp_path, capsys):
        cfg = self.write_cfg(
            tmp_path,
            "family = cycle:$n\n"
            "sweep.n = 5:6\n"
            "analyses = ratio\n"
            f"output = {tmp_path / 'rows.csv'}\n",
        )
        code, out, _ = run(["sweep", cfg], capsys)
        assert code == 0
        assert out == ""
        assert (tmp_path / "rows.csv").read_text().startswith("family,n")

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("sweep.n = 3:5\nanalyses = ratio\n", "family"),
            ("family = cycle:$n\nanalyses = ratio\n", "sweep"),
            ("family = cycle:$n\nsweep.n = 3:5\n", "analysis"),
            ("family = cycle:$n\nsweep.n = 3:5\nanalyses = bogus\n", "unknown analysis"),
            ("family = cycle:$n\nsweep.n = 3:5\nanalyses = distance_ratio\n", "unknown analysis"),
            ("family = cycle:$n\nsweep.n = 3:5\nsweep.m = 1:2\nanalyses = ratio\n", "does not appear"),
            ("family = cycle:$n\nsweep.n = 3:5\nanalyses = perturb\n", "perturb.c"),
            ("family = cycle:$n\nsweep.n = 5:3\nanalyses = ratio\n", "empty range"),
            ("family = cycle:$n\nsweep.n = 3:5\nanalyses = ratio\nformat = yaml\n", "csv or json"),
        ],
    )
    def test_config_validation(self, tmp_path, capsys, text, fragment):
        cfg = self.write_cfg(tmp_path, text)
        code, _, err = run(["sweep", cfg], capsys)
        assert code == 1
        assert fragment in err


class TestUsage:
    def test_unknown_subcommand_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 1

    def test_no_arguments_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 1

    def test_missing_required_flag_exits_1(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["perturb", "complete:10", "--edge", "0,1"])
        assert exc.value.code == 1
