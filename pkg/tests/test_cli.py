import json

import pytest

from kleintunnel.cli import main
from kleintunnel.sweep import CSV_COLUMNS


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_human(text):
    """Parse 'key = value' lines back into a dict."""
    vals = {}
    for line in text.splitlines():
        if " = " not in line:
            continue
        key, _, rest = line.partition(" = ")
        rest = rest.split("   [")[0].strip()
        try:
            vals[key.strip()] = float(rest)
        except ValueError:
            vals[key.strip()] = rest
    return vals


class TestZone:
    def test_tunneling_point(self, capsys):
        code, out, _ = run_cli(capsys, "zone", "--m", "1", "--V0", "10", "--E", "10")
        assert code == 0
        assert parse_human(out)["zone"] == "Tunneling"

    def test_non_propagating_is_a_valid_tag(self, capsys):
        code, out, _ = run_cli(capsys, "zone", "--m", "1", "--V0", "10", "--E", "0.5")
        assert code == 0
        assert parse_human(out)["zone"] == "NonPropagating"


class TestExitCodes:
    def test_usage_error_both_energy_coordinates(self, capsys):
        code, _, _ = run_cli(capsys, "amp", "--m", "1", "--V0", "10",
                             "--E", "5", "--n2", "3")
        assert code == 2

    def test_usage_error_missing_required(self, capsys):
        code, _, _ = run_cli(capsys, "zone", "--m", "1", "--V0", "10")
        assert code == 2

    def test_usage_error_unknown_flag(self, capsys):
        code, _, _ = run_cli(capsys, "zone", "--nope", "1")
        assert code == 2

    def test_computation_error(self, capsys):
        # E below threshold: amplitudes are undefined
        code, _, err = run_cli(capsys, "amp", "--m", "1", "--V0", "10", "--E", "0.5")
        assert code == 1
        assert "error:" in err

    def test_success(self, capsys):
        code, _, _ = run_cli(capsys, "limits", "--v", "10")
        assert code == 0


class TestLimits:
    def test_edge_values(self, capsys):
        code, out, _ = run_cli(capsys, "limits", "--v", "10",
                               "--wL", "6.283185307179586")
        assert code == 0
        vals = parse_human(out)
        assert vals["lower_edge_ratio_limit"] == pytest.approx(-4.0 / 27.0, rel=1e-12)
        assert vals["upper_edge_ratio_limit"] == pytest.approx(4.0 / 33.0, rel=1e-12)
        assert vals["lower_edge_magnitude_nr_form"] == pytest.approx(0.5370292721463151, rel=1e-12)

    def test_no_lower_edge_for_small_v(self, capsys):
        code, out, _ = run_cli(capsys, "limits", "--v", "1.5")
        assert code == 0
        vals = parse_human(out)
        assert "lower_edge_ratio_limit" not in vals
        assert "upper_edge_ratio_limit" in vals


class TestJsonAgreement:
    def test_amp_json_matches_human(self, capsys):
        argv = ["amp", "--m", "1", "--V0", "10", "--wL", "6.283185307179586",
                "--n2", "5"]
        code, human, _ = run_cli(capsys, *argv)
        assert code == 0
        code, as_json, _ = run_cli(capsys, *argv, "--json")
        assert code == 0
        jvals = json.loads(as_json)
        hvals = parse_human(human)
        for key, val in jvals.items():
            if isinstance(val, float):
                assert hvals[key] == val  # repr round-trip: exact

    def test_phasetime_json(self, capsys):
        code, out, _ = run_cli(capsys, "phasetime", "--m", "1", "--V0", "10",
                               "--wL", "6.283185307179586", "--n2", "5", "--json")
        assert code == 0
        vals = json.loads(out)
        assert vals["ratio_closed"] == pytest.approx(0.02093053305098312, rel=1e-10)
        assert vals["ratio_numeric"] == pytest.approx(vals["ratio_closed"], rel=1e-6)
        assert vals["tau"] == pytest.approx(vals["t_phi_numeric"] / vals["ratio_numeric"], rel=1e-9)


class TestConfigPrecedence:
    @pytest.mark.parametrize("file_v,flag_v,expect_v", [
        (None, None, 10.0),   # default
        (5.0, None, 5.0),     # file overrides default
        (None, 2.0, 2.0),     # flag overrides default
        (5.0, 2.0, 2.0),      # flag overrides file
    ])
    def test_matrix(self, capsys, tmp_path, file_v, flag_v, expect_v):
        argv = ["zone", "--m", "1", "--E", "1.7"]
        if file_v is not None:
            cfg = tmp_path / "cfg.json"
            cfg.write_text(json.dumps({"v": file_v}))
            argv += ["--config", str(cfg)]
        if flag_v is not None:
            argv += ["--v", str(flag_v)]
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        assert parse_human(out)["V0"] == pytest.approx(expect_v, rel=1e-12)

    def test_non_numeric_config_value_is_usage_error(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"v": "junk"}))
        code, _, _ = run_cli(capsys, "zone", "--m", "1", "--E", "5",
                             "--config", str(cfg))
        assert code == 2

    def test_exclusive_pair_in_same_source_is_usage_error(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"V0": 10.0, "v": 10.0}))
        code, _, _ = run_cli(capsys, "zone", "--m", "1", "--E", "5",
                             "--config", str(cfg))
        assert code == 2

    def test_flag_beats_conflicting_file_key(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"v": 4.0}))
        code, out, _ = run_cli(capsys, "zone", "--m", "1", "--E", "5",
                               "--V0", "10", "--config", str(cfg))
        assert code == 0
        assert parse_human(out)["V0"] == 10.0


class TestSweepCommand:
    def test_single_sweep_csv(self, capsys, tmp_path):
        out_path = tmp_path / "s.csv"
        code, _, _ = run_cli(capsys, "sweep", "--v", "10", "--n2-min", "4.2",
                             "--n2-max", "5.8", "--count", "4",
                             "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 5

    def test_outputs_subset(self, capsys, tmp_path):
        out_path = tmp_path / "s.csv"
        code, _, _ = run_cli(capsys, "sweep", "--v", "10", "--n2-min", "4.2",
                             "--n2-max", "5.8", "--count", "3",
                             "--outputs", "T2_exact,phase_rad",
                             "--out", str(out_path))
        assert code == 0
        row = out_path.read_text().splitlines()[1].split(",")
        assert row[3] != "" and row[5] != ""  # requested
        assert row[6] == "" and row[7] == ""  # not requested

    def test_sweep_requires_out(self, capsys):
        code, _, _ = run_cli(capsys, "sweep", "--v", "10", "--n2-min", "4.2",
                             "--n2-max", "5.8", "--count", "3")
        assert code == 2


class TestPacketCommand:
    def test_packet_run(self, capsys, tmp_path):
        samples = tmp_path / "samples.csv"
        code, out, _ = run_cli(capsys, "packet", "--m", "1", "--V0", "10",
                               "--L", "0.1", "--n2", "5", "--sigma-k", "0.2",
                               "--samples-out", str(samples), "--json")
        assert code == 0
        vals = json.loads(out)
        assert vals["relative_gap"] < 0.05
        lines = samples.read_text().splitlines()
        assert lines[0] == "t,intensity"
        assert len(lines) == 2002


class TestUnitsDisplay:
    def test_ev_pm_annotations(self, capsys):
        code, out, _ = run_cli(capsys, "phasetime", "--m", "1", "--V0", "10",
                               "--wL", "6.283185307179586", "--n2", "5",
                               "--units", "ev-pm")
        assert code == 0
        assert "zs" in out


class TestReportRedirect:
    def test_out_writes_report_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "limits", "--v", "10", "--json",
                               "--out", str(path))
        assert code == 0
        assert out == ""
        vals = json.loads(path.read_text())
        assert vals["lower_edge_ratio_limit"] == pytest.approx(-4.0 / 27.0, rel=1e-12)
