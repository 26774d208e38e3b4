import json

from h2landau.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpectrum:
    def test_psi2_table(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--B", "5", "--M", "1",
                           "--m-range", "-3..4", "--n-max", "6",
                           "--channel", "psi2")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "channel,variant,m,n,value,kind,threshold,bound"
        m2 = [ln for ln in lines if ln.startswith("psi2,v1,-2,")]
        assert len(m2) == 5
        assert "psi2,v1,-2,0,2.5,nonrel,12.625,true" in lines

    def test_empty_region_exits_zero(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--B", "5", "--m-range", "7..9")
        assert code == 0
        assert out.strip() == "channel,variant,m,n,value,kind,threshold,bound"

    def test_zero_field_usage_error(self, capsys):
        code, _, err = run(capsys, "spectrum", "--B", "0")
        assert code == 1
        assert "no bound states" in err

    def test_missing_field_usage_error(self, capsys):
        code, _, err = run(capsys, "spectrum")
        assert code == 1
        assert "--B" in err

    def test_byte_stable(self, capsys):
        args = ("spectrum", "--B", "5", "--m-range", "-4..4")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--B", "5", "--m-range",
                           "-2..0", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == "h2landau.spectrum.v1"
        assert payload["params"]["B"] == 5.0
        assert all(row["bound"] is True for row in payload["rows"])

    def test_relativistic_kinds(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--B", "5", "--m-range",
                           "-2..-2", "--relativistic", "--kappa", "1")
        assert code == 0
        kinds = {ln.split(",")[5] for ln in out.strip().splitlines()[1:]}
        assert kinds == {"rel_phi2", "rel_gprime", "rel_phi0prime"}

    def test_negative_field_mirror(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--B", "-5",
                           "--m-range", "2..2", "--channel", "psi2")
        assert code == 0
        assert "psi2,v1,2,0,2.5,nonrel,12.625,true" in out

    def test_check_appends_oracle_columns(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--B", "5", "--m-range",
                           "-2..-2", "--channel", "psi2", "--check",
                           "--grid-points", "700", "--rmax", "25")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].endswith("oracle_value,abs_diff")
        for ln in lines[1:]:
            diff = float(ln.split(",")[-1])
            assert diff < 1e-6


class TestWavefunction:
    def test_csv_with_json_header(self, capsys):
        code, out, _ = run(capsys, "wavefunction", "--channel", "psi2",
                           "--m", "-2", "--n", "0", "--B", "5",
                           "--samples", "10")
        assert code == 0
        lines = out.strip().splitlines()
        head = json.loads(lines[0].lstrip("# "))
        assert head["nodes"] == 0
        assert head["exponents"] == {"a": -6.0, "c": 1.0}
        assert lines[1] == "r,psi"
        assert len(lines) == 12

    def test_unbound_rejected(self, capsys):
        code, _, err = run(capsys, "wavefunction", "--channel", "psi2",
                           "--m", "7", "--n", "0", "--B", "5")
        assert code == 1
        assert "not a bound pair" in err

    def test_mirrored_flag(self, capsys):
        code, out, _ = run(capsys, "wavefunction", "--channel", "psi1",
                           "--m", "2", "--n", "0", "--B", "-5",
                           "--samples", "4")
        assert code == 0
        head = json.loads(out.splitlines()[0].lstrip("# "))
        assert head["mirrored"] is True


class TestOracle:
    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "oracle", "--channel", "psi2", "--m", "-2",
                           "--B", "5", "--grid-points", "700",
                           "--rmax", "25", "--drift-tol", "1e-6")
        assert code == 0
        payload = json.loads(out)
        assert payload["count_below_threshold"] == 5
        assert abs(payload["eigenvalues"][0] - 5.0) < 1e-6
        assert all(payload["converged"])

    def test_grid_too_coarse_exit_code(self, capsys):
        code, _, err = run(capsys, "oracle", "--channel", "psi2", "--m", "-2",
                           "--B", "40", "--grid-points", "20")
        assert code == 3
        assert "resolve" in err


class TestVerify:
    def test_quick_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--quick")
        assert code == 0
        assert "RESULT: PASS" in out
        assert "findings:" in out

    def test_section_selection(self, capsys):
        code, out, _ = run(capsys, "verify", "--dkp")
        assert code == 0
        names = [ln for ln in out.splitlines() if ln.startswith("[")]
        assert names and all("dkp." in ln for ln in names)

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "verify", "--dkp", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        assert payload["checks"]


class TestRegion:
    def test_counts_non_increasing_toward_edge(self, capsys):
        code, out, _ = run(capsys, "region", "--B", "5", "--channel", "psi2")
        assert code == 0
        rows = [ln.split(",") for ln in out.strip().splitlines()[1:]]
        ms = [int(r[1]) for r in rows]
        counts = [int(r[2]) for r in rows]
        assert max(ms) == 4
        positive = [c for m, c in zip(ms, counts) if m > 0]
        assert positive == sorted(positive, reverse=True)

    def test_negative_field_mirror(self, capsys):
        code_p, out_p, _ = run(capsys, "region", "--B", "5", "--channel", "psi2")
        code_n, out_n, _ = run(capsys, "region", "--B", "-5", "--channel", "psi2")
        assert code_p == code_n == 0
        pos = {(int(r.split(",")[1]), int(r.split(",")[2]))
               for r in out_p.strip().splitlines()[1:]}
        neg = {(-int(r.split(",")[1]), int(r.split(",")[2]))
               for r in out_n.strip().splitlines()[1:]}
        assert pos == neg

    def test_zero_field_usage_error(self, capsys):
        code, _, err = run(capsys, "region", "--B", "0")
        assert code == 1


class TestConfigAndOutput:
    def test_config_file_defaults(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("B = 5\nchannel = psi2\nm_range = -2..-2\n")
        code, out, _ = run(capsys, "--config", str(cfgfile), "spectrum")
        assert code == 0
        assert "psi2,v1,-2,0,2.5" in out

    def test_flag_overrides_config(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("B = 5\n")
        code, out, _ = run(capsys, "--config", str(cfgfile), "region",
                           "--B", "2", "--channel", "psi2")
        assert code == 0
        ms = [int(ln.split(",")[1]) for ln in out.strip().splitlines()[1:]]
        assert max(ms) == 1  # allowed region of B=2, not B=5

    def test_output_file_and_env_dir(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("H2LANDAU_OUTDIR", str(tmp_path))
        code = main(["region", "--B", "5", "--channel", "psi2",
                     "-o", "region.csv"])
        capsys.readouterr()
        assert code == 0
        assert (tmp_path / "region.csv").read_text().startswith("channel,m,count")

    def test_plot_rendered_next_to_output(self, tmp_path, capsys):
        out = tmp_path / "levels.csv"
        code = main(["spectrum", "--B", "5", "--m-range", "-3..3",
                     "-o", str(out), "--plot"])
        capsys.readouterr()
        assert code == 0
        png = tmp_path / "levels.png"
        assert png.exists() and png.stat().st_size > 1000

    def test_plot_without_out_is_usage_error(self, capsys):
        code, _, err = run(capsys, "spectrum", "--B", "5",
                           "--m-range", "-2..0", "--plot")
        assert code == 1
        assert "--out" in err

    def test_bad_m_range(self, capsys):
        code, _, err = run(capsys, "spectrum", "--B", "5", "--m-range", "oops")
        assert code == 1
        assert "m range" in err


def test_no_command_prints_help(capsys):
    assert main([]) == 1
