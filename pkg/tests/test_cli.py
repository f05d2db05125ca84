"""CLI tests: table content, byte determinism, the physical/dimensionless
round trip, output files, and exit codes."""

import io
import json
import math
from contextlib import redirect_stdout

import pytest

from susy_ladder.cli import RunConfig, build_parser, config_from_args, main, run


def capture(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


class TestSpectrumTables:
    def test_nr_spectrum_values(self):
        code, text = capture(["nr-spectrum", "--a", "1.5", "--b", "0.5",
                              "--levels", "3"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "n,energy"
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert values == pytest.approx([-0.02, -0.25 / 24.5, -0.25 / 40.5], rel=1e-15)

    def test_dirac_spectrum_degeneracy_pattern(self):
        code, text = capture(["dirac-spectrum", "--a", "1", "--b", "2", "--d0", "1",
                              "--mbar", "0.1", "--levels", "3", "--families", "a,c"])
        assert code == 0
        rows = [line.split(",") for line in text.strip().splitlines()[1:]]
        table = {(fam, int(n)): float(e) for fam, n, e in rows}
        assert table[("a", 0)] == pytest.approx(math.sqrt(1.01), rel=1e-15)
        assert table[("c", 0)] == table[("a", 1)]
        assert table[("c", 1)] == table[("a", 2)]

    def test_family_b_spectrum_is_negative_mirror(self):
        code, text = capture(["dirac-spectrum", "--a", "1", "--b", "2", "--d0", "1",
                              "--mbar", "0.1", "--levels", "2", "--families", "a,b"])
        assert code == 0
        rows = [line.split(",") for line in text.strip().splitlines()[1:]]
        table = {(fam, int(n)): float(e) for fam, n, e in rows}
        assert table[("b", 0)] == -table[("a", 0)]


class TestFigureTables:
    def test_fig2_columns_and_energies(self):
        code, text = capture(["fig2"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "rho,V0,G0,G1,G2,E0,E1,E2"
        assert len(lines) == 513
        first = [float(x) for x in lines[1].split(",")]
        assert first[5:] == pytest.approx([-0.02, -0.25 / 24.5, -0.25 / 40.5],
                                          rel=1e-15)

    def test_fig3_degenerate_energy_columns(self):
        code, text = capture(["fig3", "--format", "json"])
        assert code == 0
        doc = json.loads(text)
        cols = doc["data"]["columns"]
        assert cols[0] == "rho"
        assert "density_a0" in cols and "density_c2" in cols
        row = doc["data"]["rows"][0]
        value = {c: row[i] for i, c in enumerate(cols)}
        assert value["E_c0"] == value["E_a1"]
        assert value["E_c1"] == value["E_a2"]

    def test_fig3_densities_normalized(self):
        code, text = capture(["fig3"])
        lines = text.strip().splitlines()
        cols = lines[0].split(",")
        rho_idx, d_idx = cols.index("rho"), cols.index("density_a0")
        rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
        h = rows[1][rho_idx] - rows[0][rho_idx]
        total = sum(r[d_idx] for r in rows) * h
        assert total == pytest.approx(1.0, abs=5e-3)

    def test_nr_eigenfunctions_shape(self):
        code, text = capture(["nr-eigenfunctions", "--a", "1.5", "--b", "0.5",
                              "--levels", "2"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "rho,G0,G1"
        assert len(lines) == 513

    def test_dirac_eigenfunctions_shape(self):
        code, text = capture(["dirac-eigenfunctions", "--a", "1", "--b", "2",
                              "--d0", "1", "--mbar", "0.1", "--levels", "2",
                              "--families", "a"])
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "rho,density_a0,density_a1"


class TestDeterminism:
    def test_identical_runs_identical_bytes(self):
        argv = ["fig2", "--format", "json"]
        assert capture(argv) == capture(argv)
        argv = ["dirac-spectrum", "--a", "1", "--b", "2", "--d0", "1",
                "--mbar", "0.1"]
        assert capture(argv) == capture(argv)

    def test_physical_dimensionless_round_trip(self):
        phys = ["--hbar", "1", "--m", "1", "--c", "1", "--e", "1",
                "--k", "2", "--pz", "1", "--ell", "1.5"]
        lam = math.hypot(1.5, 2.0)
        a_nr = lam - 0.5
        b = 2.0
        _, from_phys = capture(["nr-spectrum", *phys, "--levels", "4"])
        _, from_dim = capture(["nr-spectrum", "--a", repr(a_nr), "--b", repr(b),
                               "--levels", "4"])
        assert from_phys == from_dim

        d0 = 1.0 * 1.5 / lam
        _, from_phys = capture(["dirac-spectrum", *phys, "--levels", "4"])
        _, from_dim = capture(["dirac-spectrum", "--a", repr(lam), "--b", repr(b),
                               "--d0", repr(d0), "--mbar", "1", "--levels", "4"])
        assert from_phys == from_dim

    def test_fixed_float_format(self):
        _, text = capture(["nr-spectrum", "--a", "1.5", "--b", "0.5",
                           "--levels", "1"])
        assert text.splitlines()[1] == "0,-2.0000000000000000e-02"


class TestConfigValidation:
    def test_mixed_styles_rejected(self):
        code, _ = capture(["nr-spectrum", "--a", "1.5", "--b", "0.5",
                           "--hbar", "1", "--m", "1", "--c", "1", "--e", "1",
                           "--k", "1", "--pz", "1", "--ell", "0"])
        assert code == 2

    def test_missing_parameters_rejected(self):
        code, _ = capture(["nr-spectrum"])
        assert code == 2

    def test_bad_family_rejected(self):
        code, _ = capture(["dirac-spectrum", "--a", "1", "--b", "2",
                           "--families", "a,x"])
        assert code == 2

    def test_bad_levels_rejected(self):
        code, _ = capture(["nr-spectrum", "--a", "1.5", "--b", "0.5",
                           "--levels", "0"])
        assert code == 2

    def test_no_bound_states_rejected(self):
        code, _ = capture(["nr-spectrum", "--hbar", "1", "--m", "1", "--c", "1",
                           "--e", "1", "--k", "-1", "--pz", "1", "--ell", "0"])
        assert code == 2

    def test_incomplete_physical_set_rejected(self):
        code, _ = capture(["nr-spectrum", "--hbar", "1", "--m", "1"])
        assert code == 2


class TestOutputFile:
    def test_out_writes_identical_content(self, tmp_path):
        target = tmp_path / "table.csv"
        argv = ["nr-spectrum", "--a", "1.5", "--b", "0.5", "--levels", "2"]
        _, stdout_text = capture(argv)
        code, piped = capture(argv + ["--out", str(target)])
        assert code == 0
        assert piped == ""
        assert target.read_text() == stdout_text

    def test_unwritable_out_path_maps_to_exit_2(self, tmp_path):
        code, _ = capture(["nr-spectrum", "--a", "1.5", "--b", "0.5",
                           "--out", str(tmp_path / "missing" / "t.csv")])
        assert code == 2

    def test_json_meta_echoes_config(self, tmp_path):
        target = tmp_path / "t.json"
        code, _ = capture(["nr-spectrum", "--a", "1.5", "--b", "0.5",
                           "--levels", "2", "--format", "json",
                           "--out", str(target)])
        assert code == 0
        doc = json.loads(target.read_text())
        assert doc["meta"]["mode"] == "nr-spectrum"
        assert doc["meta"]["levels"] == 2
        assert doc["meta"]["a"] == 1.5


class TestParser:
    def test_config_from_args_families(self):
        args = build_parser().parse_args(["dirac-spectrum", "--a", "1", "--b", "2",
                                          "--families", "a,c"])
        cfg = config_from_args(args)
        assert cfg.families == ("a", "c")
        assert cfg.mode == "dirac-spectrum"

    def test_run_config_style_detection(self):
        assert RunConfig(mode="fig2").style() == "default"
        assert RunConfig(mode="fig2", a=1.0).style() == "dimensionless"
        assert RunConfig(mode="fig2", hbar=1.0).style() == "physical"
        with pytest.raises(ValueError):
            RunConfig(mode="fig2", a=1.0, hbar=1.0).style()
