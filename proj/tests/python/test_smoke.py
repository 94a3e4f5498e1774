"""Smoke tests for the python module and the CLI surface.

Run through ctest, which points PYTHONPATH at the built extension module
and BECFIBER_CLI at the command-line binary.
"""

import json
import math
import os
import subprocess

import pytest

becfiber = pytest.importorskip("becfiber")

SQRT2 = math.sqrt(2.0)


def reference_geometry(n_atoms=10, theta=0.0, sigma_z=100.0):
    beam = becfiber.GaussianBeam(SQRT2 * 50.0)
    cloud = becfiber.BecCloud(50.0, sigma_z)
    return becfiber.ScatterGeometry(beam, cloud, theta=theta, n_atoms=n_atoms)


class TestModule:
    def test_version(self):
        assert becfiber.__version__

    def test_erfcx(self):
        assert becfiber.erfcx(0.0) == 1.0
        assert becfiber.erfcx(35.355339) == pytest.approx(0.015951315810731466, rel=1e-10)

    def test_limit_values(self):
        geometry = reference_geometry()
        xi = becfiber.xi(geometry)
        assert xi.exact == pytest.approx(2.0 / 3.0, rel=0.005)
        xi0 = becfiber.xi0(geometry)
        assert abs(xi0.value) ** 2 == pytest.approx(0.25, rel=0.01)
        assert xi0.closed_form is not None
        assert abs(xi0.closed_form) == pytest.approx(abs(xi0.value), rel=1e-8)

    def test_channel_rates_scaling(self):
        r1 = becfiber.channel_rates(reference_geometry(n_atoms=5))
        r2 = becfiber.channel_rates(reference_geometry(n_atoms=10))
        assert r2.side_prefactor == pytest.approx(2.0 * r1.side_prefactor, rel=1e-12)
        assert r2.forward_prefactor == pytest.approx(4.0 * r1.forward_prefactor, rel=1e-12)

    def test_critical_angle(self):
        dominated = becfiber.critical_angle(reference_geometry(n_atoms=2))
        assert dominated.dominated_everywhere
        assert dominated.theta_star is None
        found = becfiber.critical_angle(reference_geometry(n_atoms=10))
        assert found.theta_star is not None
        assert 0.0 < found.theta_star < 0.1

    def test_optimal_waist(self):
        cloud = becfiber.BecCloud(50.0, 100.0)
        best = becfiber.optimal_waist(cloud, 1, 0.0, (10.0, 250.0))
        assert best.w0_bar / (SQRT2 * 50.0) == pytest.approx(1.0, abs=0.005)

    def test_scans(self):
        table = becfiber.theta_scan(reference_geometry(), [0.0, 0.02, 0.05])
        assert table.columns == ["theta", "xi0_sq", "xi_over_n"]
        assert len(table.rows) == 3
        assert not table.has_errors()
        sweep = becfiber.n_sweep(reference_geometry(), [1, 10, 100])
        assert sweep.rows[0][2] == 0.0  # N = 1 never crosses
        assert sweep.rows[1][2] == 1.0 and sweep.rows[2][2] == 1.0
        assert sweep.rows[1][1] < sweep.rows[2][1]

    def test_epsilon(self):
        times = [0.01 * i for i in range(201)]
        times[0] = 0.0
        trace = becfiber.epsilon_amplitude(
            becfiber.PulseEnvelope.constant(), becfiber.PulseEnvelope.constant(), times
        )
        assert trace.epsilon[-1].real == pytest.approx(-0.5 * times[-1] ** 2, abs=1e-10)
        population = becfiber.perturbative_population(trace)
        assert population[-1] == pytest.approx(times[-1] ** 4 / 4.0, rel=1e-8)

    def test_brute_oracle(self):
        geometry = reference_geometry(n_atoms=1)
        exact = becfiber.xi(geometry).exact
        assert becfiber.xi_brute_3d(geometry, 64) == pytest.approx(exact, rel=1e-4)

    def test_mode_function(self):
        beam = becfiber.GaussianBeam(2.0)
        assert abs(becfiber.mode_function(beam, (0.0, 0.0, 0.0))) == pytest.approx(1.0)
        cloud = becfiber.BecCloud(1.0, 1.0)
        assert becfiber.bec_wavefunction(cloud, (0.0, 0.0, 0.0)) == pytest.approx(
            (2.0 * math.pi) ** -0.75
        )

    def test_validation_errors(self):
        with pytest.raises(ValueError):
            becfiber.BecCloud(-1.0, 1.0)
        with pytest.raises(ValueError):
            reference_geometry(theta=-0.1)


@pytest.fixture(scope="module")
def cli():
    path = os.environ.get("BECFIBER_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("BECFIBER_CLI not set")
    return path


def run_cli(cli, *args, expect=0):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    assert proc.returncode == expect, proc.stdout + proc.stderr
    return proc


def stdout_values(proc):
    values = {}
    for line in proc.stdout.splitlines():
        if " = " in line:
            key, _, value = line.partition(" = ")
            try:
                values[key.strip()] = float(value)
            except ValueError:
                pass
    return values


class TestCli:
    def test_xi_defaults(self, cli):
        values = stdout_values(run_cli(cli, "xi", "--sigma", "50", "--sigma-z", "100"))
        assert values["xi_exact"] == pytest.approx(2.0 / 3.0, rel=0.005)

    def test_xi_brute_flag(self, cli):
        values = stdout_values(run_cli(cli, "xi", "--brute", "64"))
        assert values["xi_brute_3d"] == pytest.approx(values["xi_exact"], rel=1e-4)

    def test_xi0_theta_zero(self, cli):
        values = stdout_values(
            run_cli(cli, "xi0", "--sigma", "50", "--sigma-z", "100", "--theta", "0")
        )
        assert values["xi0_sq"] == pytest.approx(0.25, rel=0.01)
        assert values["xi0_closed_im"] == pytest.approx(values["xi0_im"], rel=1e-8)

    def test_usage_errors(self, cli):
        run_cli(cli, "xi0", "--theta", "-0.1", expect=1)
        run_cli(cli, "critical-angle", "--n", "0", expect=1)
        run_cli(cli, "scan-theta", "--theta-steps", "1", expect=1)
        run_cli(cli, "no-such-command", expect=1)

    def test_non_convergence_exit_code(self, cli):
        # backward scattering off a hugely elongated cloud exhausts the
        # evaluation budget: distinct numerical-failure status
        proc = run_cli(cli, "xi0", "--theta", "3.141592653589793",
                       "--sigma-z", "20000", expect=2)
        assert "numerical error" in proc.stderr

    def test_partial_scan_exit_code(self, cli, tmp_path):
        # same failure inside a scan: surviving rows are kept, the failed
        # one is marked, and the exit status signals partial success
        out = tmp_path / "partial.csv"
        run_cli(cli, "scan-theta", "--sigma-z", "20000", "--theta-min", "0",
                "--theta-max", "3.141", "--theta-steps", "2", "--out", str(out),
                expect=3)
        text = out.read_text()
        assert "# error row 1:" in text
        assert text.splitlines()[-2].endswith(",0")  # theta = 0 row evaluated
        assert text.splitlines()[-1].endswith(",1")  # backward row marked

    def test_envelope_file(self, cli, tmp_path):
        env = tmp_path / "env.txt"
        env.write_text("# time amplitude\n0 0\n0.5 1\n1.0 1\n1.5 0\n")
        values = stdout_values(
            run_cli(cli, "epsilon", "--drive", f"file:{env}", "--readout", "const:2",
                    "--t-max", "2", "--steps", "200")
        )
        # hand integration: drive area ramps to 1, epsilon(2) = -2 * 1.25
        assert values["epsilon_final_re"] == pytest.approx(-2.5, abs=1e-9)

    def test_scan_theta_outputs(self, cli, tmp_path):
        out = tmp_path / "scan.csv"
        run_cli(
            cli, "scan-theta", "--n", "10", "--theta-min", "0", "--theta-max", "0.06",
            "--theta-steps", "50", "--out", str(out), "--plot",
        )
        text = out.read_text()
        assert text.startswith("# tool = becfiber\n")
        assert "# w0_bar = " in text  # defaulted waist is echoed
        header, first_row = None, None
        for line in text.splitlines():
            if line.startswith("#"):
                continue
            if header is None:
                header = line
            elif first_row is None:
                first_row = line
        assert header == "theta,xi0_sq,xi_over_n"
        cells = [float(c) for c in first_row.split(",")]
        assert cells[0] == 0.0
        assert cells[1] == pytest.approx(0.25, rel=0.01)
        svg = (tmp_path / "scan.svg").read_text()
        assert svg.startswith("<svg xmlns=")
        assert "stroke-dasharray" in svg

        # byte-identical reruns
        rerun = tmp_path / "again.csv"
        run_cli(
            cli, "scan-theta", "--n", "10", "--theta-min", "0", "--theta-max", "0.06",
            "--theta-steps", "50", "--out", str(rerun),
        )
        assert rerun.read_text() == text

    def test_scan_theta_json(self, cli, tmp_path):
        out = tmp_path / "scan.json"
        run_cli(
            cli, "scan-theta", "--theta-steps", "10", "--format", "json", "--out", str(out)
        )
        doc = json.loads(out.read_text())
        assert set(doc) == {"config", "columns", "rows", "errors"}
        assert doc["columns"] == ["theta", "xi0_sq", "xi_over_n"]
        assert len(doc["rows"]) == 10
        assert doc["config"]["command"] == "scan-theta"
        assert doc["errors"] == []

    def test_critical_angle_and_sweep(self, cli, tmp_path):
        proc = run_cli(cli, "critical-angle", "--n", "2")
        assert "dominated everywhere" in proc.stdout

        out = tmp_path / "sweep.csv"
        run_cli(cli, "sweep-n", "--n", "10,100,1000,10000", "--out", str(out))
        rows = [
            [float(c) for c in line.split(",")]
            for line in out.read_text().splitlines()
            if line and not line.startswith("#") and not line.startswith("n,")
        ]
        stars = [row[1] for row in rows]
        assert all(row[2] == 1.0 for row in rows)
        assert stars == sorted(stars) and len(set(stars)) == len(stars)

    def test_optimize_waist(self, cli):
        values = stdout_values(run_cli(cli, "optimize-waist", "--sigma", "50", "--sigma-z", "100"))
        assert values["w0_over_sqrt2_sigma"] == pytest.approx(1.0, abs=0.005)

    def test_epsilon(self, cli):
        values = stdout_values(
            run_cli(cli, "epsilon", "--drive", "const:1", "--readout", "const:1",
                    "--t-max", "2", "--steps", "64")
        )
        assert values["epsilon_final_abs2"] == pytest.approx(4.0, abs=1e-8)

    def test_degrees_flag(self, cli):
        radians = stdout_values(run_cli(cli, "xi0", "--theta", "0.0174532925199433"))
        degrees = stdout_values(run_cli(cli, "xi0", "--theta", "1", "--degrees"))
        assert degrees["xi0_sq"] == pytest.approx(radians["xi0_sq"], rel=1e-9)

    def test_wavelength_conversion(self, cli):
        # sigma = 50/k_d in the same unit as the wavelength gives sigma_bar = 50
        lam = 0.795e-6
        k_d = 2.0 * math.pi / lam
        metric = stdout_values(
            run_cli(cli, "xi", "--wavelength", str(lam), "--sigma", str(50.0 / k_d),
                    "--sigma-z", str(100.0 / k_d))
        )
        plain = stdout_values(run_cli(cli, "xi", "--sigma", "50", "--sigma-z", "100"))
        assert metric["xi_exact"] == pytest.approx(plain["xi_exact"], rel=1e-9)
