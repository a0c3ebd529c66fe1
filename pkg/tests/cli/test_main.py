"""
Unit tests for the command-line interface
"""
import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

import pandas as pd
from pydantic import ValidationError

from onebit.cli.main import (
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    build_parser,
    config_from_args,
    main,
    run,
)
from onebit.common.config import Settings
from onebit.common.errors import ConvergenceError
from onebit.finite.exact import FiniteSystem, exact_capacity
from onebit.replica.capacity import capacity
from onebit.replica.saddle import SystemPoint
from onebit.schemas.results import CapacityRow
from onebit.schemas.run_config import CapacityParams, Command, OutputFormat, RunConfig


def _config(*argv: str) -> RunConfig:
    return config_from_args(build_parser().parse_args(list(argv)))


def _run(*argv: str):
    stdout, stderr = io.StringIO(), io.StringIO()
    status = run(_config(*argv), stdout=stdout, stderr=stderr)
    return status, stdout.getvalue(), stderr.getvalue()


class TestArgumentHandling(unittest.TestCase):

    @patch("sys.stderr", new_callable=io.StringIO)
    def test_missing_snr_is_usage_error(self, mock_stderr):
        self.assertEqual(main(["capacity", "--alpha", "1"]), EXIT_USAGE)
        record = json.loads(mock_stderr.getvalue().strip())
        self.assertEqual(record["error"], "usage")

    @patch("sys.stderr", new_callable=io.StringIO)
    def test_unknown_command_is_usage_error(self, mock_stderr):
        self.assertEqual(main(["no-such-command"]), EXIT_USAGE)

    @patch("sys.stderr", new_callable=io.StringIO)
    def test_invalid_values_are_usage_errors(self, mock_stderr):
        self.assertEqual(main(["capacity", "--rho", "1", "--alpha", "-1"]), EXIT_USAGE)
        argv = ["contour", "--target", "0.5", "--alpha-min", "3", "--alpha-max", "1"]
        self.assertEqual(main(argv), EXIT_USAGE)
        lines = mock_stderr.getvalue().strip().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(all(json.loads(line)["error"] == "usage" for line in lines))

    def test_snr_in_decibels(self):
        config = _config("capacity", "--snr-db", "10", "--alpha", "1")
        self.assertEqual(config.parameters.rho, 10.0)
        sweep = _config("sweep", "--snr-db", "0", "10", "--alpha", "1")
        self.assertEqual(sweep.parameters.rho, [1.0, 10.0])

    def test_typed_parameters(self):
        config = _config("capacity", "--rho", "2", "--alpha", "3", "--complex")
        self.assertEqual(config.command, Command.CAPACITY)
        self.assertIsInstance(config.parameters, CapacityParams)
        self.assertTrue(config.parameters.complex_signals)

    def test_global_options_after_subcommand(self):
        argv = ["capacity", "--rho", "0", "--alpha", "1", "--format", "json", "--workers", "2"]
        args = build_parser().parse_args(argv)
        self.assertEqual(args.format, "json")
        self.assertEqual(args.workers, 2)
        config = config_from_args(args)
        self.assertEqual(config.format, OutputFormat.JSON)

    def test_global_options_before_subcommand_survive(self):
        args = build_parser().parse_args(
            ["--format", "json", "--output", "out.csv", "saddle", "--rho", "1", "--alpha", "1"]
        )
        self.assertEqual(args.format, "json")
        self.assertEqual(args.output, "out.csv")
        self.assertEqual(build_parser().parse_args(["threshold"]).format, "csv")

    @patch("sys.stderr", new_callable=io.StringIO)
    def test_invalid_environment_is_usage_error(self, mock_stderr):
        with self.assertRaises(ValidationError) as ctx:
            Settings(quad_order=3)
        with patch("onebit.cli.main.settings_error", ctx.exception):
            self.assertEqual(main(["capacity", "--rho", "1", "--alpha", "1"]), EXIT_USAGE)
        lines = mock_stderr.getvalue().strip().splitlines()
        self.assertEqual(len(lines), 1)
        record = json.loads(lines[0])
        self.assertEqual(record["error"], "usage")
        self.assertEqual(record["source"], "environment")
        self.assertIn("quad_order", record["message"])

    def test_run_config_rejects_unknown_keys(self):
        with self.assertRaises(ValidationError):
            RunConfig(command="capacity", parameters={"rho": 1.0, "alpha": 1.0, "bogus": 2})
        with self.assertRaises(ValidationError):
            RunConfig(command="capacity", parameters={"rho": 1.0, "alpha": 1.0}, extra=True)


class TestCommands(unittest.TestCase):

    def test_capacity_csv(self):
        status, out, err = _run("capacity", "--rho", "2.07", "--alpha", "3.4")
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(err, "")
        self.assertIn("# command=capacity", out)
        self.assertIn("# param_alpha=3.4", out)
        self.assertIn("# quad_order=", out)
        frame = pd.read_csv(io.StringIO(out), comment="#")
        self.assertEqual(list(frame.columns), list(CapacityRow.model_fields))
        self.assertEqual(len(frame), 1)
        self.assertAlmostEqual(float(frame["c_avg"][0]), 0.80, delta=0.01)

    def test_capacity_complex_column(self):
        argv = ("--format", "json", "capacity", "--rho", "1", "--alpha", "1", "--complex")
        status, out, _ = _run(*argv)
        self.assertEqual(status, EXIT_OK)
        row = json.loads(out)["rows"][0]
        self.assertEqual(row["c_complex"], 2.0 * row["c_avg"])

    def test_json_document_carries_units(self):
        status, out, _ = _run("--format", "json", "capacity", "--rho", "1", "--alpha", "1")
        self.assertEqual(status, EXIT_OK)
        document = json.loads(out)
        self.assertEqual(document["command"], "capacity")
        self.assertEqual(document["units"]["c_avg"], "bits_per_transmitter")
        self.assertEqual(document["units"]["snr_linear"], "snr_linear")
        self.assertEqual(document["units"]["snr_db"], "dB")
        expected = capacity(SystemPoint(rho=1.0, alpha=1.0)).c_avg
        self.assertEqual(document["rows"][0]["c_avg"], expected)

    def test_exact_matches_library(self):
        status, out, _ = _run(
            "--format", "json", "exact", "--m", "2", "--n", "3", "--rho", "1",
            "--channels", "4", "--seed", "3",
        )
        self.assertEqual(status, EXIT_OK)
        row = json.loads(out)["rows"][0]
        expected = exact_capacity(FiniteSystem(m=2, n=3, rho=1.0), 4, seed=3)
        self.assertEqual(row["mean"], expected.mean)
        self.assertEqual(row["std_err"], expected.std_err)
        self.assertEqual(row["rng_algorithm"], "numpy.PCG64")
        self.assertEqual(row["method"], "enumerate_outputs")

    def test_approx_lists_every_regime(self):
        status, out, _ = _run("--format", "json", "approx", "--rho", "0.1", "--alpha", "1")
        self.assertEqual(status, EXIT_OK)
        rows = json.loads(out)["rows"]
        self.assertEqual(
            [r["regime"] for r in rows], ["high_snr", "low_snr", "large_alpha", "small_alpha"]
        )
        # infinite SNR is emitted as null in JSON
        self.assertIsNone(rows[0]["snr_linear"])
        self.assertTrue(all(r["c_full"] == rows[0]["c_full"] for r in rows))

    def test_contour_without_solution_is_not_a_failure(self):
        status, out, _ = _run(
            "contour", "--target", "0.8", "--alpha-min", "0.5", "--alpha-max", "0.5",
            "--steps", "1", "--no-approx",
        )
        self.assertEqual(status, EXIT_OK)
        frame = pd.read_csv(io.StringIO(out), comment="#")
        self.assertTrue(pd.isna(frame["snr_linear"][0]))
        self.assertIsInstance(frame["error"][0], str)

    def test_fit_e(self):
        status, out, _ = _run("--format", "json", "fit-e", "--points", "20")
        self.assertEqual(status, EXIT_OK)
        row = json.loads(out)["rows"][0]
        self.assertEqual(row["a_printed"], -0.3)
        self.assertEqual(row["b_printed"], 1.8)
        self.assertEqual(row["points"], 20)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out.csv")
            stdout = io.StringIO()
            config = _config("--output", path, "saddle", "--rho", "1", "--alpha", "1")
            self.assertEqual(run(config, stdout=stdout, stderr=io.StringIO()), EXIT_OK)
            self.assertEqual(stdout.getvalue(), "")
            frame = pd.read_csv(path, comment="#")
        self.assertEqual(len(frame), 1)
        self.assertIn("q", frame.columns)


class TestFailures(unittest.TestCase):

    @patch("onebit.cli.main.capacity")
    def test_numerical_failure_exit_status(self, mock_capacity):
        mock_capacity.side_effect = ConvergenceError(
            "stuck", q=0.4, E=1.0, residual=1e-3, iterations=5
        )
        status, out, err = _run("capacity", "--rho", "1", "--alpha", "1")
        self.assertEqual(status, EXIT_NUMERICAL)
        self.assertEqual(out, "")
        record = json.loads(err.strip())
        self.assertEqual(record["error"], "ConvergenceError")
        self.assertEqual(record["cell"]["alpha"], 1.0)

    @patch("onebit.sweep.grid.capacity")
    def test_partial_sweep_failure(self, mock_capacity):
        def flaky(point, options):
            if point.alpha > 1.0:
                raise ConvergenceError("stuck", q=0.4, E=1.0, residual=1e-3, iterations=5)
            return capacity(point, options)

        mock_capacity.side_effect = flaky
        status, out, err = _run("sweep", "--rho", "1", "--alpha", "0.5", "2")
        self.assertEqual(status, EXIT_NUMERICAL)
        frame = pd.read_csv(io.StringIO(out), comment="#")
        self.assertEqual(len(frame), 2)
        record = json.loads(err.strip())
        self.assertEqual(record["error"], "PartialFailure")
        self.assertEqual(record["cell"]["alpha"], 2.0)


if __name__ == "__main__":
    unittest.main()
