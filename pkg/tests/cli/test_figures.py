"""
Unit tests for figure reproduction tables
"""
import os
import unittest
from unittest.mock import patch

from onebit.cli.figures import FIGURES, figure2_grid, reproduce_figure
from onebit.replica.saddle import SolverOptions
from onebit.schemas.results import FiniteComparisonRow, SeriesRow, TradeoffRow
from onebit.schemas.run_config import FigureParams

SLOW = os.environ.get("ONEBIT_SLOW_TESTS") == "1"


class TestFigureGrids(unittest.TestCase):

    def test_all_figures_registered(self):
        self.assertEqual(sorted(FIGURES), ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6"])

    def test_surface_grid(self):
        grid = figure2_grid(0.1)
        self.assertEqual(len(grid), 100)
        self.assertAlmostEqual(float(grid[0]), 0.1)
        self.assertAlmostEqual(float(grid[-1]), 10.0)
        self.assertEqual(len(figure2_grid(1.1)), 10)


class TestReducedFigures(unittest.TestCase):

    def setUp(self):
        self.options = SolverOptions()

    @patch("onebit.cli.figures.FIG6_STEPS", 2)
    @patch("onebit.cli.figures.FIG6_LEVELS", (0.7,))
    def test_tradeoff_table(self):
        table = reproduce_figure(FigureParams(figure="fig6"), self.options)
        self.assertIs(table.row_type, TradeoffRow)
        self.assertEqual(table.notes["figure"], "fig6")
        self.assertEqual([row.alpha for row in table.rows], [5.0, 10.0])
        for row in table.rows:
            self.assertIsNotNone(row.snr_linear)
            self.assertLess(row.rel_diff, 0.1)

    @patch("onebit.cli.figures.FIG5_SNR_DB", (0.0, 10.0))
    def test_regime_comparison_series(self):
        table = reproduce_figure(FigureParams(figure="fig5"), self.options)
        self.assertIs(table.row_type, SeriesRow)
        series = {row.series for row in table.rows}
        self.assertEqual(series, {"replica", "large_alpha", "small_alpha"})
        self.assertEqual(len(table.rows), 8)
        self.assertTrue(all(row.error is None for row in table.rows))

    @patch("onebit.cli.figures.FIG1_SNR_DB", (0.0,))
    @patch("onebit.cli.figures.FIG1_ALPHAS", (0.5, 1.0))
    def test_finite_comparison(self):
        params = FigureParams(figure="fig1", channels=10, m=4)
        table = reproduce_figure(params, self.options)
        self.assertIs(table.row_type, FiniteComparisonRow)
        self.assertEqual([row.n for row in table.rows], [2, 4])
        for row in table.rows:
            self.assertAlmostEqual(row.abs_diff, abs(row.mean - row.c_avg))

    @unittest.skipUnless(SLOW, "set ONEBIT_SLOW_TESTS=1 to run the desk-scale figure")
    def test_desk_scale_finite_comparison(self):
        table = reproduce_figure(FigureParams(figure="fig1"), self.options)
        self.assertEqual(len(table.rows), 49)
        self.assertTrue(all(row.error is None for row in table.rows))
        compared = [row for row in table.rows if row.c_avg <= 0.7]
        self.assertGreater(len(compared), 0)
        for row in compared:
            self.assertLessEqual(row.abs_diff, 0.05, msg=(row.alpha, row.snr_db))


if __name__ == "__main__":
    unittest.main()
