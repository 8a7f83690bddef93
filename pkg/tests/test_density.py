from fractions import Fraction

import pytest

from fpfun.density import DensityTable, density_table, gn_fourier_exact, quadrature_fourier
from fpfun.errors import EvaluationDomainError
from fpfun.fp import ProblemSpec, fn_eval, hk_multiplicity

GRID = (0.5, 1.0, 2.0, 4.0, -1.5)


def tent(x):
    return min(x, 2 - x) if 0 <= x <= 2 else 0.0


class TestDensityTable:
    def test_level_zero_origin_value(self, suite_problems):
        for name, (problem, _) in suite_problems.items():
            table = density_table(problem, 0)
            assert table.value_at_index(0) == 1, name

    def test_mass_equals_level_value_exactly(self, suite_problems):
        for name, (problem, _) in suite_problems.items():
            for n in range(4):
                table = density_table(problem, n)
                assert table.mass() == hk_multiplicity(problem, n), (name, n)

    def test_plane_tent_profile(self, plane):
        n = 3
        q = 2 ** n
        table = density_table(plane, n)
        for j in range(2 * q - 1):
            value = table.value_at_index(j)
            assert abs(float(value) - tent(j / q)) <= 2 / q

    def test_step_semantics(self, plane):
        table = density_table(plane, 2)
        assert table.value_at(Fraction(1, 8)) == table.value_at_index(0)
        assert table.value_at(Fraction(1, 4)) == table.value_at_index(1)

    def test_samples_are_exact_rationals(self, cusp):
        table = density_table(cusp, 2)
        for x, g in table.samples():
            assert isinstance(x, Fraction) and isinstance(g, Fraction)
            assert g > 0

    def test_dimension_zero_rejected(self, plane):
        flat = ProblemSpec(plane.ring, plane.ideal, dim_override=0)
        with pytest.raises(EvaluationDomainError):
            density_table(flat, 2)

    def test_support_right_endpoint_bounded(self, suite_problems):
        for name, (problem, _) in suite_problems.items():
            ends = [density_table(problem, n).support_right_endpoint() for n in range(1, 6)]
            bound = max(ends[:2]) * 2
            assert all(e <= bound for e in ends), name


class TestFourierBridge:
    def test_exact_equals_quadrature(self, suite_problems):
        for name, (problem, _) in suite_problems.items():
            for n in range(4):
                table = density_table(problem, n)
                for y in GRID:
                    gap = abs(
                        gn_fourier_exact(problem, n, y) - quadrature_fourier(table, y)
                    )
                    assert gap <= 1e-10, (name, n, y)

    def test_zero_agrees_with_level_value(self, suite_problems):
        for name, (problem, _) in suite_problems.items():
            for n in range(3):
                assert gn_fourier_exact(problem, n, 0) == fn_eval(problem, n, 0), name

    def test_tent_mass(self, plane):
        table = density_table(plane, 3)
        assert quadrature_fourier(table, 0) == 1.0 + 0j

    def test_empty_table(self):
        table = DensityTable(n=1, p=2, d=2, entries=())
        assert quadrature_fourier(table, 0) == 0j
        assert quadrature_fourier(table, 1.0) == 0j

    def test_correction_factor_washes_out(self, plane):
        # as n grows at fixed y the transform approaches the level value
        y = 1.0
        gaps = [
            abs(gn_fourier_exact(plane, n, y) - fn_eval(plane, n, y)) for n in (2, 4, 6, 8)
        ]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] <= 1e-2


class TestUniformConvergenceEcho:
    def test_sup_differences_nonincreasing(self, suite_problems):
        # d >= 2 standard graded problems: max |g_{n+1} - g_n| on the fine
        # grid does not increase beyond n = 3
        for name in ("plane", "parameter23", "three_generator"):
            problem, _ = suite_problems[name]
            sups = []
            for n in range(3, 7):
                t_now = density_table(problem, n)
                t_next = density_table(problem, n + 1)
                q_next = t_next.q
                top = max(t_now.support_right_endpoint(), t_next.support_right_endpoint())
                sup = Fraction(0)
                for j in range(int(top * q_next) + 1):
                    x = Fraction(j, q_next)
                    sup = max(sup, abs(t_next.value_at(x) - t_now.value_at(x)))
                sups.append(sup)
            assert all(b <= a for a, b in zip(sups, sups[1:])), (name, sups)
