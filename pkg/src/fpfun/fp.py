"""Frobenius-Poincare functions of graded problems.

For a problem (R, I) with dimension d, level n, and q = p^n, the level-n
function is

    F_n(y) = q^(-d) * sum_j  ell_j * exp(-i*y*j/q)

with ell_j the exact graded lengths of R/I^[q].  The sequence F_n converges
uniformly on compact sets to an entire function; this module evaluates F_n,
estimates the limit with a geometric tail bound fitted from successive
differences, and exposes the exact-integer quantities behind it: Hilbert-Kunz
multiplicities, power-series moment estimators, and alternating Betti
polynomials obtained through the Hilbert-series quotient identity.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import EvaluationDomainError, StructureError
from .hilbert import (
    HilbertSeries,
    LaurentPolynomialZ,
    chi_series,
    hilbert_samuel,
    series_of_ring,
    series_of_table,
)
from .ideals import GradedLengthTable, HomogeneousIdeal, RingPresentation, graded_lengths


class ProblemSpec:
    """A graded ring, a finite-colength homogeneous ideal, and a dimension.

    The dimension defaults to the Krull dimension of the ring read off its
    Hilbert series; ``dim_override`` substitutes any non-negative integer for
    the normalization exponent.  Computed length tables are cached per level;
    the cache allows concurrent reads with insert-once writes.
    """

    def __init__(self, ring: RingPresentation, ideal: HomogeneousIdeal, dim_override=None):
        g = ideal.generators[0]
        if g.field != ring.field or g.grading != ring.grading:
            raise StructureError("ideal and ring live over different fields or gradings")
        if dim_override is not None and (not isinstance(dim_override, int) or dim_override < 0):
            raise StructureError("dim_override must be a non-negative integer")
        self.ring = ring
        self.ideal = ideal
        self.dim_override = dim_override
        self._tables: dict = {}
        self._lock = threading.Lock()
        self._ring_series = None

    @property
    def prime(self) -> int:
        return self.ring.field.p

    def ring_series(self) -> HilbertSeries:
        if self._ring_series is None:
            series = series_of_ring(self.ring)
            with self._lock:
                if self._ring_series is None:
                    self._ring_series = series
        return self._ring_series

    @property
    def ring_dimension(self) -> int:
        return hilbert_samuel(self.ring_series())[0]

    @property
    def ring_multiplicity(self) -> Fraction:
        return hilbert_samuel(self.ring_series())[1]

    @property
    def dimension(self) -> int:
        if self.dim_override is not None:
            return self.dim_override
        return self.ring_dimension

    def table(self, n: int) -> GradedLengthTable:
        """The exact graded length table at level n (cached, insert-once)."""
        hit = self._tables.get(n)
        if hit is not None:
            return hit
        computed = graded_lengths(self.ring, self.ideal, n)
        with self._lock:
            return self._tables.setdefault(n, computed)


@dataclass(frozen=True)
class LimitEstimate:
    """A limit value with a fitted geometric tail bound.

    ``error_bound`` is D * p^(-n_used) * p/(p-1), where D is the largest
    observed p^m * |F_{m+1} - F_m| at this point for m < n_used; the observed
    successive differences are kept for diagnostics.
    """

    value: complex
    n_used: int
    error_bound: float
    cauchy_constants: tuple
    differences: tuple


def fn_eval(problem: ProblemSpec, n: int, y: complex) -> complex:
    """Evaluate the level-n normalized Hilbert series at the complex point y.

    The coefficients stay exact integers; complex arithmetic enters only in
    the final sum.  At y = 0 the value is the exact rational q^(-d) * total
    length, converted at the boundary.
    """
    table = problem.table(n)
    d = problem.dimension
    q = problem.prime ** n
    if y == 0:
        return complex(float(Fraction(table.total(), q ** d)))
    w = -1j * complex(y) / q
    total = 0j
    for j, c in table.lengths.items():
        total += c * cmath.exp(w * j)
    return total / q ** d


def hk_multiplicity(problem: ProblemSpec, n: int) -> Fraction:
    """The exact rational q^(-d) * length of R/I^[q] at level n."""
    q = problem.prime ** n
    return Fraction(problem.table(n).total(), q ** problem.dimension)


def fp_limit(problem: ProblemSpec, y_grid: Sequence[complex], n_max: int) -> dict:
    """Estimate the limit function on a grid of points.

    Returns, per point, the level-n_max value together with a tail bound of
    the geometric Cauchy form fitted from the observed successive differences
    at that point.  Requires n_max >= 2.
    """
    if n_max < 2:
        raise StructureError("n_max must be at least 2 to fit a tail bound")
    p = problem.prime
    out = {}
    for y in y_grid:
        values = [fn_eval(problem, m, y) for m in range(n_max + 1)]
        diffs = [abs(values[m + 1] - values[m]) for m in range(n_max)]
        fitted = max((p ** m * diffs[m] for m in range(n_max)), default=0.0)
        bound = fitted * p ** (-n_max) * p / (p - 1)
        ratio = 0.0
        for m in range(3, n_max - 1):
            if diffs[m] > 1e-300:
                ratio = max(ratio, diffs[m + 1] / diffs[m])
        out[y] = LimitEstimate(
            value=values[n_max],
            n_used=n_max,
            error_bound=bound,
            cauchy_constants=(fitted, ratio),
            differences=tuple(diffs),
        )
    return out


def series_coefficient_estimate(problem: ProblemSpec, m: int, n: int) -> complex:
    """Level-n estimate of the m-th power series coefficient at the origin.

    The estimator is (-i)^m / m! * q^(-(d+m)) * sum_j j^m ell_j; the moment
    sum is an exact integer, so the value lies exactly on the ray (-i)^m * R+.
    """
    if m < 0:
        raise StructureError("coefficient order must be non-negative")
    table = problem.table(n)
    q = problem.prime ** n
    d = problem.dimension
    moment = table.moment(m)
    magnitude = Fraction(moment, q ** (d + m) * math.factorial(m))
    return (-1j) ** m * float(magnitude)


def betti_alternating_polynomial(
    problem: ProblemSpec, hsop_degrees: Sequence[int], n: int
) -> LaurentPolynomialZ:
    """Alternating graded Betti sums over the parameter subring, per degree.

    With S the polynomial subring on a homogeneous system of parameters of
    degrees hsop_degrees, the polynomial sum_j B(j, n) t^j is the exact
    quotient H_{R/I^[q]}(t) / H_S(t); the division is exact because H_S is
    1 / prod(1 - t^d).
    """
    degrees = _checked_degrees(hsop_degrees)
    table_series = series_of_table(problem.table(n))
    hsop_series = HilbertSeries(LaurentPolynomialZ.one(), degrees)
    chi = chi_series(table_series, HilbertSeries.one(), hsop_series)
    if chi.denominator_degrees:
        raise StructureError("alternating Betti series did not reduce to a Laurent polynomial")
    return chi.numerator


@dataclass(frozen=True)
class BettiCheckReport:
    """Per-point deviation between the Betti form and the direct evaluation."""

    n: int
    deviations: Mapping
    max_deviation: float


def betti_limit_check(
    problem: ProblemSpec,
    hsop_degrees: Sequence[int],
    y_grid: Sequence[complex],
    n_max: int,
) -> BettiCheckReport:
    """Check the Betti-number form of F_n against fn_eval on a grid.

    The level-n expressions B_n(z) / prod(q (1 - z^d)) with z = exp(-iy/q)
    and fn_eval(n, y) are equal by an exact rational-function identity, so
    the reported deviation isolates floating-point error only.
    """
    degrees = _checked_degrees(hsop_degrees)
    betti = betti_alternating_polynomial(problem, degrees, n_max)
    q = problem.prime ** n_max
    deviations = {}
    for y in y_grid:
        if y == 0:
            raise EvaluationDomainError("betti_limit_check needs nonzero grid points")
        z = cmath.exp(-1j * complex(y) / q)
        denom = 1.0 + 0j
        for d in degrees:
            denom *= q * (1 - z ** d)
        lhs = betti.evaluate(z) / denom
        deviations[y] = abs(lhs - fn_eval(problem, n_max, y))
    return BettiCheckReport(
        n=n_max,
        deviations=deviations,
        max_deviation=max(deviations.values(), default=0.0),
    )


def cm_chi_eval(problem: ProblemSpec, hsop_degrees: Sequence[int], n: int, y: complex) -> complex:
    """Level-n Koszul-homology form of the function for Cohen-Macaulay rings.

    Evaluates chi(R/(hsop), R/I^[q]) at z = exp(-iy/q), normalized by
    prod(d_i) * (iy)^d.  The chi series comes from the Hilbert-series quotient
    with H_{R/(hsop)} = prod(1 - t^d_i) * H_R, which is exact when the hsop is
    a regular sequence; the caller asserts the Cohen-Macaulay hypothesis.
    """
    if y == 0:
        raise EvaluationDomainError("the chi form has a pole at y = 0; use the series path")
    degrees = _checked_degrees(hsop_degrees)
    ring_series = problem.ring_series()
    mod_numerator = ring_series.numerator
    for d in degrees:
        mod_numerator = mod_numerator * LaurentPolynomialZ.one_minus_power(d)
    mod_series = HilbertSeries(mod_numerator, ring_series.denominator_degrees)
    chi = chi_series(mod_series, series_of_table(problem.table(n)), ring_series)
    if chi.denominator_degrees:
        raise StructureError("chi series did not reduce to a Laurent polynomial")
    q = problem.prime ** n
    z = cmath.exp(-1j * complex(y) / q)
    scale = 1
    for d in degrees:
        scale *= d
    return chi.numerator.evaluate(z) / (scale * (1j * complex(y)) ** len(degrees))


def _checked_degrees(hsop_degrees: Sequence[int]) -> tuple:
    degrees = tuple(hsop_degrees)
    if not degrees:
        raise StructureError("need at least one parameter degree")
    for d in degrees:
        if not isinstance(d, int) or d < 1:
            raise StructureError(f"parameter degree {d!r} must be a positive integer")
    return degrees
