"""Exact Hilbert series arithmetic: integer Laurent polynomials, rational
series with denominators kept as products of (1 - t^d) factors, Hilbert-Samuel
multiplicities, and alternating Tor series via the Hilbert-series quotient
H_M * H_N / H_R.

No floating point enters series canonicalization; numeric evaluation happens
only in eval_series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import EvaluationDomainError, InexactDivisionError, StructureError
from .ideals import (
    GradedLengthTable,
    RingPresentation,
    buchberger,
    initial_ideal,
    staircase_numerator,
)


class LaurentPolynomialZ:
    """A Laurent polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping):
        clean = {}
        for e, c in coeffs.items():
            if not isinstance(e, int):
                raise StructureError(f"exponent {e!r} is not an integer")
            if c:
                clean[e] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomialZ is immutable")

    @classmethod
    def zero(cls) -> "LaurentPolynomialZ":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentPolynomialZ":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomialZ":
        return cls({exponent: coefficient})

    @classmethod
    def one_minus_power(cls, d: int) -> "LaurentPolynomialZ":
        """The factor 1 - t^d."""
        if d == 0:
            return cls.zero()
        return cls({0: 1, d: -1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise StructureError("zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise StructureError("zero polynomial has no valuation")
        return min(self.coeffs)

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def __add__(self, other: "LaurentPolynomialZ") -> "LaurentPolynomialZ":
        res = dict(self.coeffs)
        for e, c in other.coeffs.items():
            res[e] = res.get(e, 0) + c
        return LaurentPolynomialZ(res)

    def __neg__(self) -> "LaurentPolynomialZ":
        return LaurentPolynomialZ({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPolynomialZ") -> "LaurentPolynomialZ":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomialZ") -> "LaurentPolynomialZ":
        res: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                res[e] = res.get(e, 0) + c1 * c2
        return LaurentPolynomialZ(res)

    def value_at_one(self) -> int:
        return sum(self.coeffs.values())

    def evaluate(self, z: complex) -> complex:
        total = 0j
        for e, c in self.coeffs.items():
            total += c * z ** e
        return total

    def divide_exact(self, divisor: "LaurentPolynomialZ") -> "LaurentPolynomialZ":
        """Exact quotient; raises InexactDivisionError on any remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomialZ.zero()
        shift = self.valuation - divisor.valuation
        num = _dense(self)
        den = _dense(divisor)
        quot = [Fraction(0)] * (len(num) - len(den) + 1)
        if len(num) < len(den):
            raise InexactDivisionError("quotient would not be a Laurent polynomial")
        work = [Fraction(c) for c in num]
        lead = Fraction(den[-1])
        for i in range(len(quot) - 1, -1, -1):
            c = work[i + len(den) - 1] / lead
            quot[i] = c
            if c:
                for k, dc in enumerate(den):
                    work[i + k] -= c * dc
        if any(work):
            raise InexactDivisionError("division left a nonzero remainder")
        out = {}
        for i, c in enumerate(quot):
            if c:
                if c.denominator != 1:
                    raise InexactDivisionError("quotient has non-integer coefficients")
                out[i + shift] = int(c)
        return LaurentPolynomialZ(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPolynomialZ) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self.coeffs:
            return "LaurentPolynomialZ(0)"
        parts = []
        for e, c in self.items_sorted():
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*t^{e}")
        return "LaurentPolynomialZ(" + " + ".join(parts) + ")"


def _dense(poly: LaurentPolynomialZ):
    """Coefficient list from valuation to degree."""
    v, d = poly.valuation, poly.degree
    out = [0] * (d - v + 1)
    for e, c in poly.coeffs.items():
        out[e - v] = c
    return out


@dataclass(frozen=True)
class HilbertSeries:
    """A rational function numerator / prod(1 - t^d) over the integers.

    Denominator factors are kept as a multiset of positive degrees and never
    expanded in the representation.
    """

    numerator: LaurentPolynomialZ
    denominator_degrees: tuple = ()

    def __post_init__(self):
        degs = tuple(sorted(self.denominator_degrees))
        for d in degs:
            if not isinstance(d, int) or d < 1:
                raise StructureError(f"denominator degree {d!r} must be a positive integer")
        object.__setattr__(self, "denominator_degrees", degs)

    @classmethod
    def one(cls) -> "HilbertSeries":
        return cls(LaurentPolynomialZ.one(), ())

    def is_polynomial(self) -> bool:
        return not self.denominator_degrees

    def denominator_polynomial(self) -> LaurentPolynomialZ:
        """The expanded product of the (1 - t^d) factors."""
        out = LaurentPolynomialZ.one()
        for d in self.denominator_degrees:
            out = out * LaurentPolynomialZ.one_minus_power(d)
        return out

    def reduce(self) -> "HilbertSeries":
        """Cancel numerator factors (1 - t^d) against equal-degree denominator factors."""
        num = self.numerator
        remaining = list(self.denominator_degrees)
        changed = True
        while changed and not num.is_zero():
            changed = False
            for d in sorted(set(remaining), reverse=True):
                factor = LaurentPolynomialZ.one_minus_power(d)
                try:
                    num = num.divide_exact(factor)
                except InexactDivisionError:
                    continue
                remaining.remove(d)
                changed = True
                break
        return HilbertSeries(num, tuple(remaining))

    def multiply(self, other: "HilbertSeries") -> "HilbertSeries":
        return HilbertSeries(
            self.numerator * other.numerator,
            self.denominator_degrees + other.denominator_degrees,
        )

    def equal_as_rational(self, other: "HilbertSeries") -> bool:
        """Exact equality of rational functions by cross multiplication."""
        left = self.numerator * other.denominator_polynomial()
        right = other.numerator * self.denominator_polynomial()
        return left == right

    def series_coefficients(self, up_to: int) -> list:
        """Power-series expansion coefficients for degrees 0..up_to.

        Requires the numerator to have no negative exponents.
        """
        if self.numerator.is_zero():
            return [0] * (up_to + 1)
        if self.numerator.valuation < 0:
            raise StructureError("series expansion needs a numerator without negative exponents")
        out = [0] * (up_to + 1)
        for e, c in self.numerator.coeffs.items():
            if e <= up_to:
                out[e] = c
        for d in self.denominator_degrees:
            for j in range(d, up_to + 1):
                out[j] += out[j - d]
        return out


def eval_series(series: HilbertSeries, z: complex) -> complex:
    """Evaluate numerator(z) / prod(1 - z^d) in complex double precision.

    With a nonempty denominator the value is only defined for |z| < 1.
    """
    z = complex(z)
    if series.denominator_degrees and abs(z) >= 1:
        raise EvaluationDomainError(
            f"|z| = {abs(z)} is outside the open unit disk but the series has denominator factors"
        )
    value = series.numerator.evaluate(z)
    for d in series.denominator_degrees:
        value /= 1 - z ** d
    return value


def series_of_table(table: GradedLengthTable) -> HilbertSeries:
    """The (polynomial) Hilbert series of a finite-length graded quotient."""
    return HilbertSeries(LaurentPolynomialZ(dict(table.lengths)), ())


def series_of_ring(ring: RingPresentation) -> HilbertSeries:
    """Exact Hilbert series of the presented ring.

    For a free weighted polynomial ring this is 1 / prod(1 - t^w).  With
    relations, the numerator is the inclusion-exclusion generating numerator
    of the initial ideal of the relations, which leaves the Hilbert function
    unchanged.
    """
    weights = tuple(ring.grading.weights)
    if not ring.relations:
        return HilbertSeries(LaurentPolynomialZ.one(), weights)
    basis = buchberger(list(ring.relations), ring.term_order)
    M = initial_ideal(basis)
    if M.is_unit:
        return HilbertSeries(LaurentPolynomialZ.zero(), weights)
    numerator = staircase_numerator(M, ring.grading)
    return HilbertSeries(LaurentPolynomialZ(numerator), weights)


def hilbert_samuel(series: HilbertSeries):
    """Krull dimension and Hilbert-Samuel multiplicity from a Hilbert series.

    Factors (1 - t) are stripped from the numerator exactly; if v of them come
    out and there are D denominator factors of degrees d_i, the dimension is
    D - v and the multiplicity is Q(1) / prod(d_i) with Q the stripped
    numerator, returned as an exact Fraction.
    """
    num = series.numerator
    if num.is_zero():
        return 0, Fraction(0)
    one_minus_t = LaurentPolynomialZ.one_minus_power(1)
    vanish = 0
    while True:
        try:
            num = num.divide_exact(one_minus_t)
            vanish += 1
        except InexactDivisionError:
            break
    dimension = len(series.denominator_degrees) - vanish
    if dimension < 0:
        raise StructureError(
            "numerator vanishes at t=1 to higher order than the denominator; not a Hilbert series"
        )
    denom = 1
    for d in series.denominator_degrees:
        denom *= d
    return dimension, Fraction(num.value_at_one(), denom)


def chi_series(h_m: HilbertSeries, h_n: HilbertSeries, h_r: HilbertSeries) -> HilbertSeries:
    """Alternating Tor series as the exact quotient H_M * H_N / H_R.

    Denominators are cleared and the polynomial division by the numerator of
    H_R is verified exact; any remainder raises InexactDivisionError rather
    than truncating.
    """
    numerator = h_m.numerator * h_n.numerator * h_r.denominator_polynomial()
    quotient = numerator.divide_exact(h_r.numerator)
    return HilbertSeries(quotient, h_m.denominator_degrees + h_n.denominator_degrees).reduce()
