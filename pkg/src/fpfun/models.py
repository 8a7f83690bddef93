"""Exponential-polynomial models sum_k c_k exp(-i r_k y) / (iy)^d with stable
evaluation at the removable singularity, and the closed-form constructors:
parameter ideals, dimension one, finite projective dimension, and the
dimension-two formula driven by Harder-Narasimhan slope/rank data.

Frequencies are exact rationals and coefficients stay exact whenever the
inputs are rational, so models can be compared with zero tolerance.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import ModelConstructionError
from .hilbert import LaurentPolynomialZ

# Inside this radius the numerator is evaluated by its Taylor expansion; the
# direct quotient loses about |y|^(-d) ulp to cancellation outside it.
_TAYLOR_RADIUS = 1e-3
_TAYLOR_TERMS = 14
# Tolerance for the vanishing-order check when coefficients are floats.
_FLOAT_MOMENT_TOL = 1e-9


def _as_frequency(value) -> Fraction:
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ModelConstructionError(f"frequency {value!r} must be an exact rational")


def _is_rational(c) -> bool:
    return isinstance(c, Rational)


@dataclass(frozen=True)
class ExponentialPolynomialModel:
    """Terms (c_k, r_k) representing sum_k c_k exp(-i r_k y) / (iy)^d.

    The numerator must vanish at y = 0 to order at least d, i.e.
    sum_k c_k r_k^m = 0 for every m < d; this is checked at construction,
    exactly when all coefficients are rational.

    Every closed form this package constructs fits this shape, but whether
    every limit function does is an open question: treat the class as a
    hypothesis space, not a guaranteed normal form, and validate candidate
    models against the level sequence (see the compare command).
    """

    d: int
    terms: tuple

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 0:
            raise ModelConstructionError("pole order must be a non-negative integer")
        merged: dict = {}
        for c, rho in self.terms:
            rho = _as_frequency(rho)
            if rho in merged:
                merged[rho] = merged[rho] + c
            else:
                merged[rho] = c
        cleaned = []
        for rho in sorted(merged):
            c = merged[rho]
            if _is_rational(c):
                if c == 0:
                    continue
            elif c == 0:
                continue
            cleaned.append((c, rho))
        object.__setattr__(self, "terms", tuple(cleaned))
        self._check_vanishing()

    def _check_vanishing(self):
        exact = all(_is_rational(c) for c, _ in self.terms)
        scale = sum(abs(complex(c)) * (1 + abs(float(r))) ** self.d for c, r in self.terms)
        for m in range(self.d):
            if exact:
                moment = sum(c * r ** m for c, r in self.terms)
                if moment != 0:
                    raise ModelConstructionError(
                        f"numerator moment of order {m} is {moment}, not 0; "
                        f"the model would not be holomorphic at the origin"
                    )
            else:
                moment = sum(complex(c) * float(r) ** m for c, r in self.terms)
                if abs(moment) > _FLOAT_MOMENT_TOL * max(1.0, scale):
                    raise ModelConstructionError(
                        f"numerator moment of order {m} is {moment}, not ~0"
                    )

    def numerator_taylor(self, count: int) -> list:
        """Complex Taylor coefficients of the numerator around y = 0."""
        out = []
        for m in range(count):
            acc = Fraction(0)
            acc_c = 0j
            for c, r in self.terms:
                if _is_rational(c):
                    acc += Fraction(c) * r ** m
                else:
                    acc_c += complex(c) * float(r) ** m
            out.append((complex(float(acc)) + acc_c) * (-1j) ** m / math.factorial(m))
        return out

    def taylor_coefficients(self, count: int) -> list:
        """Taylor coefficients of the model itself (after dividing by (iy)^d)."""
        nums = self.numerator_taylor(self.d + count)
        return [nums[self.d + k] / 1j ** self.d for k in range(count)]

    def value_at_zero(self) -> complex:
        return self.taylor_coefficients(1)[0]

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "terms": [
                {
                    "c_re": float(complex(c).real) if not _is_rational(c) else float(c),
                    "c_im": float(complex(c).imag) if not _is_rational(c) else 0.0,
                    "rho_num": r.numerator,
                    "rho_den": r.denominator,
                }
                for c, r in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExponentialPolynomialModel":
        terms = []
        for item in data["terms"]:
            c = complex(item["c_re"], item["c_im"])
            if c.imag == 0 and float(c.real).is_integer():
                c = int(c.real)
            terms.append((c, Fraction(int(item["rho_num"]), int(item["rho_den"]))))
        return cls(int(data["d"]), tuple(terms))


def eval_model(model: ExponentialPolynomialModel, y: complex) -> complex:
    """Evaluate the model anywhere, including across the removable singularity.

    Outside the branch radius the quotient is computed directly; inside it the
    numerator's Taylor expansion (14 terms past the order-d zero) is used, so
    the two branches agree to better than 1e-9 at the seam.
    """
    y = complex(y)
    if abs(y) > _TAYLOR_RADIUS:
        num = 0j
        for c, r in model.terms:
            num += complex(c) * cmath.exp(-1j * float(r) * y)
        return num / (1j * y) ** model.d
    coeffs = model.taylor_coefficients(_TAYLOR_TERMS)
    total = 0j
    power = 1.0 + 0j
    for a in coeffs:
        total += a * power
        power *= y
    return total


def model_hsop(ring_multiplicity, degrees: Sequence[int]) -> ExponentialPolynomialModel:
    """Model e_R * prod_j (1 - exp(-i d_j y)) / (iy) for a parameter ideal.

    Its value at the origin is d_1 * ... * d_d * e_R, the Hilbert-Kunz
    multiplicity of an ideal generated by a homogeneous system of parameters
    of these degrees.
    """
    e = Fraction(ring_multiplicity)
    if e <= 0:
        raise ModelConstructionError("ring multiplicity must be positive")
    degrees = tuple(degrees)
    if not degrees:
        raise ModelConstructionError("need at least one parameter degree")
    terms = {Fraction(0): e}
    for d in degrees:
        if not isinstance(d, int) or d < 1:
            raise ModelConstructionError(f"parameter degree {d!r} must be a positive integer")
        shifted: dict = {}
        for rho, c in terms.items():
            shifted[rho] = shifted.get(rho, Fraction(0)) + c
            key = rho + d
            shifted[key] = shifted.get(key, Fraction(0)) - c
        terms = shifted
    return ExponentialPolynomialModel(len(degrees), tuple((c, r) for r, c in terms.items()))


def model_dim_one(ring_multiplicity, h: int) -> ExponentialPolynomialModel:
    """Model e_R * (1 - exp(-i h y)) / (iy) for one-dimensional problems.

    h is the least degree of a homogeneous element of the ideal.  The formula
    is proved over an algebraically closed coefficient field; for other
    inputs it is offered as a candidate and should be validated against the
    level-n sequence.
    """
    e = Fraction(ring_multiplicity)
    if e <= 0:
        raise ModelConstructionError("ring multiplicity must be positive")
    if not isinstance(h, int) or h < 1:
        raise ModelConstructionError("element degree h must be a positive integer")
    return ExponentialPolynomialModel(1, ((e, Fraction(0)), (-e, Fraction(h))))


def model_finite_pd(
    ring_multiplicity, betti: LaurentPolynomialZ, d: int
) -> ExponentialPolynomialModel:
    """Model e_R * sum_j B(j) exp(-iyj) / (iy)^d from alternating Betti sums.

    Requires the Betti polynomial to vanish at t = 1 to order d; violations
    surface as a construction error.
    """
    e = Fraction(ring_multiplicity)
    if e <= 0:
        raise ModelConstructionError("ring multiplicity must be positive")
    terms = tuple((e * c, Fraction(j)) for j, c in betti.items_sorted())
    return ExponentialPolynomialModel(d, terms)


@dataclass(frozen=True)
class HNData:
    """Slope/rank data of the strong Harder-Narasimhan filtration of a syzygy
    sheaf: the inputs of the dimension-two closed form.

    ``factors`` lists (normalized slope, rank) with strictly decreasing
    slopes; the ranks must sum to rank_s and the slope-weighted rank sum must
    equal -delta_r.
    """

    delta_r: int
    rank_s: int
    factors: tuple

    def __post_init__(self):
        if not isinstance(self.delta_r, int) or self.delta_r < 1:
            raise ModelConstructionError("delta_r must be a positive integer")
        if not isinstance(self.rank_s, int) or self.rank_s < 1:
            raise ModelConstructionError("rank_s must be a positive integer")
        factors = tuple((_as_frequency(mu), r) for mu, r in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ModelConstructionError("need at least one Harder-Narasimhan factor")
        for _, r in factors:
            if not isinstance(r, int) or r < 1:
                raise ModelConstructionError("factor ranks must be positive integers")
        slopes = [mu for mu, _ in factors]
        if any(a <= b for a, b in zip(slopes, slopes[1:])):
            raise ModelConstructionError("violated relation: slopes must be strictly decreasing")
        rank_sum = sum(r for _, r in factors)
        if rank_sum != self.rank_s:
            raise ModelConstructionError(
                f"violated relation: sum of factor ranks = {rank_sum} != rank_s = {self.rank_s}"
            )
        weighted = sum(mu * r for mu, r in factors)
        if weighted != -self.delta_r:
            raise ModelConstructionError(
                f"violated relation: sum of mu_s * r_s = {weighted} != -delta_r = {-self.delta_r}"
            )


def model_from_hn(data: HNData) -> ExponentialPolynomialModel:
    """Dimension-two model from Harder-Narasimhan data:

    delta_r * (1 - (1 + rank_s) exp(-iy) + sum_s r_s exp(-iy (1 - mu_s/delta_r)))
    divided by (iy)^2, with frequencies kept as exact rationals.
    """
    terms = [
        (Fraction(data.delta_r), Fraction(0)),
        (-Fraction(data.delta_r) * (1 + data.rank_s), Fraction(1)),
    ]
    for mu, r in data.factors:
        terms.append((Fraction(data.delta_r) * r, 1 - mu / data.delta_r))
    return ExponentialPolynomialModel(2, tuple(terms))


def models_equal(a: ExponentialPolynomialModel, b: ExponentialPolynomialModel, tol=0) -> bool:
    """Structural equality after merging equal frequencies.

    Pole orders must match; term lists must pair up frequency by frequency
    with coefficient gaps at most tol (exact comparison when tol is 0 and the
    coefficients are rational).
    """
    if a.d != b.d:
        return False
    ta = {r: c for c, r in a.terms}
    tb = {r: c for c, r in b.terms}
    for r in set(ta) | set(tb):
        ca = ta.get(r, 0)
        cb = tb.get(r, 0)
        if _is_rational(ca) and _is_rational(cb):
            if abs(Fraction(ca) - Fraction(cb)) > tol:
                return False
        elif abs(complex(ca) - complex(cb)) > tol:
            return False
    return True
