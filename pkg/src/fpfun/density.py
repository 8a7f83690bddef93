"""Hilbert-Kunz density function samples and their holomorphic Fourier
transforms.

The level-n density sample is the step function g_n(x) = q^(1-d) * ell_j on
[j/q, (j+1)/q), built from the same exact length tables as everything else.
Its Fourier transform relates to the level-n function by the exact identity
gn_hat(y) = F_n(y) * (1 - exp(-iy/q)) / (iy/q); quadrature_fourier integrates
the step function interval by interval and must agree with that closed form,
giving an independent cross-check of both code paths.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import EvaluationDomainError
from .fp import ProblemSpec, fn_eval


@dataclass(frozen=True)
class DensityTable:
    """Samples x = j/q -> g_n(x) = q^(1-d) * ell_j, all exact rationals."""

    n: int
    p: int
    d: int
    entries: tuple  # ((j, ell_j), ...) sorted by j, nonzero ell_j only

    @property
    def q(self) -> int:
        return self.p ** self.n

    def value_at_index(self, j: int) -> Fraction:
        q = self.q
        for jj, ell in self.entries:
            if jj == j:
                return Fraction(ell, q ** (self.d - 1))
        return Fraction(0)

    def value_at(self, x) -> Fraction:
        """Step-function value g_n(x) = q^(1-d) * ell_floor(x*q)."""
        j = int(Fraction(x) * self.q) if Fraction(x) >= 0 else -1
        return self.value_at_index(j)

    def samples(self):
        """Pairs (x, g_n(x)) over the nonzero support, exact."""
        q = self.q
        scale = q ** (self.d - 1)
        return [(Fraction(j, q), Fraction(ell, scale)) for j, ell in self.entries]

    def mass(self) -> Fraction:
        """Exact integral of the step function; equals F_n(0)."""
        q = self.q
        return sum((Fraction(ell, q ** self.d) for _, ell in self.entries), Fraction(0))

    def support_right_endpoint(self) -> Fraction:
        if not self.entries:
            return Fraction(0)
        return Fraction(self.entries[-1][0] + 1, self.q)


def density_table(problem: ProblemSpec, n: int) -> DensityTable:
    """Exact density samples at level n; defined for dimension d >= 1 only."""
    d = problem.dimension
    if d < 1:
        raise EvaluationDomainError(
            "density samples need dimension at least 1; a zero-dimensional problem "
            "concentrates at the origin and has no function-valued density"
        )
    table = problem.table(n)
    return DensityTable(
        n=n,
        p=problem.prime,
        d=d,
        entries=tuple(sorted(table.lengths.items())),
    )


def gn_fourier_exact(problem: ProblemSpec, n: int, y: complex) -> complex:
    """Closed form of the transform of g_n: F_n(y) * (1 - exp(-iy/q)) / (iy/q).

    At y = 0 the transform equals F_n(0) exactly.
    """
    if y == 0:
        return fn_eval(problem, n, 0)
    q = problem.prime ** n
    y = complex(y)
    u = y / q
    return fn_eval(problem, n, y) * (1 - cmath.exp(-1j * u)) / (1j * u)


def quadrature_fourier(table: DensityTable, y: complex) -> complex:
    """Integrate g_n(x) * exp(-iyx) interval by interval, exactly per interval.

    Independent of gn_fourier_exact: this path never calls fn_eval.  The
    y -> 0 limit branch returns the step function's mass.
    """
    if y == 0:
        return complex(float(table.mass()))
    y = complex(y)
    q = table.q
    scale = q ** (table.d - 1)
    total = 0j
    for j, ell in table.entries:
        g = float(Fraction(ell, scale))
        lo = cmath.exp(-1j * y * j / q)
        hi = cmath.exp(-1j * y * (j + 1) / q)
        total += g * (hi - lo)
    return total / (-1j * y)
