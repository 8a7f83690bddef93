"""Built-in test problems used by the self test and the verification suite."""

from __future__ import annotations

from .algebra import Grading, PrimeField, parse_polynomial
from .fp import ProblemSpec
from .ideals import HomogeneousIdeal, RingPresentation


def _make(prime, names, degrees, relations, ideal_gens, dim_override=None) -> ProblemSpec:
    field = PrimeField(prime)
    grading = Grading(tuple(degrees))
    rel = tuple(parse_polynomial(s, names, field, grading) for s in relations)
    gens = tuple(parse_polynomial(s, names, field, grading) for s in ideal_gens)
    ring = RingPresentation(field, grading, rel, tuple(names))
    return ProblemSpec(ring, HomogeneousIdeal(gens), dim_override=dim_override)


def plane_problem(p: int = 2) -> ProblemSpec:
    """F_p[X, Y] standard graded, I = (X, Y)."""
    return _make(p, ("X", "Y"), (1, 1), (), ("X", "Y"))


def parameter_problem(a: int = 2, b: int = 3, p: int = 2) -> ProblemSpec:
    """F_p[X, Y] standard graded, I = (X^a, Y^b)."""
    return _make(p, ("X", "Y"), (1, 1), (), (f"X^{a}", f"Y^{b}"))


def three_generator_problem(p: int = 2) -> ProblemSpec:
    """F_p[X, Y] standard graded, I = (X^2, XY, Y^3)."""
    return _make(p, ("X", "Y"), (1, 1), (), ("X^2", "X*Y", "Y^3"))


def cusp_problem(p: int = 2) -> ProblemSpec:
    """F_p[X, Y] / (Y^2 - X^3) with weights (2, 3), I = (X): dimension one."""
    return _make(p, ("X", "Y"), (2, 3), ("Y^2 - X^3",), ("X",))


def weighted_plane_problem(p: int = 2) -> ProblemSpec:
    """F_p[X, Y] with weights (2, 3), I = (X, Y)."""
    return _make(p, ("X", "Y"), (2, 3), (), ("X", "Y"))


def standard_problems() -> dict:
    """The named problems exercised by the self test, with parameter degrees.

    Values are (problem, hsop_degrees) where hsop_degrees are the degrees of
    a homogeneous system of parameters of the ring (used by the Betti and
    Cohen-Macaulay checks).
    """
    return {
        "plane": (plane_problem(), (1, 1)),
        "parameter23": (parameter_problem(2, 3), (1, 1)),
        "three_generator": (three_generator_problem(), (1, 1)),
        "cusp": (cusp_problem(), (2,)),
        "weighted_plane": (weighted_plane_problem(), (2, 3)),
    }
