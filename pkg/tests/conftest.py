import pytest

from fpfun.suite import (
    cusp_problem,
    parameter_problem,
    plane_problem,
    standard_problems,
    three_generator_problem,
    weighted_plane_problem,
)


@pytest.fixture(scope="session")
def plane():
    return plane_problem()


@pytest.fixture(scope="session")
def cusp():
    return cusp_problem()


@pytest.fixture(scope="session")
def three_generator():
    return three_generator_problem()


@pytest.fixture(scope="session")
def parameter23():
    return parameter_problem(2, 3)


@pytest.fixture(scope="session")
def weighted_plane():
    return weighted_plane_problem()


@pytest.fixture(scope="session")
def suite_problems():
    """Name -> (problem, hsop degrees); shared so level tables are cached."""
    return standard_problems()
