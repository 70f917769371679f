"""Shared fixtures: the worked examples every module is tested against.

cp3   : CP^3 with a circle action, moment image [0, 3], interior
        vertices at 1 and 2.
cp4   : CP^4 under a generic rank-2 projection; 5 vertices in general
        position, 10 edge walls, 7 top chambers.
ncp4  : CP^4 under a non-generic projection; vertices t, q, r, s lie
        on the line x + y = 4, producing one non-Delzant diagonal wall
        with subchambers A, B, C and top chambers alpha, beta, gamma.
"""

from fractions import Fraction

import pytest

from xraycross.generators import (
    ProjectionMatrix,
    cpn_xray,
    standard_cube_xray,
    standard_simplex_xray,
)

CP3_ROWS = ((0, 1, 2, 3),)
CP4_ROWS = (
    (0, 4, 2, Fraction(8, 5), Fraction(12, 5)),
    (0, 0, 4, Fraction(3, 4), Fraction(19, 10)),
)
NCP4_ROWS = (
    (0, 4, 0, Fraction(3, 2), Fraction(5, 2)),
    (0, 0, 4, Fraction(5, 2), Fraction(3, 2)),
)
DIAG = "w2-3-4-5"


@pytest.fixture(scope="session")
def cp3():
    return cpn_xray(3, ProjectionMatrix(CP3_ROWS))


@pytest.fixture(scope="session")
def cp4():
    return cpn_xray(4, ProjectionMatrix(CP4_ROWS))


@pytest.fixture(scope="session")
def ncp4():
    return cpn_xray(4, ProjectionMatrix(NCP4_ROWS))


@pytest.fixture(scope="session")
def toric_triangle():
    return standard_simplex_xray(2)


@pytest.fixture(scope="session")
def unit_square():
    return standard_cube_xray(2)


@pytest.fixture(scope="session")
def segment():
    return standard_simplex_xray(1)
