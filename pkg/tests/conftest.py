from fractions import Fraction

import pytest

from wrlat import hexagonal, integer_lattice, k3_prime, lnm, staircase

F = Fraction


@pytest.fixture
def hex_lattice():
    return hexagonal()


@pytest.fixture
def z2():
    return integer_lattice(2)


@pytest.fixture
def staircase3():
    return staircase(3)


@pytest.fixture
def k3():
    return k3_prime()


@pytest.fixture
def a2_plus_z():
    return lnm(3, 1)


def gram_rows(lat):
    return lat.gram.to_rows()


def cofactor_det3(m):
    """Independent 3x3 determinant by literal cofactor expansion."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def cofactor_det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def quad_form(lat, u):
    n = lat.rank
    return sum(lat.gram[i, j] * u[i] * u[j] for i in range(n) for j in range(n))
