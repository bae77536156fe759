import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def d_factorial_oracle(j, m, mp, theta):
    """Little-d by the plain factorial sum, exact integer factorials."""
    j, m, mp = Fraction(j), Fraction(m), Fraction(mp)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    f = math.factorial
    pre = math.sqrt(f(int(j + mp)) * f(int(j - mp)) * f(int(j + m)) * f(int(j - m)))
    total = 0.0
    for k in range(0, int(2 * j) + 1):
        args = (m - mp + k, j + mp - k, j - m - k, k)
        if min(args) < 0:
            continue
        num = (-1) ** int(k - mp + m) * c ** int(2 * j + mp - m - 2 * k) * s ** int(m - mp + 2 * k)
        total += num / (f(int(args[0])) * f(int(args[1])) * f(int(args[2])) * f(k))
    return pre * total


def jy_matrix(two_j):
    """J_y in the ascending-m basis."""
    j = two_j / 2
    m = np.arange(-j, j + 1)
    raise_ = np.zeros((two_j + 1, two_j + 1))
    for i in range(two_j):
        raise_[i + 1, i] = math.sqrt(j * (j + 1) - m[i] * (m[i] + 1))
    return (raise_ - raise_.T) / 2j


def d_expm_oracle(two_j, beta):
    return expm(-1j * beta * jy_matrix(two_j))


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def line_angle(a, b):
    """Angle between the lines spanned by a and b."""
    a = np.asarray(a, float) / np.linalg.norm(a)
    b = np.asarray(b, float) / np.linalg.norm(b)
    return math.atan2(np.linalg.norm(np.cross(a, b)), abs(a @ b))
