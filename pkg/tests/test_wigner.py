import math

import numpy as np
import pytest

from sylvester.harmonics import SpinState, eval_function, harmonics_table, random_real_state, random_state
from sylvester.majorana import constellation, match_multisets
from sylvester.sphere import EulerRotation, random_rotation, stereo_from_angles, stereo_from_vector
from sylvester.wigner import (
    SUM_MAX_TWO_J,
    _little_d_matrix,
    _spectral_d,
    coherent_state_row,
    rotate_state,
    wigner_d_element,
    wigner_d_matrix,
    wigner_D,
)

from conftest import d_expm_oracle, d_factorial_oracle


def test_d_element_examples():
    for t in (0.0, 0.3, 1.9, math.pi):
        assert wigner_d_element(0.5, 0.5, 0.5, t) == pytest.approx(math.cos(t / 2), abs=1e-15)
        assert wigner_d_element(1, 0, 0, t) == pytest.approx(math.cos(t), abs=1e-15)
    for tj in range(0, 9):
        d = wigner_d_matrix(tj / 2, 0.0)
        assert np.array_equal(d, np.eye(tj + 1))


def test_d_element_bad_indices():
    with pytest.raises(ValueError):
        wigner_d_element(1, 2, 0, 0.1)
    with pytest.raises(ValueError):
        wigner_d_element(1, 0.5, 0, 0.1)


@pytest.mark.parametrize("beta", [0.0, 0.4, math.pi / 2, 2.5, math.pi, -math.pi, 2 * math.pi - 0.1, -1.2])
def test_d_matrix_vs_expm(beta):
    for tj in range(0, 23):
        np.testing.assert_allclose(wigner_d_matrix(tj / 2, beta), d_expm_oracle(tj, beta).real, atol=1e-12)


def test_d_matrix_vs_factorial_sum(rng):
    for tj in range(0, 13):
        j = tj / 2
        beta = rng.uniform(0, math.pi)
        d = wigner_d_matrix(j, beta)
        ms = [(k * 2 - tj) / 2 for k in range(tj + 1)]
        for a, m in enumerate(ms):
            for b, mp in enumerate(ms):
                assert d[a, b] == pytest.approx(d_factorial_oracle(j, m, mp, beta), abs=1e-13)


def test_half_integer_sign_under_full_turn():
    # d^{1/2}(2 pi) = -1: spinors change sign
    np.testing.assert_allclose(wigner_d_matrix(0.5, 2 * math.pi), -np.eye(2), atol=1e-15)


def test_unitarity(rng):
    for tj in range(0, 41):
        D = wigner_D(tj / 2, random_rotation(rng)).matrix
        np.testing.assert_allclose(D @ D.conj().T, np.eye(tj + 1), atol=1e-10)
    assert np.array_equal(wigner_D(3, EulerRotation.identity()).matrix, np.eye(7))


def test_j1_quarter_turn_column():
    # D_{m,0}(0, pi/2, 0) = d^1_{m0}(pi/2) = (sin/sqrt2, cos, -sin/sqrt2) at pi/2
    col = wigner_D(1, EulerRotation(0, math.pi / 2, 0)).matrix[:, 1]
    np.testing.assert_allclose(col, [1 / math.sqrt(2), 0, -1 / math.sqrt(2)], atol=1e-15)


def test_composition(rng):
    for tj in range(1, 13):
        r1, r2 = random_rotation(rng), random_rotation(rng)
        lhs = wigner_D(tj / 2, r1).matrix @ wigner_D(tj / 2, r2).matrix
        rhs = wigner_D(tj / 2, EulerRotation.from_matrix(r1.matrix() @ r2.matrix())).matrix
        if tj % 2:
            # spinor double cover: equal up to an overall sign
            sign = np.sign((lhs * rhs.conj()).sum().real)
            rhs = sign * rhs
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_column_zero_is_harmonic(rng):
    for j in range(0, 11):
        for _ in range(5):
            t, p = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
            D = wigner_D(j, EulerRotation(p, t, 0)).matrix
            y = harmonics_table(j, t, p)
            np.testing.assert_allclose(D[:, j].conj(), math.sqrt(4 * math.pi / (2 * j + 1)) * y, atol=1e-10)


def test_coherent_row(rng):
    for tj in range(0, 21):
        for _ in range(5):
            t, p = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
            zeta = stereo_from_angles(t, p).zeta
            D = wigner_D(tj / 2, EulerRotation(p, t, 0)).matrix
            np.testing.assert_allclose(coherent_state_row(tj / 2, zeta), D[:, 0].conj(), atol=1e-10)


def test_rotate_identity_and_norm(rng):
    s = random_state(rng, 7)
    assert np.allclose(rotate_state(s, EulerRotation.identity()).coeffs, s.coeffs, atol=0)
    r = rotate_state(s, random_rotation(rng))
    assert r.norm() == pytest.approx(s.norm(), abs=1e-10)


def test_rotation_preserves_reality(rng):
    for j in range(1, 9):
        r = rotate_state(random_real_state(rng, j), random_rotation(rng))
        assert r.reality_residual() < 1e-10


def test_zonal_j1_quarter_turn_roots():
    s = rotate_state(SpinState.basis(1, 0), EulerRotation(0, math.pi / 2, 0))
    c = constellation(s)
    want = [stereo_from_vector([1, 0, 0]), stereo_from_vector([-1, 0, 0])]
    assert match_multisets(c.roots, want) < 1e-12


def test_functional_equivariance(rng):
    for j in range(1, 8):
        s = random_state(rng, 2 * j)
        rot = random_rotation(rng)
        rs = rotate_state(s, rot)
        inv = rot.matrix().T
        for _ in range(10):
            u = rng.normal(size=3)
            u /= np.linalg.norm(u)
            v = inv @ u
            tu, pu = math.acos(np.clip(u[2], -1, 1)), math.atan2(u[1], u[0])
            tv, pv = math.acos(np.clip(v[2], -1, 1)), math.atan2(v[1], v[0])
            assert eval_function(rs, tu, pu) == pytest.approx(eval_function(s, tv, pv), abs=1e-10)


def test_sum_and_spectral_paths_agree(rng):
    # below the switch the factorial sum is used; compare it with the spectral form
    for tj in range(SUM_MAX_TWO_J - 3, SUM_MAX_TWO_J + 1):
        for beta in rng.uniform(-math.pi, math.pi, size=5):
            np.testing.assert_allclose(_spectral_d(tj, beta), _little_d_matrix(tj, beta), atol=1e-12)
    # just past the switch, the factorial oracle still holds
    tj = SUM_MAX_TWO_J + 2
    beta = 0.7
    d = wigner_d_matrix(tj / 2, beta)
    for m, mp in [(0, 0), (3, -2), (11, 11), (-11, 5)]:
        assert d[m + tj // 2, mp + tj // 2] == pytest.approx(d_factorial_oracle(tj / 2, m, mp, beta), abs=1e-12)
