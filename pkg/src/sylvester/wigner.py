"""Wigner D-matrices and rotation of spin states.

Small degrees use the explicit factorial sum. Above ``SUM_MAX_TWO_J`` the sum
cancels too badly, and d(beta) = V exp(-i beta m) V^H is used instead, with V
the eigenvectors of J_y. All indices are ascending in m and m'. Spins may be
integer or half-integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .harmonics import SpinState, _doubled
from .sphere import EulerRotation


@dataclass(frozen=True, eq=False)
class WignerD:
    two_j: int
    matrix: np.ndarray = field(repr=False)

    @property
    def j(self) -> float:
        return self.two_j / 2

    def element(self, m, mp) -> complex:
        tm, tmp = _doubled(m), _doubled(mp)
        return self.matrix[(self.two_j + tm) // 2, (self.two_j + tmp) // 2]


def _check_indices(tj: int, tm: int, tmp: int) -> None:
    if tj < 0 or abs(tm) > tj or abs(tmp) > tj or (tj - tm) % 2 or (tj - tmp) % 2:
        raise ValueError(f"invalid Wigner indices j={tj}/2, m={tm}/2, m'={tmp}/2")


SUM_MAX_TWO_J = 20


@lru_cache(maxsize=64)
def _jy_eigenvectors(tj: int) -> np.ndarray:
    """Eigenvectors of J_y, columns ordered so their eigenvalues are m = -j..j."""
    m = (np.arange(tj + 1) * 2 - tj) / 2
    up = np.sqrt((tj / 2) * (tj / 2 + 1) - m[:-1] * (m[:-1] + 1))
    jy = (np.diag(up, -1) - np.diag(up, 1)) / 2j
    lam, vec = np.linalg.eigh(jy)
    return vec[:, np.argsort(lam)]


def _spectral_d(tj: int, beta: float) -> np.ndarray:
    vec = _jy_eigenvectors(tj)
    m = (np.arange(tj + 1) * 2 - tj) / 2
    return ((vec * np.exp(-1j * beta * m)) @ vec.conj().T).real


@lru_cache(maxsize=128)
def _sum_terms(tj: int):
    """Log-magnitudes, signs and exponents of every term of the k-sum.

    Arrays have shape (2j+1, 2j+1, K); absent terms carry -inf log-magnitude.
    """
    n = tj + 1
    nk = tj + 1
    logmag = np.full((n, n, nk), -np.inf)
    sign = np.zeros((n, n, nk))
    cpow = np.zeros((n, n, nk), dtype=int)
    spow = np.zeros((n, n, nk), dtype=int)
    lf = [math.lgamma(i + 1) for i in range(tj + 2)]
    for a in range(n):
        jm_p, jm_m = a, tj - a  # j+m, j-m
        for b in range(n):
            jp_p, jp_m = b, tj - b  # j+m', j-m'
            d = a - b  # m - m'
            root = 0.5 * (lf[jp_p] + lf[jp_m] + lf[jm_p] + lf[jm_m])
            for k in range(max(0, -d), min(jp_p, jm_m) + 1):
                logmag[a, b, k] = root - (lf[d + k] + lf[jp_p - k] + lf[jm_m - k] + lf[k])
                sign[a, b, k] = -1.0 if (k + d) % 2 else 1.0
                cpow[a, b, k] = tj - d - 2 * k
                spow[a, b, k] = d + 2 * k
    return logmag, sign, cpow, spow


def _little_d_matrix(tj: int, beta: float) -> np.ndarray:
    n = tj + 1
    # no reduction mod 2*pi: half-integer d changes sign under beta -> beta + 2*pi
    b = float(beta)
    if b == 0.0:
        return np.eye(n)
    if abs(b) == math.pi:
        # d_{m,m'}(pi) = (-1)^{j-m'} delta_{m,-m'}; d(-pi) is its transpose
        d = np.zeros((n, n))
        for col in range(n):
            d[n - 1 - col, col] = -1.0 if (tj - col) % 2 else 1.0
        return d if b > 0 else d.T
    if tj > SUM_MAX_TWO_J:
        return _spectral_d(tj, b)
    logmag, sign, cpow, spow = _sum_terms(tj)
    c, s = math.cos(b / 2), math.sin(b / 2)
    # powers are taken on |c|, |s| in log space, signs restored separately
    with np.errstate(divide="ignore", invalid="ignore"):
        lc = math.log(abs(c)) if c != 0 else -np.inf
        ls = math.log(abs(s)) if s != 0 else -np.inf
        expo = logmag + np.where(cpow > 0, cpow * lc, 0.0) + np.where(spow > 0, spow * ls, 0.0)
        mag = np.exp(expo)
    sgn = sign * np.where((cpow % 2 == 1) & (c < 0), -1.0, 1.0) * np.where(
        (spow % 2 == 1) & (s < 0), -1.0, 1.0
    )
    return np.sum(np.nan_to_num(mag * sgn), axis=-1)


def wigner_d_element(j, m, mp, theta: float) -> float:
    """Real little-d element d^j_{m,m'}(theta)."""
    tj, tm, tmp = _doubled(j), _doubled(m), _doubled(mp)
    _check_indices(tj, tm, tmp)
    return float(_little_d_matrix(tj, theta)[(tj + tm) // 2, (tj + tmp) // 2])


def wigner_d_matrix(j, theta: float) -> np.ndarray:
    tj = _doubled(j)
    _check_indices(tj, tj, tj)
    return _little_d_matrix(tj, theta)


def wigner_D(j, rot: EulerRotation) -> WignerD:
    """D_{m,m'}(alpha, beta, gamma) = exp(-i m alpha) d_{m,m'}(beta) exp(-i m' gamma)."""
    tj = _doubled(j)
    _check_indices(tj, tj, tj)
    m = (np.arange(tj + 1) * 2 - tj) / 2
    d = _little_d_matrix(tj, rot.beta)
    mat = np.exp(-1j * m * rot.alpha)[:, None] * d * np.exp(-1j * m * rot.gamma)[None, :]
    return WignerD(tj, mat)


def rotate_state(s: SpinState, rot: EulerRotation) -> SpinState:
    """Actively rotate a state: psi'_m = sum_m' D_{m,m'}(rot) psi_m'."""
    return SpinState(s.two_j, wigner_D(s.two_j / 2, rot).matrix @ s.coeffs)


def coherent_state_row(j, zeta: complex) -> np.ndarray:
    """<-j; zeta | m> for m = -j..j from the closed form of the spin coherent state."""
    tj = _doubled(j)
    ms = np.arange(tj + 1)  # j + m
    mu = np.array([(-1.0) ** k * math.sqrt(math.comb(tj, k)) for k in ms])
    # phi in [0, 2pi), as in angles_from_stereo; the branch matters for half-integer j
    arg = math.atan2(zeta.imag, zeta.real) % (2 * math.pi) if zeta != 0 else 0.0
    pref = np.exp(-1j * (tj / 2) * arg) / (1 + abs(zeta) ** 2) ** (tj / 2)
    return pref * mu * np.power(complex(zeta), ms)
