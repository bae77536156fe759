"""Spherical harmonics, spin states and exact quadrature on the sphere."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class NonIntegerDegree(ValueError):
    """An operation that needs an integer degree got a half-integer one."""


class GridResolutionError(ValueError):
    """The quadrature grid is too coarse to integrate the requested products exactly."""


@dataclass(frozen=True, eq=False)
class SpinState:
    """Coefficients psi_m of a spin-j state, stored for m = -j..j ascending.

    The degree is kept doubled (``two_j``) so half-integer spins share the type.
    """

    two_j: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        tj = int(self.two_j)
        if tj != self.two_j or tj < 0:
            raise ValueError(f"two_j must be a nonnegative integer, got {self.two_j!r}")
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size != tj + 1:
            raise ValueError(f"expected {tj + 1} coefficients for 2j={tj}, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "two_j", tj)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_degree(cls, j, coeffs) -> SpinState:
        return cls(_doubled(j), coeffs)

    @classmethod
    def basis(cls, j, m) -> SpinState:
        tj, tm = _doubled(j), _doubled(m)
        if abs(tm) > tj or (tj - tm) % 2:
            raise ValueError(f"no basis state m={m} for j={j}")
        c = np.zeros(tj + 1, dtype=complex)
        c[(tj + tm) // 2] = 1.0
        return cls(tj, c)

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def is_integer(self) -> bool:
        return self.two_j % 2 == 0

    @property
    def degree(self) -> int:
        """Integer degree j; raises for half-integer spin."""
        if not self.is_integer:
            raise NonIntegerDegree(f"degree j={self.two_j}/2 is not an integer")
        return self.two_j // 2

    @property
    def m_values(self) -> np.ndarray:
        return (np.arange(self.two_j + 1) * 2 - self.two_j) / 2

    def coeff(self, m) -> complex:
        return self.coeffs[(self.two_j + _doubled(m)) // 2]

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def normalized(self) -> SpinState:
        return SpinState(self.two_j, self.coeffs / self.norm())

    def reality_residual(self) -> float:
        """Worst violation of a*_m = (-1)^m a_{-m}, relative to the state norm.

        Half-integer states are never real; their residual is ``inf``.
        """
        if not self.is_integer:
            return math.inf
        n = self.norm()
        if n == 0:
            return 0.0
        j = self.two_j // 2
        sign = (-1.0) ** np.arange(-j, j + 1)
        return float(np.max(np.abs(self.coeffs.conj() - sign * self.coeffs[::-1])) / n)

    def is_real_state(self, tol: float = 1e-10) -> bool:
        return self.reality_residual() <= tol

    def __eq__(self, other):
        if not isinstance(other, SpinState):
            return NotImplemented
        return self.two_j == other.two_j and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self) -> str:
        return f"SpinState(two_j={self.two_j}, coeffs={np.array2string(self.coeffs, precision=6)})"


def _doubled(x) -> int:
    t = 2 * x
    r = round(t)
    if abs(t - r) > 1e-9:
        raise ValueError(f"{x!r} is not an integer or half-integer")
    return int(r)


def _integer_degree(j) -> int:
    tj = _doubled(j)
    if tj % 2:
        raise NonIntegerDegree(f"spherical harmonics need integer j, got {j!r}")
    return tj // 2


def legendre_table(j: int, x) -> np.ndarray:
    """Normalized associated Legendre values for degree j and orders m = 0..j.

    Returns an array of shape ``x.shape + (j + 1,)`` holding the
    theta-part of Y_j^m (Condon-Shortley phase included), so that
    Y_j^m = table[..., m] * exp(i m phi) for m >= 0.
    """
    x = np.asarray(x, dtype=float)
    sin_t = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    out = np.empty(x.shape + (j + 1,))
    # sectoral seed P_m^m, carried normalized
    pmm = np.full(x.shape, 1.0 / math.sqrt(4 * math.pi))
    for m in range(j + 1):
        if m > 0:
            pmm = -math.sqrt((2 * m + 1) / (2 * m)) * sin_t * pmm
        if m == j:
            out[..., m] = pmm
            continue
        p_prev = pmm
        p_cur = math.sqrt(2 * m + 3) * x * pmm
        for l in range(m + 2, j + 1):
            a = math.sqrt((4 * l * l - 1) / (l * l - m * m))
            b = math.sqrt(((l - 1) ** 2 - m * m) / (4 * (l - 1) ** 2 - 1))
            p_prev, p_cur = p_cur, a * (x * p_cur - b * p_prev)
        out[..., m] = p_cur
    return out


def harmonics_table(j, theta, phi) -> np.ndarray:
    """All Y_j^m(theta, phi) for m = -j..j, stacked on a trailing axis."""
    j = _integer_degree(j)
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    leg = legendre_table(j, np.cos(theta))
    m = np.arange(j + 1)
    pos = leg * np.exp(1j * m * phi[..., None])
    neg = ((-1.0) ** m) * pos.conj()
    return np.concatenate([neg[..., :0:-1], pos], axis=-1)


def eval_Yjm(j, m, theta, phi):
    j = _integer_degree(j)
    m = int(m)
    if abs(m) > j:
        raise ValueError(f"|m| must not exceed j (j={j}, m={m})")
    y = harmonics_table(j, theta, phi)[..., m + j]
    return y[()] if y.ndim == 0 else y


def eval_function(s: SpinState, theta, phi):
    """Evaluate sqrt(4 pi/(2j+1)) sum_m psi_m Y_j^m at the given angles."""
    j = s.degree
    y = harmonics_table(j, theta, phi)
    f = math.sqrt(4 * math.pi / (2 * j + 1)) * (y @ s.coeffs)
    return f[()] if f.ndim == 0 else f


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Gauss-Legendre nodes in cos(theta) times a uniform azimuthal grid."""

    theta: np.ndarray
    weights: np.ndarray
    phi: np.ndarray
    values: np.ndarray | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.theta.size, self.phi.size

    @property
    def n_theta(self) -> int:
        return self.theta.size

    @property
    def n_phi(self) -> int:
        return self.phi.size

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.theta, self.phi, indexing="ij")

    def unit_vectors(self) -> np.ndarray:
        t, p = self.mesh()
        st = np.sin(t)
        return np.stack([st * np.cos(p), st * np.sin(p), np.cos(t)], axis=-1)

    def area_weights(self) -> np.ndarray:
        return np.outer(self.weights, np.full(self.n_phi, 2 * math.pi / self.n_phi))

    def integrate(self, values=None):
        v = self.values if values is None else np.asarray(values)
        if v is None:
            raise ValueError("grid carries no samples")
        return np.tensordot(self.area_weights(), v, axes=([0, 1], [0, 1]))

    def with_values(self, values) -> SphereGrid:
        values = np.asarray(values)
        if values.shape[:2] != self.shape:
            raise ValueError(f"samples of shape {values.shape} do not match grid {self.shape}")
        return SphereGrid(self.theta, self.weights, self.phi, values)

    def sample(self, func) -> SphereGrid:
        """Sample ``func(theta, phi)`` on the mesh."""
        t, p = self.mesh()
        return self.with_values(func(t, p))

    def exact_for_degree(self, j: int) -> bool:
        """Whether products of two degree-j functions integrate exactly."""
        return self.n_theta >= 2 * j + 1 and self.n_phi >= 4 * j + 1


def make_grid(n_theta: int, n_phi: int) -> SphereGrid:
    if n_theta < 1 or n_phi < 1:
        raise ValueError("grid sizes must be positive")
    x, w = np.polynomial.legendre.leggauss(n_theta)
    # north pole first
    order = np.argsort(-x)
    theta = np.arccos(x[order])
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    return SphereGrid(theta, w[order], phi)


def grid_for_degree(j: int) -> SphereGrid:
    """Default grid one step above the exactness bound for degree j."""
    return make_grid(2 * j + 2, 4 * j + 2)


def check_grid(grid: SphereGrid, j: int) -> None:
    if not grid.exact_for_degree(j):
        raise GridResolutionError(
            f"grid {grid.n_theta}x{grid.n_phi} below exactness bound "
            f"{2 * j + 1}x{4 * j + 1} for degree {j}"
        )


def project_onto_degree(samples: SphereGrid, j) -> SpinState:
    """Degree-j harmonic component of sampled values, as a SpinState."""
    j = _integer_degree(j)
    check_grid(samples, j)
    if samples.values is None:
        raise ValueError("grid carries no samples")
    t, p = samples.mesh()
    y = harmonics_table(j, t, p)
    integrand = samples.values[..., None] * y.conj()
    a = math.sqrt((2 * j + 1) / (4 * math.pi)) * samples.integrate(integrand)
    return SpinState(2 * j, a)


def real_harmonic_state(j: int, m: int) -> SpinState:
    """Coefficients of Re Y_j^m (m >= 0), normalized to unit coefficient norm."""
    if not 0 <= m <= j:
        raise ValueError("need 0 <= m <= j")
    a = np.zeros(2 * j + 1, dtype=complex)
    a[j + m] = 1.0
    a[j - m] += (-1.0) ** m
    return SpinState(2 * j, a / np.linalg.norm(a))


def random_state(rng: np.random.Generator, two_j: int) -> SpinState:
    """Unit-norm state with independent complex normal coefficients."""
    c = rng.normal(size=two_j + 1) + 1j * rng.normal(size=two_j + 1)
    return SpinState(two_j, c / np.linalg.norm(c))


def random_real_state(rng: np.random.Generator, j: int) -> SpinState:
    """Unit-norm state obeying a*_m = (-1)^m a_{-m}.

    a_m for m > 0 is drawn from a complex normal, a_0 from a real normal.
    """
    a = np.zeros(2 * j + 1, dtype=complex)
    a[j] = rng.normal()
    for m in range(1, j + 1):
        a[j + m] = complex(rng.normal(), rng.normal())
        a[j - m] = (-1) ** m * np.conj(a[j + m])
    return SpinState(2 * j, a / np.linalg.norm(a))
