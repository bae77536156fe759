"""Maxwell multipoles of real spherical functions, and the extending/folding kernels.

A real degree-j function f is written as C (u.u_1)...(u.u_j) plus terms
carrying a factor r^2, which vanish under projection onto degree j. The
directions u_n are one representative from each antipodal pair of Majorana
roots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import (
    NonIntegerDegree,
    SphereGrid,
    SpinState,
    check_grid,
    eval_function,
    grid_for_degree,
    harmonics_table,
    project_onto_degree,
)
from .majorana import (
    MajoranaPolynomial,
    PairingFailure,
    constellation,
    find_roots,
    majorana_prefactor,
    mu_factors,
    nilpotent_of,
    pair_antipodal,
)
from .sphere import TOL, StereoPoint, UnitVector, as_stereo, vector_from_stereo


class NotRealState(ValueError):
    """The state violates the reality condition, so it has no Maxwell multipoles."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class MultipoleSet:
    degree: int
    directions: tuple
    amplitude: float

    def __post_init__(self):
        dirs = tuple(
            d if isinstance(d, UnitVector) else UnitVector.from_array(d) for d in self.directions
        )
        if len(dirs) != self.degree:
            raise ValueError(f"need {self.degree} directions, got {len(dirs)}")
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "amplitude", float(self.amplitude))

    def direction_array(self) -> np.ndarray:
        return np.array([d.as_array() for d in self.directions]).reshape(-1, 3)

    def product(self, u) -> np.ndarray:
        """amplitude * prod_n (u . u_n) for unit vectors stacked on the last axis."""
        u = np.asarray(u, dtype=float)
        out = np.full(u.shape[:-1], self.amplitude)
        for d in self.direction_array():
            out = out * (u @ d)
        return out

    def flipped(self, index: int) -> MultipoleSet:
        """Same function with one representative replaced by its antipode."""
        dirs = list(self.directions)
        dirs[index] = -dirs[index]
        return MultipoleSet(self.degree, tuple(dirs), -self.amplitude)


@dataclass(frozen=True)
class KernelSample:
    zeta: StereoPoint
    theta: float
    phi: float
    value: complex


def canonical_direction(v, tol: float = TOL.geometry) -> np.ndarray:
    """Pick the representative of +-v with z > 0, ties broken by x > 0 then y > 0."""
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    for c in (v[2], v[0], v[1]):
        if abs(c) > tol:
            return v if c > 0 else -v
    return v


def _product_projection(dirs: np.ndarray, j: int, grid: SphereGrid) -> SpinState:
    u = grid.unit_vectors()
    prod = np.ones(grid.shape)
    for d in dirs:
        prod = prod * (u @ d)
    return project_onto_degree(grid.with_values(prod), j)


def extract_multipoles(s: SpinState, tol: float = TOL.reality, grid: SphereGrid | None = None) -> MultipoleSet:
    if not s.is_integer:
        raise NonIntegerDegree(f"Maxwell multipoles need integer j, got j={s.two_j}/2")
    j = s.degree
    residual = s.reality_residual()
    if residual > tol:
        raise NotRealState(f"state is not real: reality residual {residual:.3e} > {tol:.1e}", residual)
    if j == 0:
        return MultipoleSet(0, (), float(s.coeffs[0].real))
    try:
        pairs = pair_antipodal(constellation(s), tol)
    except PairingFailure as exc:
        raise NotRealState(str(exc), exc.worst_residual) from exc
    dirs = np.array([canonical_direction(vector_from_stereo(a)) for a, _ in pairs])
    grid = grid_for_degree(j) if grid is None else grid
    check_grid(grid, j)
    proj = _product_projection(dirs, j, grid).coeffs
    amp = np.vdot(proj, s.coeffs).real / np.vdot(proj, proj).real
    return MultipoleSet(j, tuple(dirs), amp)


def reconstruct(mp: MultipoleSet, grid: SphereGrid | None = None) -> SpinState:
    """Degree-j projection of amplitude * prod_n (u . u_n)."""
    j = mp.degree
    grid = grid_for_degree(j) if grid is None else grid
    check_grid(grid, j)
    return project_onto_degree(grid.with_values(mp.product(grid.unit_vectors())), j)


def quadrupole_tensor(s: SpinState, grid: SphereGrid | None = None) -> np.ndarray:
    """Traceless symmetric T with f(u) = u.T.u for a real j=2 state."""
    if s.two_j != 4:
        raise ValueError("quadrupole tensor needs j=2")
    grid = grid_for_degree(2) if grid is None else grid
    u = grid.unit_vectors()
    f = eval_function(s, *grid.mesh()).real
    outer = u[..., :, None] * u[..., None, :]
    return 15 / (8 * math.pi) * grid.integrate(f[..., None, None] * outer)


# --- kernels ------------------------------------------------------------------


def _kernel_finite(zeta: complex, theta, phi, j: int):
    y = harmonics_table(j, theta, phi)
    powers = np.power(complex(zeta), np.arange(2 * j + 1))
    poly = y.conj() @ (mu_factors(2 * j) * powers)
    return math.sqrt((2 * j + 1) / (4 * math.pi)) * majorana_prefactor(2 * j, zeta) * poly


def extending_kernel(zeta, theta, phi, j: int):
    """K(zeta | theta, phi): the Majorana function, in zeta, of the point (theta, phi).

    At infinity the value is fixed by K(inf) = (-1)^j conj(K(0)), the antipodal
    identity of real-coefficient Majorana functions.
    """
    if int(j) != j:
        raise NonIntegerDegree("the extending kernel needs integer j")
    j = int(j)
    z = as_stereo(zeta)
    if z.at_infinity:
        return (-1) ** j * np.conj(_kernel_finite(0j, theta, phi, j))
    k = _kernel_finite(z.zeta, theta, phi, j)
    return k[()] if np.ndim(k) == 0 else k


def kernel_sample(zeta, theta: float, phi: float, j: int) -> KernelSample:
    return KernelSample(as_stereo(zeta), theta, phi, complex(extending_kernel(zeta, theta, phi, j)))


def kernel_factor_form(zeta, theta, phi) -> complex:
    """u(theta, phi) . nu(zeta), the spin-1 building block of the kernel."""
    nu = nilpotent_of(zeta).as_array()
    u = np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])
    return complex(u @ nu)


def extend_via_kernel(s: SpinState, probes, grid: SphereGrid | None = None) -> np.ndarray:
    """Integrate psi(theta, phi) K(zeta | theta, phi) over the sphere at each probe."""
    j = s.degree
    grid = grid_for_degree(j) if grid is None else grid
    check_grid(grid, j)
    t, p = grid.mesh()
    f = eval_function(s, t, p)
    out = []
    for z in probes:
        out.append(grid.integrate(f * extending_kernel(z, t, p, j)))
    return np.array(out)


def fold_via_kernel(poly: MajoranaPolynomial, probes, grid: SphereGrid | None = None) -> np.ndarray:
    """Integrate p(zeta) conj(K(zeta | theta, phi)) over the zeta plane at each probe.

    The plane integral is done on the sphere through zeta = zeta(theta', phi');
    the measure is normalized to the solid angle, which makes the folding
    kernel the exact inverse of the extending kernel.
    """
    if poly.two_j % 2:
        raise NonIntegerDegree("folding needs integer j")
    j = poly.two_j // 2
    grid = grid_for_degree(j) if grid is None else grid
    check_grid(grid, j)
    tq, pq = grid.mesh()
    zeta = np.tan(tq / 2) * np.exp(1j * pq)
    pz = poly.majorana_function(zeta)
    mu = mu_factors(2 * j)
    pref = majorana_prefactor(2 * j, zeta)
    powers = zeta[..., None] ** np.arange(2 * j + 1)
    out = []
    for theta, phi in probes:
        y = harmonics_table(j, theta, phi)
        k = math.sqrt((2 * j + 1) / (4 * math.pi)) * pref * (powers @ (y.conj() * mu))
        out.append(grid.integrate(pz * k.conj()))
    return np.array(out)


def kernel_ratio(zeta, theta: float, phi: float, j: int) -> complex:
    """K(zeta|theta,phi) / (u(theta,phi) . nu(zeta))^j."""
    return complex(extending_kernel(zeta, theta, phi, j)) / kernel_factor_form(zeta, theta, phi) ** j


def kernel_roots(theta: float, phi: float, j: int) -> list[StereoPoint]:
    """Majorana roots, in zeta, of the kernel K(. | theta, phi)."""
    y = harmonics_table(j, theta, phi)
    return list(find_roots(MajoranaPolynomial(2 * j, y.conj() * mu_factors(2 * j))).roots)

