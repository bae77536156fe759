"""Majorana polynomials, their root constellations, and spin-1 vector algebra."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import matrix_balance

from .harmonics import SpinState
from .sphere import (
    INFINITY,
    TOL,
    EulerRotation,
    StereoPoint,
    angles_from_stereo,
    antipode,
    as_stereo,
    chordal_distance,
    vector_from_stereo,
)
from .wigner import rotate_state


class PairingFailure(ValueError):
    """Roots could not be matched into antipodal pairs."""

    def __init__(self, message: str, worst_residual: float):
        super().__init__(message)
        self.worst_residual = worst_residual


class RootClusterWarning(UserWarning):
    """Numerically computed roots are clustered; their accuracy is degraded."""


def mu_factors(two_j: int) -> np.ndarray:
    """mu_m = (-1)^(j+m) sqrt(binom(2j, j+m)) for m = -j..j."""
    return np.array([(-1.0) ** k * math.sqrt(math.comb(two_j, k)) for k in range(two_j + 1)])


@dataclass(frozen=True, eq=False)
class MajoranaPolynomial:
    """Coefficients c_k of zeta^k, k = 0..2j, with c_{j+m} = psi_m mu_m."""

    two_j: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size != self.two_j + 1:
            raise ValueError("coefficient length must be 2j+1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, zeta):
        """Polynomial part only (Horner)."""
        return np.polynomial.polynomial.polyval(zeta, self.coeffs)

    def majorana_function(self, zeta):
        """Polynomial times exp(-i j arg zeta) / (1+|zeta|^2)^j."""
        return majorana_prefactor(self.two_j, zeta) * self(zeta)

    def degree(self, rel_tol: float = TOL.coefficient) -> int:
        scale = np.max(np.abs(self.coeffs)) if self.coeffs.size else 0.0
        nz = np.nonzero(np.abs(self.coeffs) > rel_tol * scale)[0]
        return int(nz[-1]) if nz.size else -1

    def to_state(self) -> SpinState:
        return SpinState(self.two_j, self.coeffs / mu_factors(self.two_j))


def majorana_prefactor(two_j: int, zeta):
    zeta = np.asarray(zeta, dtype=complex)
    return np.exp(-0.5j * two_j * np.angle(zeta)) / (1 + np.abs(zeta) ** 2) ** (two_j / 2)


def build_polynomial(s: SpinState) -> MajoranaPolynomial:
    mu = mu_factors(s.two_j)
    if s.two_j % 2 == 0 and not np.array_equal(mu, mu[::-1]):
        raise AssertionError("mu_m must be symmetric in m for integer j")
    return MajoranaPolynomial(s.two_j, s.coeffs * mu)


def majorana_function(s: SpinState, zeta):
    return build_polynomial(s).majorana_function(zeta)


@dataclass(frozen=True, eq=False)
class MajoranaConstellation:
    """The 2j roots of a Majorana polynomial, with roots at infinity for any
    degree deficit, plus the coefficient of the highest nonzero power
    (psi_j mu_j when the polynomial has full degree).
    """

    two_j: int
    roots: tuple
    leading: complex

    def __post_init__(self):
        roots = tuple(as_stereo(r) for r in self.roots)
        if len(roots) != self.two_j:
            raise ValueError(f"expected {self.two_j} roots, got {len(roots)}")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "leading", complex(self.leading))

    @property
    def finite_roots(self) -> np.ndarray:
        return np.array([r.zeta for r in self.roots if r.is_finite], dtype=complex)

    @property
    def n_infinite(self) -> int:
        return sum(r.at_infinity for r in self.roots)

    def unit_vectors(self) -> np.ndarray:
        return np.array([vector_from_stereo(r) for r in self.roots]).reshape(-1, 3)

    def angles(self) -> list[tuple[float, float]]:
        return [angles_from_stereo(r) for r in self.roots]

    def polynomial(self) -> MajoranaPolynomial:
        """Coefficients rebuilt from the roots and the leading coefficient."""
        c = self.leading * np.polynomial.polynomial.polyfromroots(self.finite_roots)
        out = np.zeros(self.two_j + 1, dtype=complex)
        out[: c.size] = c
        return MajoranaPolynomial(self.two_j, out)


def _polish(coeffs: np.ndarray, z: complex) -> complex:
    """One guarded Newton step; large roots are polished in w = 1/zeta."""
    if abs(z) <= 1:
        c, x = coeffs, z
    else:
        c, x = coeffs[::-1], 1 / z
    p = np.polynomial.polynomial.polyval(x, c)
    dp = np.polynomial.polynomial.polyval(x, np.polynomial.polynomial.polyder(c))
    if dp == 0 or p == 0:
        return z
    x_new = x - p / dp
    if abs(np.polynomial.polynomial.polyval(x_new, c)) >= abs(p):
        return z
    if abs(z) <= 1:
        return x_new
    return 1 / x_new if x_new != 0 else z


# a k-fold root computed in double precision splits into k points about
# eps^(1/k) apart; clusters that tight are candidates for one multiple root
CLUSTER_SPREAD = 8.0
CLUSTER_MAX_RADIUS = 0.5
# accept the multiple root when its Taylor coefficients vanish to this many ulps
MULTIPLICITY_ULPS = 1e4


def _local(coeffs: np.ndarray, pts) -> tuple[np.ndarray, np.ndarray, bool] | None:
    """Coefficients and points in zeta, or in 1/zeta when the cluster sits in the southern hemisphere."""
    centroid = np.sum([vector_from_stereo(q) for q in pts], axis=0)
    if centroid[2] >= 0:
        if any(q.at_infinity for q in pts):
            return None
        return coeffs, np.array([q.zeta for q in pts], dtype=complex), True
    w = [0j if q.at_infinity else 1 / q.zeta for q in pts]
    return coeffs[::-1], np.array(w, dtype=complex), False


def _is_multiple(c: np.ndarray, x: complex, k: int) -> bool:
    P = np.polynomial.polynomial
    eps = np.finfo(float).eps
    # normwise: every coefficient may carry an error of eps * max|c|
    scale = np.abs(c).max()
    for i in range(k):
        taylor = P.polyval(x, P.polyder(c, i)) / math.factorial(i)
        m = np.arange(i, c.size)
        bound = scale * np.sum([math.comb(int(q), i) for q in m] * abs(x) ** (m - i))
        if abs(taylor) > MULTIPLICITY_ULPS * eps * bound:
            return False
    return True


def _multiple_root(coeffs: np.ndarray, pts, k: int) -> StereoPoint | None:
    """The simple root of p^(k-1) nearest the cluster, if p has a k-fold root
    there to rounding accuracy; else None.
    """
    P = np.polynomial.polynomial
    local = _local(coeffs, pts)
    if local is None:
        return None
    c, xs, inside = local
    dk1 = P.polyder(c, k - 1)
    if np.abs(dk1).max() == 0:
        return None
    cand = P.polyroots(dk1)
    if cand.size == 0:
        return None
    # the k-fold split is nonlinear, so the mean is only a rough guide
    mean = xs.mean()
    x = cand[np.argmin(np.abs(cand - mean))]
    if abs(x - mean) > np.abs(xs - mean).max() + 1e-12 or not _is_multiple(c, x, k):
        return None
    if inside:
        return StereoPoint(complex(x))
    return INFINITY if x == 0 else StereoPoint(complex(1 / x))


def _merge_clusters(coeffs: np.ndarray, pts: list) -> list:
    """Replace clusters that are split multiple roots by the refined root."""
    eps = np.finfo(float).eps
    d = np.array([[chordal_distance(a, b) for b in pts] for a in pts])
    free = set(range(len(pts)))
    out = []
    for i in range(len(pts)):
        if i not in free:
            continue
        near = [m for _, m in sorted((d[i, m], m) for m in free)]
        sizes, diam = [], 0.0
        for k in range(2, len(near) + 1):
            diam = max(diam, d[near[k - 1], near[: k - 1]].max())
            radius = min(CLUSTER_SPREAD * eps ** (1 / k), CLUSTER_MAX_RADIUS)
            if diam < radius:
                sizes.append(k)
            elif diam >= CLUSTER_MAX_RADIUS:
                break
        merged = None
        for k in reversed(sizes):
            z = _multiple_root(coeffs, [pts[m] for m in near[:k]], k)
            if z is not None:
                merged = (z, near[:k])
                break
        if merged is None:
            out.append(pts[i])
            free.discard(i)
        else:
            out += [merged[0]] * len(merged[1])
            free -= set(merged[1])
    return out


def _companion_roots(c: np.ndarray) -> np.ndarray:
    """Roots of sum c_k x^k (c[-1] != 0, c[0] != 0) via a balanced companion matrix."""
    n = c.size - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([-c[0] / c[1]])
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    bal, _ = matrix_balance(comp, permute=False)
    return np.linalg.eigvals(bal)


def find_roots(p: MajoranaPolynomial, rel_tol: float = TOL.coefficient) -> MajoranaConstellation:
    c = p.coeffs
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0:
        raise ValueError("the null state has no Majorana constellation")
    nz = np.nonzero(np.abs(c) > rel_tol * scale)[0]
    lo, hi = int(nz[0]), int(nz[-1])
    found = [_polish(c, z) for z in _companion_roots(c[lo : hi + 1])]
    roots = [StereoPoint(0j)] * lo + [StereoPoint(z) for z in found]
    roots += [INFINITY] * (p.two_j - hi)
    leading = c[hi]
    if len(found) > 1:
        pts = roots[lo : lo + len(found)]
        dmin = min(chordal_distance(a, b) for i, a in enumerate(pts) for b in pts[i + 1 :])
        if dmin < TOL.cluster:
            warnings.warn(
                f"clustered Majorana roots (min chordal separation {dmin:.2e})",
                RootClusterWarning,
                stacklevel=2,
            )
    if len(roots) > 1:
        # trimmed zeros and infinities may belong to a split multiple root too
        dmin = min(chordal_distance(a, b) for i, a in enumerate(roots) for b in roots[i + 1 :])
        if dmin < CLUSTER_MAX_RADIUS:
            merged = _merge_clusters(c, roots)
            if merged != roots:
                roots = merged
                fin = [r.zeta for r in roots if r.is_finite]
                basis = np.zeros(c.size, dtype=complex)
                basis[: len(fin) + 1] = np.polynomial.polynomial.polyfromroots(fin)
                leading = np.vdot(basis, c) / np.vdot(basis, basis)
    return MajoranaConstellation(p.two_j, tuple(roots), leading)


def constellation(s: SpinState) -> MajoranaConstellation:
    return find_roots(build_polynomial(s))


def match_multisets(a, b) -> float:
    """Worst chordal distance of a greedy one-to-one matching of two point multisets."""
    a = [as_stereo(x) for x in a]
    b = [as_stereo(x) for x in b]
    if len(a) != len(b):
        raise ValueError("multisets differ in size")
    if not a:
        return 0.0
    d = np.array([[chordal_distance(x, y) for y in b] for x in a])
    worst = 0.0
    for _ in range(len(a)):
        i, k = np.unravel_index(np.argmin(d), d.shape)
        worst = max(worst, float(d[i, k]))
        d[i, :] = np.inf
        d[:, k] = np.inf
    return worst


def antipodal_matching(roots) -> tuple[list[tuple], float]:
    """Greedy matching of each root with the root closest to its antipode.

    Returns the pairs and the worst chordal distance between a root and the
    antipode of its partner.
    """
    roots = [as_stereo(r) for r in roots]
    n = len(roots)
    if n % 2:
        return [], math.inf
    anti = [antipode(r) for r in roots]
    d = np.array([[chordal_distance(roots[a], anti[b]) for b in range(n)] for a in range(n)])
    d = 0.5 * (d + d.T).reshape(n, n)
    np.fill_diagonal(d, np.inf)
    pairs, worst = [], 0.0
    for _ in range(n // 2):
        a, b = np.unravel_index(np.argmin(d), d.shape)
        worst = max(worst, float(d[a, b]))
        pairs.append((roots[a], roots[b]))
        d[[a, b], :] = np.inf
        d[:, [a, b]] = np.inf
    return pairs, worst


def pair_antipodal(c: MajoranaConstellation, tol: float = TOL.pairing) -> list[tuple]:
    pairs, worst = antipodal_matching(c.roots)
    if worst >= tol:
        raise PairingFailure(
            f"roots are not antipodal: worst pair residual {worst:.3e} >= {tol:.1e}", worst
        )
    return pairs


def verify_factorization(s: SpinState, c: MajoranaConstellation, probes) -> float:
    """Max relative gap between the coefficient form and the root-product form
    of the Majorana function at finite probe points.
    """
    poly = build_polynomial(s)
    roots = c.finite_roots
    worst = 0.0
    for z in probes:
        z = as_stereo(z)
        if z.at_infinity:
            raise ValueError("probes must be finite")
        pref = majorana_prefactor(s.two_j, z.zeta)
        lhs = pref * poly(z.zeta)
        rhs = pref * c.leading * np.prod(z.zeta - roots)
        scale = max(abs(lhs), abs(rhs))
        if scale > 0:
            worst = max(worst, float(abs(lhs - rhs) / scale))
    return worst


def time_reverse_state(s: SpinState) -> SpinState:
    """(T psi)_m = (-1)^(j-m) conj(psi_{-m})."""
    k = np.arange(s.two_j + 1)  # j + m, so j - m = 2j - k
    sign = np.where((s.two_j - k) % 2, -1.0, 1.0)
    return SpinState(s.two_j, sign * s.coeffs[::-1].conj())


def time_reverse(c: MajoranaConstellation) -> MajoranaConstellation:
    """Antipodize every root; the new leading coefficient follows from
    c'_k = (-1)^k conj(c_{2j-k}) applied to the lowest nonzero coefficient.
    """
    n_zero = sum(r.is_finite and r.zeta == 0 for r in c.roots)
    nonzero = np.array([r.zeta for r in c.roots if r.is_finite and r.zeta != 0])
    lowest = c.leading * np.prod(-nonzero)
    leading = (-1.0) ** (c.two_j - n_zero) * np.conj(lowest)
    return MajoranaConstellation(c.two_j, tuple(antipode(r) for r in c.roots), leading)


# --- spin 1 -----------------------------------------------------------------

_S2C = np.array([[-1, 0, 1], [-1j, 0, -1j], [0, math.sqrt(2), 0]]) / math.sqrt(2)


@dataclass(frozen=True)
class CartesianSpin1:
    vx: complex
    vy: complex
    vz: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.vz], dtype=complex)


@dataclass(frozen=True)
class NilpotentVector:
    nx: complex
    ny: complex
    nz: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.nx, self.ny, self.nz], dtype=complex)

    def self_dot(self) -> complex:
        v = self.as_array()
        return complex(v @ v)

    def spin_axis(self) -> np.ndarray:
        """The real vector i conj(nu) x nu."""
        v = self.as_array()
        return (1j * np.cross(v.conj(), v)).real


def _require_spin1(s: SpinState) -> None:
    if s.two_j != 2:
        raise ValueError(f"spin-1 operation needs j=1, got j={s.two_j}/2")


def spherical_to_cartesian(s: SpinState) -> CartesianSpin1:
    """Cartesian vector of a spin-1 state; psi is ascending (psi_-1, psi_0, psi_+1)."""
    _require_spin1(s)
    v = _S2C @ s.coeffs[::-1]
    return CartesianSpin1(*(complex(x) for x in v))


def cartesian_to_spherical(v) -> SpinState:
    arr = v.as_array() if hasattr(v, "as_array") else np.asarray(v, dtype=complex)
    return SpinState(2, (_S2C.conj().T @ arr)[::-1])


def spin1_roots_closed_form(s: SpinState, rel_tol: float = TOL.coefficient):
    """Both roots of psi_-1 - sqrt(2) psi_0 zeta + psi_+1 zeta^2 by the quadratic
    formula, with roots at infinity when psi_+1 (and psi_0) vanish.
    """
    _require_spin1(s)
    pm, p0, pp = s.coeffs
    scale = np.max(np.abs(s.coeffs))
    if scale == 0:
        raise ValueError("the null state has no Majorana roots")
    small = rel_tol * scale
    if abs(pp) <= small:
        if abs(p0) <= small:
            return INFINITY, INFINITY
        return StereoPoint(pm / (math.sqrt(2) * p0)), INFINITY
    disc = np.sqrt(complex(p0 * p0 - 2 * pp * pm))
    # choose the sign that avoids cancellation; the partner comes from the root product
    big = p0 + disc if abs(p0 + disc) >= abs(p0 - disc) else p0 - disc
    if big == 0:
        return StereoPoint(0j), StereoPoint(0j)
    r1 = big / (math.sqrt(2) * pp)
    r2 = math.sqrt(2) * pm / big
    return StereoPoint(r1), StereoPoint(r2)


def spin1_roots_cartesian(v) -> tuple[StereoPoint, StereoPoint]:
    """(v_z +- sqrt(v.v)) / (-v_x + i v_y)."""
    vx, vy, vz = (v.as_array() if hasattr(v, "as_array") else np.asarray(v, dtype=complex))
    den = -vx + 1j * vy
    root = np.sqrt(complex(vx * vx + vy * vy + vz * vz))
    out = []
    for num in (vz + root, vz - root):
        out.append(INFINITY if den == 0 else StereoPoint(num / den))
    return tuple(out)


def nilpotent_of(zeta) -> NilpotentVector:
    """Cartesian image of the rotated ket |+1, 1; zeta>."""
    theta, phi = angles_from_stereo(zeta)
    ket = rotate_state(SpinState.basis(1, 1), EulerRotation.to_direction(theta, phi))
    v = spherical_to_cartesian(ket)
    return NilpotentVector(v.vx, v.vy, v.vz)
