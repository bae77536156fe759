"""Exact directional derivatives of 1/r.

Functions are finite sums of P(x, y, z) / r^k with P homogeneous. This class
is closed under d/dx_i, the laplacian and multiplication by coordinates, so
Maxwell's multipole derivatives can be formed without a CAS. Coefficients are
whatever numbers the caller supplies: ``Fraction`` gives exact results,
``float`` gives rounded ones.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Number

import numpy as np

_AXES = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class HomogeneousPoly:
    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != 3 or sum(mono) != degree or min(mono) < 0:
                raise ValueError(f"monomial {mono} does not have degree {degree}")
            if c != 0:
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def constant(cls, c=1) -> HomogeneousPoly:
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def linear(cls, u) -> HomogeneousPoly:
        return cls(1, {ax: c for ax, c in zip(_AXES, u)})

    @classmethod
    def r_squared(cls) -> HomogeneousPoly:
        return cls(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})

    def is_zero(self, tol=0) -> bool:
        return all(abs(c) <= tol for c in self.terms.values())

    def __add__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add polynomials of different degree")
        deg = self.degree if not self.is_zero() else other.degree
        out = defaultdict(int, self.terms)
        for m, c in other.terms.items():
            out[m] += c
        return HomogeneousPoly(deg, out)

    def __neg__(self) -> HomogeneousPoly:
        return HomogeneousPoly(self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        return self + (-other)

    def scale(self, a) -> HomogeneousPoly:
        return HomogeneousPoly(self.degree, {m: a * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        out = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[(m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])] += c1 * c2
        return HomogeneousPoly(self.degree + other.degree, out)

    __rmul__ = __mul__

    def partial(self, axis: int) -> HomogeneousPoly:
        out = {}
        for m, c in self.terms.items():
            if m[axis]:
                e = list(m)
                e[axis] -= 1
                out[tuple(e)] = c * m[axis]
        return HomogeneousPoly(max(self.degree - 1, 0), out)

    def directional(self, u) -> HomogeneousPoly:
        """u . grad P."""
        res = HomogeneousPoly(max(self.degree - 1, 0))
        for axis, ua in enumerate(u):
            if ua != 0:
                res = res + self.partial(axis).scale(ua)
        return res

    def laplacian(self) -> HomogeneousPoly:
        res = HomogeneousPoly(max(self.degree - 2, 0))
        for axis in range(3):
            res = res + self.partial(axis).partial(axis)
        return res

    def __call__(self, x, y, z):
        x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
        out = np.zeros(np.broadcast(x, y, z).shape)
        for (p, q, s), c in self.terms.items():
            out = out + float(c) * x**p * y**q * z**s
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return (self - other).is_zero() if self.degree == other.degree else (
            self.is_zero() and other.is_zero()
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, q, s), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip("xyz", (p, q, s)) if e)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


class RationalRadialFunction:
    """sum_i P_i(x, y, z) / r^{k_i}, keyed by (deg P_i, k_i)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        merged: dict[tuple[int, int], HomogeneousPoly] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or [])
        for key, poly in items:
            if isinstance(key, tuple):
                k = key[1]
            else:
                k, poly = poly, key  # (poly, k) pairs
            key = (poly.degree, int(k))
            merged[key] = merged[key] + poly if key in merged else poly
        self.terms = {key: p for key, p in merged.items() if not p.is_zero()}

    @classmethod
    def inverse_r(cls) -> RationalRadialFunction:
        return cls({(0, 1): HomogeneousPoly.constant(1)})

    def __add__(self, other: RationalRadialFunction) -> RationalRadialFunction:
        return RationalRadialFunction(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> RationalRadialFunction:
        return RationalRadialFunction({key: -p for key, p in self.terms.items()})

    def __sub__(self, other: RationalRadialFunction) -> RationalRadialFunction:
        return self + (-other)

    def scale(self, a) -> RationalRadialFunction:
        return RationalRadialFunction({key: p.scale(a) for key, p in self.terms.items()})

    def max_radial_exponent(self) -> int:
        return max((k for _, k in self.terms), default=0)

    def max_degree(self) -> int:
        return max((d for d, _ in self.terms), default=0)

    def canonical(self) -> dict[tuple[int, int], tuple[HomogeneousPoly, int]]:
        """Each homogeneity class over a single power of r.

        Terms P/r^k with equal d - k and equal parity of k are brought to the
        largest k in the class by multiplying with powers of r^2; the
        resulting numerators are unique, so two functions are equal exactly
        when their canonical forms agree.
        """
        groups: dict[tuple[int, int], list] = defaultdict(list)
        for (d, k), p in self.terms.items():
            groups[(d - k, k % 2)].append((p, k))
        out = {}
        r2 = HomogeneousPoly.r_squared()
        for cls_key, members in groups.items():
            top = max(k for _, k in members)
            acc = None
            for p, k in members:
                for _ in range((top - k) // 2):
                    p = p * r2
                acc = p if acc is None else acc + p
            if not acc.is_zero():
                out[cls_key] = (acc, top)
        return out

    def is_zero(self, tol=0) -> bool:
        return all(p.is_zero(tol) for p, _ in self.canonical().values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalRadialFunction):
            return NotImplemented
        return (self - other).is_zero()

    def __call__(self, x, y, z):
        x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
        r = np.sqrt(x * x + y * y + z * z)
        out = np.zeros(np.broadcast(x, y, z).shape)
        for (_, k), p in self.terms.items():
            out = out + p(x, y, z) / r**k
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({p})/r^{k}" for (_, k), p in sorted(self.terms.items()))


def directional_derivative(f: RationalRadialFunction, u) -> RationalRadialFunction:
    """u . grad f, using grad(P / r^k) = grad(P) / r^k - k P x / r^{k+2}."""
    u = tuple(u.as_array()) if hasattr(u, "as_array") else tuple(u)
    lin = HomogeneousPoly.linear(u)
    out = []
    for (_, k), p in f.terms.items():
        out.append((p.directional(u), k))
        if k:
            out.append((p * lin * (-k), k + 2))
    return RationalRadialFunction(out)


def multipole_derivative(directions) -> RationalRadialFunction:
    """D_{u_1} ... D_{u_j} (1/r)."""
    f = RationalRadialFunction.inverse_r()
    for u in directions:
        f = directional_derivative(f, u)
    return f


def laplacian(f: RationalRadialFunction) -> RationalRadialFunction:
    """Exact laplacian, termwise.

    For homogeneous P of degree d, lap(P r^-k) = lap(P) r^-k + k(k - 1 - 2d) P r^-(k+2).
    """
    out = []
    for (d, k), p in f.terms.items():
        out.append((p.laplacian(), k))
        c = k * (k - 1 - 2 * d)
        if c:
            out.append((p.scale(c), k + 2))
    return RationalRadialFunction(out)


def restrict_to_sphere(f: RationalRadialFunction, grid) -> np.ndarray:
    """Values at r = 1 on the grid nodes (shape ``grid.shape``)."""
    u = grid.unit_vectors()
    out = np.zeros(grid.shape)
    for (_, _k), p in f.terms.items():
        out = out + p(u[..., 0], u[..., 1], u[..., 2])
    return out


def rational_unit_vector(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Exact rational point of the unit sphere, by inverse stereographic projection of a + ib."""
    a, b = Fraction(a), Fraction(b)
    n = 1 + a * a + b * b
    return (2 * a / n, 2 * b / n, (1 - a * a - b * b) / n)


def random_rational_directions(rng: np.random.Generator, j: int, denom: int = 16):
    return [
        rational_unit_vector(
            Fraction(int(rng.integers(-3 * denom, 3 * denom + 1)), denom),
            Fraction(int(rng.integers(-3 * denom, 3 * denom + 1)), denom),
        )
        for _ in range(j)
    ]
