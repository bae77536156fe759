"""Seeded property suite: rotation rigidity, antipodality, Sylvester roundtrip,
factorization and kernel-ratio constancy at a fixed degree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import random_real_state, random_state
from .majorana import antipodal_matching, constellation, match_multisets, verify_factorization
from .multipole import extract_multipoles, kernel_ratio, reconstruct
from .sphere import random_rotation, random_stereo, rotate_stereo, vector_from_stereo
from .wigner import rotate_state

TOLERANCES = {
    "rotation": 1e-7,
    "antipodal": 1e-8,
    "roundtrip": 1e-8,
    "factorization": 1e-8,
    "kernel_ratio": 1e-8,
}

PERTURBATION = 1e-3

# kernel ratios are sampled where |u . u(zeta)| <= KERNEL_BAND; nearer the kernel's
# zeros at +-u(zeta) the coefficient sum cancels to |u.nu|^j and loses relative accuracy
KERNEL_BAND = 0.5


@dataclass
class CheckResult:
    name: str
    tolerance: float
    passed: int = 0
    failed: int = 0
    worst: float = 0.0

    def record(self, ok: bool, residual: float) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
        if math.isfinite(residual):
            self.worst = max(self.worst, residual)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def rotation_residual(s, rot) -> float:
    before = constellation(s)
    after = constellation(rotate_state(s, rot))
    return match_multisets(after.roots, [rotate_stereo(rot, r) for r in before.roots])


def perturbed(s, rng: np.random.Generator, size: float = PERTURBATION):
    """Copy of ``s`` with one coefficient shifted by ``i * size``; breaks reality."""
    c = np.array(s.coeffs)
    c[rng.integers(c.size)] += 1j * size
    return type(s)(s.two_j, c)


def banded_angles(rng: np.random.Generator, axis, band: float = KERNEL_BAND) -> tuple[float, float]:
    """Random (theta, phi) with |u(theta, phi) . axis| <= band, by rejection."""
    while True:
        u = rng.normal(size=3)
        u /= np.linalg.norm(u)
        if abs(u @ axis) <= band:
            return math.acos(float(np.clip(u[2], -1, 1))), math.atan2(u[1], u[0]) % (2 * math.pi)


def run_suite(j: int, trials: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    checks = {name: CheckResult(name, tol) for name, tol in TOLERANCES.items()}
    ratios = []
    for _ in range(trials):
        s = random_state(rng, 2 * j)
        rot = random_rotation(rng)
        if j > 0:
            r = rotation_residual(s, rot)
            checks["rotation"].record(r < TOLERANCES["rotation"], r)

            probes = [random_stereo(rng) for _ in range(4)]
            r = verify_factorization(s, constellation(s), probes)
            checks["factorization"].record(r < TOLERANCES["factorization"], r)

        real = random_real_state(rng, j)
        if j > 0:
            r = antipodal_matching(constellation(real).roots)[1]
            checks["antipodal"].record(r < TOLERANCES["antipodal"], r)
            r_bad = antipodal_matching(constellation(perturbed(real, rng)).roots)[1]
            # a perturbed state must be rejected
            checks["antipodal"].record(r_bad >= TOLERANCES["antipodal"], 0.0)

        back = reconstruct(extract_multipoles(real))
        r = float(np.linalg.norm(back.coeffs - real.coeffs) / np.linalg.norm(real.coeffs))
        checks["roundtrip"].record(r < TOLERANCES["roundtrip"], r)

        zeta = random_stereo(rng)
        theta, phi = banded_angles(rng, vector_from_stereo(zeta))
        ratios.append(kernel_ratio(zeta, theta, phi, j))

    if ratios:
        ref = ratios[0]
        for q in ratios:
            r = abs(q - ref) / abs(ref)
            checks["kernel_ratio"].record(r < TOLERANCES["kernel_ratio"], r)

    return {
        "degree": j,
        "trials": trials,
        "seed": seed,
        "ok": all(c.ok for c in checks.values()),
        "checks": {
            name: {"passed": c.passed, "failed": c.failed, "worst": c.worst, "tolerance": c.tolerance}
            for name, c in checks.items()
        },
    }

