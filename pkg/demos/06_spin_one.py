"""Spin 1 in three dimensions.

A spin-1 state is a complex 3-vector. Its two Majorana roots come from a
quadratic; a real vector v has its roots at +v and -v. The coherent state
pointing along u is a null vector nu (nu.nu = 0) whose spin axis lies on
the line through u.
"""
import numpy as np

from sylvester import SpinState, constellation, nilpotent_of, spherical_to_cartesian, spin1_roots_closed_form
from sylvester.majorana import cartesian_to_spherical, spin1_roots_cartesian
from sylvester.sphere import StereoPoint, vector_from_stereo

rng = np.random.default_rng(9)

s = SpinState(2, rng.normal(size=3) + 1j * rng.normal(size=3)).normalized()
print("closed-form roots:", [f"{r.zeta:.6f}" for r in spin1_roots_closed_form(s)])
print("companion roots:  ", [f"{r.zeta:.6f}" for r in constellation(s).roots])
print("cartesian vector: ", np.round(spherical_to_cartesian(s).as_array(), 6))

v = np.array([1.0, -2.0, 0.5])
v /= np.linalg.norm(v)
print("\nreal vector", np.round(v, 6), "has roots along")
for r in spin1_roots_cartesian(v):
    print("   ", np.round(vector_from_stereo(r), 6))
print("and is a real state:", cartesian_to_spherical(v).is_real_state(1e-12))

z = StereoPoint(0.6 - 0.8j)
nu = nilpotent_of(z)
print("\ncoherent state toward", np.round(vector_from_stereo(z), 6))
print("   nu =", np.round(nu.as_array(), 6))
print(f"   nu.nu = {abs(nu.self_dot()):.1e}")
print("   i conj(nu) x nu =", np.round(nu.spin_axis(), 6))
