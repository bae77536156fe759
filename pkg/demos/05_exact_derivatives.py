"""Iterated directional derivatives of 1/r, in exact rational arithmetic.

Differentiating 1/r along j directions gives a harmonic function; the
Laplacian is checked to vanish exactly. Restricted to the unit sphere and
projected onto degree j, its multipoles are the directions we started from.
"""
import numpy as np

from sylvester import extract_multipoles, grid_for_degree, laplacian, multipole_derivative, project_onto_degree
from sylvester import restrict_to_sphere
from sylvester.polyderiv import random_rational_directions

rng = np.random.default_rng(2)

f = multipole_derivative([(0, 0, 1), (0, 0, 1)])
print("d^2/dz^2 (1/r) =", f)
print("its Laplacian is zero:", laplacian(f).is_zero())

dirs = random_rational_directions(rng, 3)
print("\nthree rational unit directions:")
for d in dirs:
    print("   ", tuple(str(c) for c in d))
f = multipole_derivative(dirs)
print("Laplacian of the triple derivative is exactly zero:", laplacian(f).is_zero())

g = grid_for_degree(3)
s = project_onto_degree(g.with_values(restrict_to_sphere(f, g)), 3)
print("\nrecovered directions (up to sign):")
for d in extract_multipoles(s).direction_array():
    print("   ", np.round(d, 10))
print("input directions as floats:")
for d in dirs:
    print("   ", np.round([float(c) for c in d], 10))
