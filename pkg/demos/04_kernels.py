"""Moving between the harmonic and the Majorana pictures with integral kernels.

The extending kernel turns harmonic coefficients into the Majorana function
at any point of the complex plane; the folding kernel goes back to values on
the sphere. Away from its zeros, the kernel is a fixed multiple of a product
of dot products, and that ratio does not depend on where it is sampled.
"""
import math
import warnings

import numpy as np

from sylvester import SpinState, eval_function, extend_via_kernel, fold_via_kernel
from sylvester.majorana import build_polynomial, majorana_function
from sylvester.multipole import kernel_ratio, kernel_roots
from sylvester.sphere import StereoPoint, random_stereo, vector_from_stereo
from sylvester.verify import banded_angles

rng = np.random.default_rng(5)
s = SpinState(4, rng.normal(size=5) + 1j * rng.normal(size=5))

probes = [random_stereo(rng) for _ in range(4)]
print("extension vs direct evaluation of the Majorana function:")
for z, v in zip(probes, extend_via_kernel(s, probes)):
    print(f"   zeta={z.zeta:.4f}: {v:.6f}  direct {majorana_function(s, z.zeta):.6f}")

angles = [(0.3, 1.0), (2.0, 4.0)]
print("\nfolding the Majorana polynomial back onto the sphere:")
for (t, p), v in zip(angles, fold_via_kernel(build_polynomial(s), angles)):
    print(f"   theta={t}, phi={p}: {v:.6f}  harmonic sum {eval_function(s, t, p):.6f}")

j = 4
print(f"\nkernel ratio for j={j} at a few points (should not change):")
for _ in range(4):
    z = random_stereo(rng)
    print(f"   {kernel_ratio(z, *banded_angles(rng, vector_from_stereo(z)), j):.12f}")

print("\nthe kernel in zeta vanishes j times at the probe direction and j times at its antipode:")
with warnings.catch_warnings():
    # the double roots come out of the eigensolver split; they are merged back
    warnings.simplefilter("ignore")
    roots = kernel_roots(1.0, 0.5, 2)
for r in roots:
    print(f"   {r.zeta:.6f}")
print(f"   probe point {StereoPoint(math.tan(0.5) * np.exp(0.5j)).zeta:.6f}")
