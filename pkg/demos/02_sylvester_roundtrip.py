"""A random real function of degree j, taken apart and put back together.

extract_multipoles finds j directions and one amplitude. reconstruct
multiplies the directional factors back out and projects onto degree j.
The directions are unique up to flipping pairs of signs.
"""
import numpy as np

from sylvester import extract_multipoles, random_real_state, reconstruct

rng = np.random.default_rng(3)

for j in (1, 3, 6, 10):
    s = random_real_state(rng, j)
    mp = extract_multipoles(s)
    back = reconstruct(mp)
    err = np.linalg.norm(back.coeffs - s.coeffs) / np.linalg.norm(s.coeffs)
    print(f"j={j:2d}: amplitude {mp.amplitude:+.4e}, roundtrip relative error {err:.1e}")

s = random_real_state(rng, 4)
mp = extract_multipoles(s)
flipped = mp.flipped(0).flipped(2)
diff = np.abs(reconstruct(flipped).coeffs - reconstruct(mp).coeffs).max()
print(f"\nflipping two directions leaves the function unchanged (max diff {diff:.1e})")
diff1 = np.abs(reconstruct(mp.flipped(1)).coeffs - reconstruct(mp).coeffs).max()
print(f"flipping one direction is undone by the amplitude sign (max diff {diff1:.1e})")
