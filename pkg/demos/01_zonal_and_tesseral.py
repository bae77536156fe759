"""Where do the multipoles of a real spherical harmonic point?

Zonal harmonics (m = 0) have all j directions stacked on the z axis.
Tesseral harmonics (m > 0) put m of them in the equator, spaced so that
their two ends form a regular 2m-gon, and the rest on the axis.
"""
import math

import numpy as np

from sylvester import extract_multipoles, real_harmonic_state


def describe(j, m):
    mp = extract_multipoles(real_harmonic_state(j, m))
    print(f"Re Y_{j}^{m}: amplitude {mp.amplitude:+.6f}")
    for d in mp.direction_array():
        polar = math.degrees(math.acos(min(1.0, abs(d[2]))))
        az = math.degrees(math.atan2(d[1], d[0])) % 180
        print(f"   direction {np.round(d, 6)}  angle from axis {polar:7.3f} deg  azimuth mod 180 {az:7.3f}")


print("Zonal harmonics: every direction is the z axis.\n")
for j in (1, 2, 5):
    describe(j, 0)

print("\nTesseral harmonics: equatorial directions split the circle evenly.\n")
for j, m in [(2, 2), (3, 2), (4, 3), (5, 2)]:
    describe(j, m)
    print(f"   expected azimuth step between equatorial lines: {180 / m:.3f} deg\n")
