"""
Wavelet filters and the MODWT
=============================

The four filters, their defining identities, and what the transform does to
a return series: every level keeps all N coefficients, and the squared
coefficients add back up to the energy of the input.
"""

import numpy as np

from wavehedge import filter_table, imodwt, modwt
from wavehedge.filters import FILTER_NAMES

###############################################################################
# Filter identities. The scaling filter sums to one, the wavelet filter to
# zero, and both carry half the unit energy.

for name in FILTER_NAMES:
    filt = filter_table(name)
    print(f"{name:5s} L={filt.width:2d}  sum(g)={filt.scaling.sum():.15f}  "
          f"sum(h)={filt.wavelet.sum():+.1e}  |g|^2={np.sum(filt.scaling**2):.15f}")

###############################################################################
# Level-j equivalent filters widen quickly. Coefficients within L_j - 1 of
# the start of a window wrap around the edge and are treated as boundary
# values by the estimators.

la8 = filter_table("la8")
print("\nLA8 equivalent widths:", [la8.level_width(j) for j in range(1, 7)])

###############################################################################
# Decompose a fat-tailed series and check the energy budget and round trip.

x = np.random.default_rng(0).standard_t(4, size=2048) * 0.01
dec = modwt(x, "la8", levels=6)
energy = (dec.details**2).sum(axis=1)
print("\nenergy share per level:", np.round(energy / (x**2).sum(), 4))
print("smooth share:", round(float((dec.smooth**2).sum() / (x**2).sum()), 4))
total = energy.sum() + (dec.smooth**2).sum()
print("energy identity rel. error:", abs(total - (x**2).sum()) / (x**2).sum())
print("round trip max error:", np.max(np.abs(imodwt(dec) - x)))

###############################################################################
# Shifting the input shifts every level by the same amount; a decimated
# transform would not have this property.

shifted = modwt(np.roll(x, 5), "la8", 6)
print("shift covariant:", np.array_equal(shifted.details, np.roll(dec.details, 5, axis=-1)))
