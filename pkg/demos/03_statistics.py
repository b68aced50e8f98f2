"""
Random points
=============

For a random point the digits are fair coins, so the repeat index is
geometric.  Some points are unlucky, though: a long run of equal digits
sends the neighbours of x far away along its orbit.
"""

# %%
from adicmorse import Dyadic, format_bits, orbit_trace, r_distribution

rep = r_distribution(10 ** 6, kmax=10, seed0=0)
print(f"{'k':>3} {'P(r1=k)':>9} {'2^-k':>9} {'z':>6}")
for k in range(1, 11):
    freq = rep.frequencies["r1"][k] / rep.sample_count
    print(f"{k:>3} {freq:9.6f} {2.0 ** -k:9.6f} {rep.z_scores['r1'][k]:+6.2f}")
print("corr(r1, gap1):", round(rep.corr_r1_gap1, 5))

# %%
# How much of [-m, m] does the orbit reach in |k| <= K steps?
x = Dyadic(3626689, 63)
print(format_bits(x))
for K in (64, 128, 255, 256, 512):
    print(K, orbit_trace(x, K).covered_interval())
# eight low ones: x + 1 only shows up after the whole 2^8 block is used up
