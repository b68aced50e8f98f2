"""
Orders on an orbit
==================

The orbit of a point under M visits x + t(k, x) at time k.  Reading off the
displacements gives a reordering of the integers; this demo builds that
reordering from the digits alone and checks it against the orbit.
"""

# %%
from adicmorse import (build_order, check_locally_finite, from_bits, lemma3_check, morse_perm,
                       order, orbit_trace, window_order)
from adicmorse.timesub import normalized_cycle, oracle_interval

x = from_bits([], [1, 0, 0])      # -1/7
tr = orbit_trace(x, 16)
print("t(k, -1/7), k = -4..6:", [tr[k] for k in range(-4, 7)])

# %%
# On each dyadic block the map cycles through a fixed permutation g_n.
for n in (1, 2, 3, 4):
    print(f"g_{n}:", morse_perm(n).cycle())

# %%
# Breaking the cycle at its top or its bottom gives two linear orders.
print("tau_3   ", order(3, "tau").tolist())
print("taubar_3", order(3, "taubar").tolist())

# %%
# The builder nests intervals around 0; every level is one of the two orders,
# shifted.  Compare with the order the orbit itself induces.
con = build_order(x, 3)
for r, iv in zip(con.r, con.intervals):
    level, cyc = normalized_cycle(iv)
    same = oracle_interval(x, iv.b, iv.c).to_list() == iv.to_list()
    print(f"r={r:2d} [{iv.b}, {iv.c}] level {level}, matches orbit: {same}")

# %%
print(" ◁ ".join(map(str, window_order(x, 9).to_list())))

# %%
# Consecutive levels differ by few restriction changes.
rep = check_locally_finite(build_order(from_bits([0, 1, 0, 0], [1, 1, 0]), 4))
print("max restriction differences:", rep.max_restriction_differences, "ok:", rep.ok)
print("modified shift identity on a window of 64:", lemma3_check(x, 64))
