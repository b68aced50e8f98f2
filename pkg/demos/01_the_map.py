"""
The Morse map on 2-adic integers
================================

Run with ``python demos/01_the_map.py``.  Each cell prints something small.
"""

# %%
# A 2-adic integer here is a rational with odd denominator.  Digits are read
# least significant first, so -1/7 is the repeating block 100.
from adicmorse import (Dyadic, a_seq, cube_free, derivative, first_repeat, format_bits, jump,
                       morse_inverse, morse_on_int, morse_step, parse_point, thue_morse)

x = parse_point("-1/7")
print("-1/7 =", format_bits(x))

# %%
# M finds the first place where two neighbouring digits agree and rewrites
# everything up to there.  The effect is always a translation by +-a_r.
r, eps = first_repeat(x)
print(f"first repeat at r={r}, digit {eps}; jump {jump(x)}; M(-1/7) = {morse_step(x)}")
print("a_r:", [a_seq(r) for r in range(12)])

# %%
# On the integers the map stays integral.  The orbit of 0 wanders up through
# every block [2^n, 2^(n+1)).
print("n    ", list(range(16)))
print("M(n) ", [morse_on_int(n) for n in range(16)])
y, orbit = Dyadic(0), []
for _ in range(20):
    y = morse_step(y)
    orbit.append(y.num)
print("orbit of 0:", orbit)

# %%
# The two alternating points have no repeat at all; they are glued onto the
# integer orbit so that M is a bijection of the whole space.
for p in ("-1/3", "-2/3"):
    z = parse_point(p)
    print(p, format_bits(z), "->", morse_step(z))
print("M^-1(0) =", morse_inverse(Dyadic(0)))

# %%
# Differentiating digits turns M into the odometer: D(M x) = D(x) + 1.
for p in ("-1/7", "5", "(0110)", "1(01)"):
    z = parse_point(p)
    lhs = derivative(morse_step(z)).as_fraction()
    rhs = derivative(z).as_fraction() + 1
    print(f"{p:>7}: D(Mx) = {lhs}, D(x) + 1 = {rhs}")
    assert lhs == rhs

# %%
# The Thue-Morse word is the fixed point of 0 -> 01, 1 -> 10.
w = thue_morse(64)
print(w)
print("cube free:", cube_free(thue_morse(4096)))
