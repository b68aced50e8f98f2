"""The Morse transformation on the 2-adic integers.

``M`` is the adic map obtained from the odometer by reversing the digit
order ``0 < 1`` whenever the next digit is 1.  Concretely, find the first
repeat ``x_r = x_{r+1}`` and rewrite the first ``r`` digits:

* ``x_r = 0``: digits ``1..r`` become all ones (``...00* -> 1...10*``),
* ``x_r = 1``: digits ``1..r`` become all zeros (``...11* -> 0...01*``).

This equals ``x + (-1)**x_r * a_r`` with ``a_r`` from :func:`a_seq`; the two
routes are kept separate (:func:`morse_step` rewrites digits, :func:`jump`
uses the closed form) so each checks the other.

The points ``-1/3 = (10)^inf`` and ``-2/3 = (01)^inf`` never repeat and
``0``, ``-1`` have no preimage; the map is made total and bijective by
gluing ``M(-1/3) = 0`` and ``M(-2/3) = -1``.
"""
from typing import NamedTuple

from .dyadic import MINUS_ONE_THIRD, MINUS_TWO_THIRDS, Dyadic
from .errors import NoRepeat

_SCAN_CHUNK = 64


class JumpParams(NamedTuple):
    """Index ``r`` of the first repeat ``x_r = x_{r+1}`` and the repeated digit ``eps``."""
    r: int
    eps: int


def a_seq(r):
    """Jump magnitude ``a_r``: 0, 1, 2, 5, 10, 21, 42, ...

    ``(2**(r+1) - 1) / 3`` for odd ``r`` and ``(2**(r+1) - 2) / 3`` for even ``r``.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    top = (1 << (r + 1)) - (1 if r % 2 else 2)
    q, rem = divmod(top, 3)
    assert rem == 0, f"closed form of a_{r} is not an integer"
    return q


def _is_max_point(x):
    return isinstance(x, Dyadic) and (x == MINUS_ONE_THIRD or x == MINUS_TWO_THIRDS)


def repeat_positions(x, count, start=1):
    """The first ``count`` indices ``r >= start`` with ``x_r = x_{r+1}``.

    For a rational point this terminates unless the tail alternates forever;
    for streamed points the digit budget bounds the scan.
    """
    found = []
    width = start + _SCAN_CHUNK
    seen = start - 1          # positions <= seen already scanned
    while len(found) < count:
        if isinstance(x, Dyadic) and width > 4 * _SCAN_CHUNK and _alternates_from(x, seen + 1):
            raise NoRepeat(f"{x} has no further repeated digits")
        w = x.digits(width + 1)
        same = ~(w ^ (w >> 1)) & ((1 << width) - 1)
        same >>= seen
        same <<= seen
        while same and len(found) < count:
            low = same & -same
            found.append(low.bit_length())
            same ^= low
        seen = width
        width *= 2
    return found


def _alternates_from(x, i):
    # digits from i on alternate iff shifting i-1 times lands on -1/3 or -2/3
    y = x
    for _ in range(i - 1):
        y = y.shift()
    return y == MINUS_ONE_THIRD or y == MINUS_TWO_THIRDS


def first_repeat(x):
    """``JumpParams`` of the first repeated digit pair; :class:`NoRepeat` on -1/3, -2/3."""
    if _is_max_point(x):
        raise NoRepeat(f"{x} has strictly alternating digits")
    (r,) = repeat_positions(x, 1)
    return JumpParams(r, x.bit(r))


def jump(x):
    """The jump ``t(x) = M(x) - x = (-1)**eps * a_r``, as an int."""
    r, eps = first_repeat(x)
    return -a_seq(r) if eps else a_seq(r)


def step_word(w, width):
    """Forward rewrite on the first ``width + 1`` digits ``w`` of a point.

    Returns ``(r, low)``: ``M`` replaces digits ``1..r`` by ``low``.  ``None``
    if there is no repeat among positions ``1..width``.
    """
    same = ~(w ^ (w >> 1)) & ((1 << width) - 1)
    if not same:
        return None
    r = (same & -same).bit_length()
    return r, (0 if (w >> (r - 1)) & 1 else (1 << r) - 1)


def unstep_word(w, width):
    """Inverse rewrite on the first ``width`` digits; ``None`` if they are constant."""
    lead = w & 1
    run = w if lead == 0 else ~w & ((1 << width) - 1)
    if not run:
        return None
    rho = (run & -run).bit_length() - 1    # length of the leading run
    # 1^rho 0* came from eps = 0, 0^rho 1* from eps = 1
    return rho, _alternating(rho, 1 - lead)


def morse_step(x):
    """``M(x)`` by the prefix rewrite, glued at -1/3 and -2/3."""
    if _is_max_point(x):
        return Dyadic(0) if x == MINUS_ONE_THIRD else Dyadic(-1)
    r, eps = first_repeat(x)
    return x.replace_low(r, 0 if eps else (1 << r) - 1)


def _alternating(length, last):
    """Digits ``1..length`` alternating and ending with digit ``last``."""
    return sum(1 << (i - 1) for i in range(1, length + 1) if (length - i) % 2 != last)


def morse_inverse(z):
    """The unique ``x`` with ``morse_step(x) == z``."""
    if isinstance(z, Dyadic) and z.is_integer() and z.num in (0, -1):
        return MINUS_ONE_THIRD if z.num == 0 else MINUS_TWO_THIRDS
    width = _SCAN_CHUNK
    while True:
        found = unstep_word(z.digits(width), width)
        if found is not None:
            return z.replace_low(*found)
        width *= 2


def integer_params(n):
    """``(r(n), eps(n))`` from the congruences ``n = a_{k-1}`` or ``n = -a_{k-1} - 1`` mod ``2**(k+1)``."""
    k = 1
    while True:
        mod = 1 << (k + 1)
        a = a_seq(k - 1)
        if (n - a) % mod == 0:
            return JumpParams(k, 0)
        if (n + a + 1) % mod == 0:
            return JumpParams(k, 1)
        k += 1


def morse_on_int(n):
    """``M(n) = n + (-1)**eps(n) * a_{r(n)}`` for a rational integer ``n``."""
    r, eps = integer_params(n)
    return n - a_seq(r) if eps else n + a_seq(r)
