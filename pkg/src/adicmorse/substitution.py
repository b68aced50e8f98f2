"""Thue-Morse words and digit differentiation.

Words are plain ``str`` objects over the alphabet ``"01"``.
"""
import numpy as np

from .dyadic import Dyadic, from_bits, to_bits
from .errors import StreamedUnderdetermined

_ZETA = {"0": "01", "1": "10"}
_COMPLEMENT = str.maketrans("01", "10")


def _check_word(w):
    if w.strip("01"):
        raise ValueError(f"word {w!r} is not over the alphabet 01")


def zeta(w):
    """Morse substitution, ``0 -> 01`` and ``1 -> 10``, applied letterwise."""
    _check_word(w)
    return "".join(_ZETA[c] for c in w)


def complement(w):
    return w.translate(_COMPLEMENT)


def thue_morse(n):
    """First ``n`` letters of the Thue-Morse word ``0110100110010110...``."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n == 0:
        return ""
    w = "0"
    while len(w) < n:
        w = zeta(w)
    return w[:n]


def derivative(x):
    """Digit differentiation: digit ``k`` of the result is ``x_{k+1} - x_k mod 2``.

    Digits are 1-based here, so output digit ``k`` reads input digits ``k``
    and ``k + 1``.  The result of a rational point is rational, with the
    same pre-period and a period dividing the input period.
    """
    if not isinstance(x, Dyadic):
        raise StreamedUnderdetermined("derivative needs a rational point")
    prefix, period = to_bits(x)
    s, length = len(prefix), len(period)
    w = x.digits(s + length + 1)
    d = (w ^ (w >> 1))
    return from_bits([(d >> k) & 1 for k in range(s)],
                     [(d >> k) & 1 for k in range(s, s + length)])


def cube_free(w):
    """True iff ``w`` has no factor ``vvv`` with ``v`` nonempty.

    For each period ``p`` a cube exists exactly when ``w[j] == w[j + p]``
    holds on a run of at least ``2p`` consecutive ``j``.
    """
    _check_word(w)
    a = np.frombuffer(w.encode(), dtype=np.uint8)
    n = len(a)
    for p in range(1, n // 3 + 1):
        eq = np.concatenate(([False], a[:-p] == a[p:], [False])).astype(np.int8)
        edges = np.flatnonzero(np.diff(eq))
        if len(edges) and (edges[1::2] - edges[0::2]).max() >= 2 * p:
            return False
    return True
