"""Morse permutations ``g_n`` and their broken-cycle orders.

``g_n`` is a single cycle on ``{2**n, ..., 2**(n+1) - 1}`` built from two
shifted copies of ``g_{n-1}`` with one exceptional value in each half.
Breaking the cycle at ``2**(n+1) - 1`` gives the order ``tau``; breaking it at
``2**n`` gives ``taubar``.
"""
from functools import lru_cache

import numpy as np

from .errors import OutOfInterval
from .morse import a_seq

MATERIALIZE_MAX_LEVEL = 24
TAU = "tau"
TAUBAR = "taubar"


def _check_level(n):
    if n < 1:
        raise ValueError("level must be at least 1")


def morse_perm_value(n, i):
    """``g_n(i)`` evaluated point-wise, without materializing the permutation."""
    _check_level(n)
    if not (1 << n) <= i < (1 << (n + 1)):
        raise OutOfInterval(f"{i} is outside [2^{n}, 2^{n + 1})")
    shift = 0
    while n > 1:
        if i == a_seq(n + 1):
            return shift + (1 << (n + 1)) - 1
        if i == (1 << n) + a_seq(n):
            return shift + (1 << n)
        half = 1 << (n - 1)
        step = half if i < (1 << n) + half else 1 << n
        i -= step
        shift += step
        n -= 1
    return shift + (5 - i)


@lru_cache(maxsize=None)
def _perm_array(n):
    # index i - 2^n holds g_n(i)
    if n == 1:
        arr = np.array([3, 2], dtype=np.int64)
    else:
        prev = _perm_array(n - 1)
        arr = np.concatenate((prev + (1 << (n - 1)), prev + (1 << n)))
        arr[a_seq(n + 1) - (1 << n)] = (1 << (n + 1)) - 1
        arr[a_seq(n)] = 1 << n
    arr.setflags(write=False)
    return arr


class MorsePerm:
    """The permutation ``g_n`` of ``[2**n, 2**(n+1) - 1]``."""

    def __init__(self, n):
        _check_level(n)
        self.n = n
        self.lo = 1 << n
        self.hi = (1 << (n + 1)) - 1

    @property
    def array(self):
        if self.n > MATERIALIZE_MAX_LEVEL:
            raise MemoryError(f"level {self.n} is above the materialization limit")
        return _perm_array(self.n)

    def __call__(self, i):
        if self.n > MATERIALIZE_MAX_LEVEL:
            return morse_perm_value(self.n, i)
        if not self.lo <= i <= self.hi:
            raise OutOfInterval(f"{i} is outside [{self.lo}, {self.hi}]")
        return int(self.array[i - self.lo])

    def __len__(self):
        return 1 << self.n

    def cycle(self, start=None):
        """The cycle of ``g_n`` written from ``start`` (default ``2**n``)."""
        i = self.lo if start is None else start
        out = [i]
        nxt = self(i)
        while nxt != out[0]:
            out.append(nxt)
            nxt = self(nxt)
        return out

    def __repr__(self):
        return f"MorsePerm({self.n})"


def morse_perm(n):
    return MorsePerm(n)


@lru_cache(maxsize=None)
def _taubar_array(n):
    # taubar_n = (taubar_{n-1} + 2^{n-1}) followed by (tau_{n-1} + 2^n)
    if n == 1:
        arr = np.array([2, 3], dtype=np.int64)
    else:
        prev = _taubar_array(n - 1)
        prev_tau = 3 * (1 << (n - 1)) - 1 - prev
        arr = np.concatenate((prev + (1 << (n - 1)), prev_tau + (1 << n)))
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=64)
def _order_array(n, kind):
    if n > MATERIALIZE_MAX_LEVEL:
        raise MemoryError(f"level {n} is above the materialization limit")
    bar = _taubar_array(n)
    if kind == TAUBAR:
        return bar
    arr = 3 * (1 << n) - 1 - bar
    arr.setflags(write=False)
    return arr


def order_by_cycle(n, kind):
    """The same order found by walking ``g_n`` from the break point; slow, kept as a cross-check."""
    g = _perm_array(n).tolist()
    lo = 1 << n
    i = (1 << (n + 1)) - 1 if kind == TAU else lo
    out = []
    for _ in range(1 << n):
        out.append(i)
        i = g[i - lo]
    return out


def order(n, kind):
    """The broken-cycle order ``tau`` or ``taubar`` of level ``n`` as an int64 array."""
    _check_level(n)
    if kind not in (TAU, TAUBAR):
        raise ValueError(f"kind must be {TAU!r} or {TAUBAR!r}")
    return _order_array(n, kind)


def reflect(n, i):
    """The involution ``i -> 2**(n+1) + 2**n - i - 1`` of the level-``n`` interval."""
    _check_level(n)
    if not (1 << n) <= i < (1 << (n + 1)):
        raise OutOfInterval(f"{i} is outside [2^{n}, 2^{n + 1})")
    return (1 << (n + 1)) + (1 << n) - i - 1


class ShiftedOrder:
    """A Morse order of level ``n`` carried to ``[base, base + 2**n - 1]``.

    A view on the cached level-``n`` array: no copy is made until
    :meth:`as_array` is called.
    """

    def __init__(self, n, kind, base):
        self.n = n
        self.kind = kind
        self.base = base
        self._arr = order(n, kind)
        self._shift = base - (1 << n)

    def __len__(self):
        return len(self._arr)

    def __getitem__(self, k):
        return int(self._arr[k]) + self._shift

    def __iter__(self):
        for v in self._arr.tolist():
            yield v + self._shift

    def as_array(self):
        return self._arr + self._shift

    @property
    def first(self):
        return self[0]

    @property
    def last(self):
        return self[-1]

    def __repr__(self):
        return f"ShiftedOrder({self.n}, {self.kind!r}, base={self.base})"
