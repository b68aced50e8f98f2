"""Exact 2-adic integers.

A 2-adic integer ``x`` is written through its dyadic digits
``x_1, x_2, ...`` (least significant first, 1-based), so that
``x = sum(x_k * 2**(k-1))``.  Two representations are provided:

* :class:`Dyadic` -- a rational ``num/den`` with ``den`` odd.  These are
  exactly the points with eventually periodic digits; arithmetic is exact and
  cofinality is decidable.
* :class:`StreamedDyadic` -- a finite prefix followed by a seeded random
  tail, used for Monte Carlo sampling of Haar-random points.

Both expose ``digits(n)`` (the first ``n`` digits packed into an int),
``bit(i)``, ``replace_low(n, value)`` and ``add_int(n)``; everything in the
Morse layer is written against that small surface.
"""
import enum
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .bitsource import BitStream
from .errors import EvenDenominator, PointSyntaxError, StreamedUnderdetermined

DIGIT_BUDGET = 1 << 16


@lru_cache(maxsize=4096)
def _inverse_mod_pow2(den, n):
    return pow(den, -1, 1 << n)


class Dyadic:
    """A rational 2-adic integer ``num/den`` in lowest terms, ``den`` odd and positive."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if den == 0:
            raise ZeroDivisionError("denominator is zero")
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        if g > 1:
            num, den = num // g, den // g
        if den % 2 == 0:
            raise EvenDenominator(f"{num}/{den} is not a 2-adic integer")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, num, den):
        # caller guarantees lowest terms
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.num, self.den))

    # -- digit access -----------------------------------------------------

    def digits(self, n):
        """First ``n`` digits as an integer in ``[0, 2**n)``, i.e. ``x mod 2**n``."""
        if n <= 0:
            return 0
        if self.den == 1:
            return self.num & ((1 << n) - 1)
        return (self.num * _inverse_mod_pow2(self.den, n)) & ((1 << n) - 1)

    def bit(self, i):
        if i < 1:
            raise ValueError("digit index starts at 1")
        return (self.digits(i) >> (i - 1)) & 1

    def replace_low(self, n, value):
        """The point whose first ``n`` digits are ``value`` and whose other digits agree with ``self``."""
        delta = value - self.digits(n)
        return Dyadic._raw(self.num + delta * self.den, self.den)

    def shift(self):
        """Drop the first digit: ``(x - x_1) / 2``."""
        num = self.num - (self.num & 1) * self.den
        return Dyadic(num // 2, self.den)

    # -- arithmetic ---------------------------------------------------------

    def add_int(self, n):
        return Dyadic._raw(self.num + n * self.den, self.den)

    def __add__(self, other):
        if isinstance(other, int):
            return self.add_int(other)
        if isinstance(other, Dyadic):
            return Dyadic(self.num * other.den + other.num * self.den, self.den * other.den)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Dyadic._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Dyadic)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.den == 1 and self.num == other
        if isinstance(other, Fraction):
            return self.num == other.numerator and self.den == other.denominator
        return NotImplemented

    def __hash__(self):
        return hash(Fraction(self.num, self.den))

    def as_fraction(self):
        return Fraction(self.num, self.den)

    def is_integer(self):
        return self.den == 1

    def __repr__(self):
        return f"Dyadic({self.num}, {self.den})"

    def __str__(self):
        return format_rational(self)


class StreamedDyadic:
    """A point given by an explicit prefix followed by a seeded random tail.

    ``digits(n)`` beyond the prefix reads the seed's :class:`BitStream`
    starting at ``offset``.  Operations that rewrite low digits return a new
    point sharing the same stream, with the consumed tail digits moved into
    the prefix.
    """

    __slots__ = ("prefix", "prefix_len", "stream", "offset", "budget")

    def __init__(self, prefix=0, prefix_len=0, seed=0, *, stream=None, offset=0,
                 budget=DIGIT_BUDGET):
        self.prefix = prefix
        self.prefix_len = prefix_len
        self.stream = stream if stream is not None else BitStream(seed)
        self.offset = offset
        self.budget = budget

    @property
    def seed(self):
        return self.stream.seed

    def digits(self, n):
        if n > self.budget:
            raise StreamedUnderdetermined(f"needs {n} digits, budget is {self.budget}")
        if n <= self.prefix_len:
            return self.prefix & ((1 << n) - 1)
        tail = self.stream.bits(self.offset, n - self.prefix_len)
        return self.prefix | (tail << self.prefix_len)

    def bit(self, i):
        if i < 1:
            raise ValueError("digit index starts at 1")
        return (self.digits(i) >> (i - 1)) & 1

    def _derived(self, prefix, prefix_len, offset):
        return StreamedDyadic(prefix, prefix_len, stream=self.stream, offset=offset,
                              budget=self.budget)

    def replace_low(self, n, value):
        if n <= self.prefix_len:
            mask = (1 << n) - 1
            return self._derived((self.prefix & ~mask) | value, self.prefix_len, self.offset)
        return self._derived(value, n, self.offset + n - self.prefix_len)

    def add_int(self, n):
        """``x + n``; reads tail digits until the carry or borrow is absorbed."""
        width = max(self.prefix_len, abs(n).bit_length() + 1, 1)
        while True:
            total = self.digits(width) + n
            if 0 <= total < (1 << width):
                return self.replace_low(width, total)
            width += 64
            if width > self.budget:
                raise StreamedUnderdetermined("carry did not resolve within the digit budget")

    def __add__(self, other):
        if isinstance(other, int):
            return self.add_int(other)
        return NotImplemented

    def __repr__(self):
        return (f"StreamedDyadic(prefix={self.prefix:#x}, prefix_len={self.prefix_len}, "
                f"seed={self.seed}, offset={self.offset})")


class ExceptionalClass(enum.Enum):
    GENERIC = "Generic"
    COFINAL_ALL_ZERO = "CofinalAllZero"
    COFINAL_ALL_ONE = "CofinalAllOne"
    COFINAL_10_REP = "Cofinal10Rep"
    COFINAL_01_REP = "Cofinal01Rep"


MINUS_ONE_THIRD = Dyadic(-1, 3)    # (10)^inf
MINUS_TWO_THIRDS = Dyadic(-2, 3)   # (01)^inf
MAX_POINTS = (MINUS_ONE_THIRD, MINUS_TWO_THIRDS)


def _require_rational(x, what):
    if not isinstance(x, Dyadic):
        raise StreamedUnderdetermined(f"{what} needs a rational point, got {x!r}")


def from_rational(p, q=1):
    """The 2-adic integer ``p/q``; raises :class:`EvenDenominator` if ``q`` is even."""
    if q == 0:
        raise ZeroDivisionError("denominator is zero")
    g = gcd(p, q)
    if (q // g) % 2 == 0:
        raise EvenDenominator(f"{p}/{q} has an even denominator")
    return Dyadic(p, q)


def from_bits(prefix, period):
    """The point with digits ``prefix`` followed by ``period`` repeated forever."""
    prefix, period = list(prefix), list(period)
    if not period:
        raise ValueError("period must be nonempty")
    if any(b not in (0, 1) for b in prefix + period):
        raise ValueError("digits must be 0 or 1")
    head = sum(b << k for k, b in enumerate(prefix))
    cyc = sum(b << k for k, b in enumerate(period))
    # head + 2^|prefix| * cyc / (1 - 2^|period|)
    den = (1 << len(period)) - 1
    return Dyadic(head * den - (cyc << len(prefix)), den)


def bit(x, i):
    return x.bit(i)


def add_int(x, n):
    return x.add_int(n)


def cofinal_difference(x, y):
    """The integer ``n`` with ``y = x + n``, or ``None`` if ``x`` and ``y`` are not cofinal."""
    _require_rational(x, "cofinal_difference")
    _require_rational(y, "cofinal_difference")
    if x.den != y.den:
        return None
    diff, rem = divmod(y.num - x.num, x.den)
    return diff if rem == 0 else None


def classify(x):
    """Which exceptional cofinality class ``x`` lies in, if any."""
    _require_rational(x, "classify")
    if x.den == 1:
        return ExceptionalClass.COFINAL_ALL_ZERO if x.num >= 0 else ExceptionalClass.COFINAL_ALL_ONE
    if cofinal_difference(MINUS_ONE_THIRD, x) is not None:
        return ExceptionalClass.COFINAL_10_REP
    if cofinal_difference(MINUS_TWO_THIRDS, x) is not None:
        return ExceptionalClass.COFINAL_01_REP
    return ExceptionalClass.GENERIC


def is_generic(x):
    return classify(x) is ExceptionalClass.GENERIC


def _order_of_two(q):
    if q == 1:
        return 1
    k, v = 1, 2 % q
    while v != 1:
        v = (v * 2) % q
        k += 1
    return k


def to_bits(x):
    """Shortest ``(prefix, period)`` digit lists with ``from_bits(prefix, period) == x``."""
    _require_rational(x, "to_bits")
    y, prefix = x, []
    # purely periodic exactly when -1 <= y <= 0
    while not (-y.den <= y.num <= 0):
        prefix.append(y.num & 1)
        y = y.shift()
    length = _order_of_two(y.den)
    w = y.digits(length)
    return prefix, [(w >> k) & 1 for k in range(length)]


# -- text form ---------------------------------------------------------------

_RATIONAL_RE = re.compile(r"-?[0-9]+(/[0-9]+)?")
_BITS_RE = re.compile(r"([01]*)\(([01]+)\)")


def parse_point(text):
    """Parse ``p``, ``p/q`` or a digit string ``prefix(period)`` (LSB first)."""
    s = text.strip().replace("−", "-")
    if _RATIONAL_RE.fullmatch(s):
        p, _, q = s.partition("/")
        try:
            return from_rational(int(p), int(q) if q else 1)
        except (EvenDenominator, ZeroDivisionError) as exc:
            raise PointSyntaxError(str(exc)) from exc
    m = _BITS_RE.fullmatch(s)
    if m:
        return from_bits([int(c) for c in m.group(1)], [int(c) for c in m.group(2)])
    raise PointSyntaxError(f"not a point literal: {text!r}")


def format_rational(x):
    return str(x.num) if x.den == 1 else f"{x.num}/{x.den}"


def format_bits(x):
    prefix, period = to_bits(x)
    return "".join(map(str, prefix)) + "(" + "".join(map(str, period)) + ")"


def random_rational(rng, max_prefix=48, max_period=8):
    """A rational point with uniformly random prefix and period digits.

    ``rng`` is a :class:`random.Random`; prefix length is uniform on
    ``0..max_prefix`` and period length on ``1..max_period``.
    """
    prefix = [rng.getrandbits(1) for _ in range(rng.randint(0, max_prefix))]
    period = [rng.getrandbits(1) for _ in range(rng.randint(1, max_period))]
    return from_bits(prefix, period)
