"""Time substitution from the odometer ``T`` to the Morse map ``M``.

For a point ``x`` the time substitution is the permutation of ``Z``
``k -> t(k, x)`` defined by ``M^k x = T^{t(k, x)} x = x + t(k, x)``.  Two
independent routes compute it:

* :func:`orbit_trace` iterates ``M`` and ``M^{-1}`` and reads off the integer
  displacements -- the oracle;
* :func:`build_order` constructs nested integer intervals ``I_1 c I_2 c ...``
  around 0 from the repeat indices ``r_1 < r_2 < ...`` of ``x`` alone, each
  carrying a shifted Morse order of level ``r_j``.

``I_j`` is the set of displacements ``d`` for which ``x + d`` agrees with
``x`` in every digit above ``r_j``; the M-orbit runs through it as one
contiguous segment, entering at the endpoint on the side of ``x_{r_j}``
(left when ``x_{r_j} = 0``) and leaving from the point with alternating
digits.
"""
from dataclasses import dataclass, field

import numpy as np

from .dyadic import Dyadic, classify, cofinal_difference, ExceptionalClass
from .errors import ExceptionalPoint, IntervalTooLarge, NonIntegerDisplacement
from .morse import (a_seq, jump, morse_inverse, morse_step, repeat_positions, step_word,
                    unstep_word)
from .perms import TAU, TAUBAR, ShiftedOrder, morse_perm

INTERVAL_CAP = 1 << 24
_WALK_WIDTH = 256


class _Walker:
    """Iterates ``M`` on the odometer orbit of a generic rational ``x`` in displacement space.

    ``x + d`` is tracked by the integer ``d``; its first digits are
    ``(x mod 2**W) + d mod 2**W``, and the digit rewrite is applied to those.
    Falls back to full :class:`Dyadic` arithmetic when the window of ``W``
    digits holds no repeat.
    """

    def __init__(self, x):
        self.x = x
        self.low = x.digits(_WALK_WIDTH + 1)
        self.mask = (1 << (_WALK_WIDTH + 1)) - 1

    def _slow(self, d, step):
        y = step(self.x.add_int(d))
        e = cofinal_difference(self.x, y)
        if e is None:
            raise NonIntegerDisplacement(f"orbit of {self.x} left its odometer orbit at {y}")
        return e

    def forward(self, d):
        w = (self.low + d) & self.mask
        found = step_word(w, _WALK_WIDTH)
        if found is None:
            return self._slow(d, morse_step)
        r, new = found
        return d - (w & ((1 << r) - 1)) + new

    def backward(self, d):
        w = (self.low + d) & self.mask
        found = unstep_word(w, _WALK_WIDTH)
        if found is None:
            return self._slow(d, morse_inverse)
        rho, new = found
        return d - (w & ((1 << rho) - 1)) + new


# -- the iteration oracle ------------------------------------------------------

class OrbitTrace:
    """The map ``k -> t(k, x)`` on the window ``-K <= k <= K``.

    ``values`` holds the integer displacements.  For exceptional bases the
    glued orbit can leave the odometer orbit of ``x`` (e.g. ``M^{-1}(0) =
    -1/3``); such ``k`` have no entry in ``values`` but :meth:`point` still
    returns ``M^k x``.
    """

    def __init__(self, values, window, base=None, points=None):
        self.values = dict(values)
        self.window = window
        self.base = base
        self._points = dict(points) if points else {}

    def point(self, k):
        """The orbit point ``M^k x``."""
        if k not in self._points:
            self._points[k] = self.base.add_int(self.values[k])
        return self._points[k]

    @classmethod
    def from_function(cls, func, window):
        """A trace of an arbitrary zero-fixing permutation, e.g. ``lambda k: -k``."""
        return cls({k: func(k) for k in range(-window, window + 1)}, window)

    def __getitem__(self, k):
        return self.values[k]

    def __contains__(self, k):
        return k in self.values

    def __eq__(self, other):
        if not isinstance(other, OrbitTrace):
            return NotImplemented
        return self.window == other.window and self.values == other.values

    def ks(self):
        return sorted(self.values)

    def sequence(self):
        """Displacements in M-order, ``[t(-K, x), ..., t(K, x)]`` (defined entries only)."""
        return [self.values[k] for k in self.ks()]

    def induced_order(self, b, c):
        """The order the trace induces on ``[b, c]``: members listed by increasing ``k``."""
        return [v for v in self.sequence() if b <= v <= c]

    def covered_interval(self):
        """The largest ``[-m, m]`` contained in the set of values (``m = -1`` if 0 is missing)."""
        vals = set(self.values.values())
        m = -1
        while m + 1 in vals and -(m + 1) in vals:
            m += 1
        return m

    def __repr__(self):
        return f"OrbitTrace(window={self.window}, base={self.base!r})"


def orbit_trace(x, window):
    """Iterate the glued Morse map ``window`` times each way from ``x``."""
    if not isinstance(x, Dyadic):
        raise TypeError("orbit_trace needs a rational point")
    if window < 1:
        raise ValueError("window must be at least 1")
    if classify(x) is ExceptionalClass.GENERIC:
        walker = _Walker(x)
        values = {0: 0}
        for direction, step in ((1, walker.forward), (-1, walker.backward)):
            d = 0
            for k in range(1, window + 1):
                d = step(d)
                values[direction * k] = d
        return OrbitTrace(values, window, base=x)
    values, points = {0: 0}, {0: x}
    for direction, step in ((1, morse_step), (-1, morse_inverse)):
        y = x
        for k in range(1, window + 1):
            y = step(y)
            d = cofinal_difference(x, y)
            points[direction * k] = y
            if d is not None:
                values[direction * k] = d
    return OrbitTrace(values, window, base=x, points=points)


def modified_shift(trace):
    """``k -> t(k+1) - t(1)`` on a window one smaller: the trace at ``M x``."""
    if trace.window < 2:
        raise ValueError("window must be at least 2")
    one = trace.values[1]
    w = trace.window - 1
    values = {k: trace.values[k + 1] - one for k in range(-w, w + 1)
              if k + 1 in trace.values}
    base = morse_step(trace.base) if trace.base is not None else None
    return OrbitTrace(values, w, base=base)


def lemma3_check(x, window):
    """Check ``t(k, Mx) = t(k+1, x) - t(x)`` on both sides of ``k = 0``.

    The right side is also evaluated as the jump sum over the orbit,
    ``sum(t(M^i x), i = 1..k)`` for ``k >= 0`` and
    ``-sum(t(M^{-i} x), i = 0..|k|-1)`` for ``k < 0``, with ``t`` from
    :func:`~adicmorse.morse.jump` rather than from the trace.
    """
    tr = orbit_trace(x, window)
    shifted = orbit_trace(morse_step(x), window - 1)
    if modified_shift(tr) != shifted:
        return False
    tx = tr.values[1]
    for k, v in shifted.values.items():
        if k >= 0:
            expected = sum(jump(tr.point(i)) for i in range(1, k + 1))
        else:
            expected = -sum(jump(tr.point(-i)) for i in range(0, -k))
        if v != expected or v != tr.values[k + 1] - tx:
            return False
    return True


# -- ordered intervals ----------------------------------------------------------

class OrderedInterval:
    """The integer interval ``[b, c]`` with a linear order given by its elements in order."""

    def __init__(self, b, c, elements):
        elements = np.asarray(elements, dtype=np.int64)
        if len(elements) != c - b + 1:
            raise ValueError("order must list every element of the interval once")
        if ((elements < b) | (elements > c)).any():
            raise ValueError("order has elements outside the interval")
        pos = np.full(c - b + 1, -1, dtype=np.int64)
        pos[elements - b] = np.arange(len(elements))
        if (pos < 0).any():
            raise ValueError("order is not a permutation of the interval")
        self.b, self.c = b, c
        self.elements = elements
        self.positions = pos

    @classmethod
    def natural(cls, b, c):
        return cls(b, c, np.arange(b, c + 1))

    @property
    def min_elt(self):
        return int(self.elements[0])

    @property
    def max_elt(self):
        return int(self.elements[-1])

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return self.b <= p <= self.c

    def position(self, p):
        return int(self.positions[p - self.b])

    def succ(self, p):
        """Immediate successor of ``p``, or ``None`` for the maximal element."""
        k = self.position(p) + 1
        return int(self.elements[k]) if k < len(self.elements) else None

    def restricted(self, b, c):
        """Elements of ``[b, c]`` in the order of this interval."""
        e = self.elements
        return e[(e >= b) & (e <= c)]

    def to_list(self):
        return self.elements.tolist()

    def to_json(self):
        return {"b": self.b, "c": self.c, "order": self.to_list(),
                "min": self.min_elt, "max": self.max_elt}

    def chain(self, ascii=False):
        sep = " <| " if ascii else " ◁ "
        return sep.join(str(v) for v in self.elements.tolist())

    def __eq__(self, other):
        if not isinstance(other, OrderedInterval):
            return NotImplemented
        return (self.b, self.c) == (other.b, other.c) and np.array_equal(self.elements, other.elements)

    def __repr__(self):
        return f"OrderedInterval([{self.b}, {self.c}], min={self.min_elt}, max={self.max_elt})"


@dataclass
class OrderConstruction:
    base: object
    r: list
    eps: int
    intervals: list = field(default_factory=list)

    @property
    def depth(self):
        return len(self.intervals)

    @property
    def kinds(self):
        return [TAUBAR if iv.min_elt == iv.b else TAU for iv in self.intervals]

    def to_json(self):
        return {"base": str(self.base) if self.base is not None else None,
                "params": {"r": list(self.r), "eps": self.eps},
                "intervals": [iv.to_json() for iv in self.intervals]}


def _require_generic(x):
    if not isinstance(x, Dyadic) or classify(x) is not ExceptionalClass.GENERIC:
        raise ExceptionalPoint(f"{x} is not a generic point")


def _shifted_interval(level, kind, b, cap):
    if (1 << level) > cap:
        raise IntervalTooLarge(f"interval of length 2^{level} exceeds the cap {cap}")
    return OrderedInterval(b, b + (1 << level) - 1, ShiftedOrder(level, kind, b).as_array())


def build_order(x, depth, cap=INTERVAL_CAP):
    """Nested ordered intervals ``I_1 c ... c I_depth`` from the repeat indices of ``x``.

    Only ``r_1 < ... < r_depth`` and ``eps = x_{r_1}`` are read from ``x``;
    every later step follows from them:

    * ``I_1 = [-a_{r-1}, a_r]`` with the min-at-left order if ``eps = 0``,
      ``[-a_r, a_{r-1}]`` with the min-at-right order if ``eps = 1``;
    * for ``d = r_n - r_{n-1}`` the repeated digit, and with it the side of
      the minimum, changes exactly when ``d`` is even;
    * ``I_n`` adds ``sum 2**i`` over ``i`` in ``[r_{n-1}, r_n)`` split by
      parity: the class of ``r_{n-1}`` goes opposite the old minimum, the
      other class to its side (case ``d = 1`` adds one block ``2**r_{n-1}``).
    """
    _require_generic(x)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    rs = repeat_positions(x, depth)
    eps = x.bit(rs[0])
    r = rs[0]
    b = -a_seq(r - 1) if eps == 0 else -a_seq(r)
    cur = eps
    intervals = [_shifted_interval(r, TAUBAR if cur == 0 else TAU, b, cap)]
    for prev, r in zip(rs, rs[1:]):
        same_class = sum(1 << i for i in range(prev, r, 2))
        other_class = sum(1 << i for i in range(prev + 1, r, 2))
        # digits r_{n-1}+1 .. r_n alternate, starting from the old repeated digit
        left = same_class if cur == 1 else other_class
        b -= left
        if (r - prev) % 2 == 0:
            cur ^= 1
        intervals.append(_shifted_interval(r, TAUBAR if cur == 0 else TAU, b, cap))
    return OrderConstruction(base=x, r=rs, eps=eps, intervals=intervals)


def window_order(x, window, cap=INTERVAL_CAP):
    """The smallest constructed interval containing ``[-window, window]``, with its order."""
    _require_generic(x)
    depth = 1
    while True:
        iv = build_order(x, depth, cap).intervals[-1]
        if iv.b <= -window and iv.c >= window:
            return iv
        depth += 1


_VEC_WIDTH = 58     # digits read per point in the vectorized step; keeps x + d inside int64
_VEC_CHUNK = 1 << 20


def _successor_table(x, b, c, walker):
    """``M``-successor displacement of every ``d`` in ``[b, c]``, vectorized.

    Each entry is the digit rewrite applied to the first digits of
    ``x + d``; points with no repeat among those digits go through the
    walker one at a time.
    """
    low = x.digits(_VEC_WIDTH + 1)
    mask = np.int64((1 << (_VEC_WIDTH + 1)) - 1)
    out = np.empty(c - b + 1, dtype=np.int64)
    for start in range(b, c + 1, _VEC_CHUNK):
        d = np.arange(start, min(start + _VEC_CHUNK, c + 1), dtype=np.int64)
        w = (np.int64(low) + d) & mask
        same = ~(w ^ (w >> 1)) & np.int64((1 << _VEC_WIDTH) - 1)
        found = same != 0
        bitval = same & -same
        r = np.zeros(len(d), dtype=np.int64)
        r[found] = np.log2(bitval[found].astype(np.float64)).astype(np.int64) + 1
        rmask = (np.int64(1) << r) - 1
        eps = (w >> np.maximum(r - 1, 0)) & 1
        nxt = d - (w & rmask) + np.where(eps == 1, 0, rmask)
        for i in np.flatnonzero(~found).tolist():
            nxt[i] = walker.forward(int(d[i]))
        out[start - b:start - b + len(d)] = nxt
    return out


def oracle_interval(x, b, c, max_steps=INTERVAL_CAP):
    """The order the M-orbit of ``x`` induces on ``[b, c]``, found by walking from 0.

    Walks backwards while the displacement stays in ``[b, c]``, then
    forwards; raises ``ValueError`` if the orbit segment through 0 does not
    fill the interval (the interval is then not an orbit segment).
    """
    walker = _Walker(x)
    size = c - b + 1
    if not b <= 0 <= c:
        raise ValueError("interval must contain 0")
    if size > max_steps:
        raise IntervalTooLarge(f"interval of {size} points exceeds {max_steps}")
    succ = _successor_table(x, b, c, walker)
    inside = (succ >= b) & (succ <= c)
    pred = np.full(size, b - 1, dtype=np.int64)
    pred[succ[inside] - b] = np.arange(b, c + 1)[inside]
    succ_l, pred_l = succ.tolist(), pred.tolist()
    d, steps = 0, 0
    while steps < size:
        e = pred_l[d - b]
        if e < b:
            break
        d, steps = e, steps + 1
    seq = []
    while b <= d <= c and len(seq) <= size:
        seq.append(d)
        d = succ_l[d - b]
    if len(seq) != size:
        raise ValueError(f"the orbit segment through 0 covers {len(seq)} of {size} points")
    return OrderedInterval(b, c, seq)


def oracle_construction(x, depth):
    """Intervals of :func:`build_order` with orders read off the M-orbit instead."""
    _require_generic(x)
    rs = repeat_positions(x, depth)
    intervals = []
    for r in rs:
        b = -x.digits(r)
        intervals.append(oracle_interval(x, b, b + (1 << r) - 1))
    return OrderConstruction(base=x, r=rs, eps=x.bit(rs[0]), intervals=intervals)


# -- local finiteness -------------------------------------------------------------

def _successors(elements, b, c):
    """``out[p - b]`` is the successor of ``p`` in ``elements``; ``c + 1`` marks the maximum."""
    out = np.empty(c - b + 1, dtype=np.int64)
    out[elements[:-1] - b] = elements[1:]
    out[elements[-1] - b] = c + 1
    return out


@dataclass
class LocalFinitenessReport:
    epsilon: float
    rows: list

    @property
    def max_restriction_differences(self):
        return max((row["restriction_differences"] for row in self.rows), default=0)

    @property
    def ok(self):
        """Restrictions differ in at most two points and ``|I Δ L(I)| <= 2``."""
        return all(row["restriction_differences"] <= 2 and row["gluing_points"] <= 2
                   and row["symdiff"] <= 2 for row in self.rows)

    def eventually_below_epsilon(self):
        """Smallest level ``m`` from which every ratio ``|I_m Δ L(I_m)| / |I_m|`` is below epsilon."""
        bad = [row["m"] for row in self.rows if row["ratio"] >= self.epsilon]
        return max(bad) + 1 if bad else 1


def check_locally_finite(construction, epsilon=0.01):
    """Compare every level ``m`` with every higher level ``n`` of a construction.

    Per pair the report gives

    * ``restriction_differences``: points of ``I_m`` whose successor in the
      order of ``I_n`` restricted to ``I_m`` differs from their successor in
      the order of ``I_m``;
    * ``gluing_points``: points of ``I_m`` whose successor in ``I_n`` itself
      differs (the exits glued to the outside);
    * ``symdiff`` and ``ratio``: ``|I_m Δ L(I_m)|`` and its share of
      ``|I_m|``, for ``L`` the successor bijection of the order of ``I_n``.
    """
    ivs = construction.intervals
    if len(ivs) < 2:
        raise ValueError("depth must be at least 2")
    rows = []
    for n in range(1, len(ivs)):
        big = ivs[n]
        big_succ = _successors(big.elements, big.b, big.c)
        for m in range(n):
            small = ivs[m]
            members = np.arange(small.b, small.c + 1)
            own = _successors(small.elements, small.b, small.c)
            restricted = _successors(big.restricted(small.b, small.c), small.b, small.c)
            image = big_succ[members - big.b]
            # a successor leaving I_n is some point outside I_m; give it one marker
            glue_image = np.where(image > big.c, small.c + 1, image)
            diffs = int((own != restricted).sum())
            glue = int((own != glue_image).sum())
            inside = int(((image >= small.b) & (image <= small.c)).sum())
            # L is injective, so |L(I_m) \ I_m| = |I_m \ L(I_m)|
            symdiff = 2 * (len(members) - inside)
            rows.append({"m": m + 1, "n": n + 1, "size": len(members),
                         "restriction_differences": diffs, "gluing_points": glue,
                         "symdiff": symdiff, "ratio": symdiff / len(members)})
    return LocalFinitenessReport(epsilon, rows)


def normalized_cycle(interval):
    """The cyclic permutation of ``[2**r, 2**(r+1))`` realized by an ordered interval.

    The order is closed into a cycle (maximum -> minimum) and moved to the
    standard level-``r`` interval; for a Morse order this is ``g_r`` whatever
    the side of the minimum.
    """
    size = len(interval)
    level = size.bit_length() - 1
    if size != 1 << level:
        raise ValueError("interval length is not a power of two")
    e = interval.elements - interval.b
    cyc = np.empty(size, dtype=np.int64)
    cyc[e] = np.roll(e, -1)
    return level, cyc + size


def ulfts_check_constructions(constructions):
    """True iff all intervals of equal length realize the same cycle, and it is ``g_r``."""
    seen = {}
    for con in constructions:
        for iv in con.intervals:
            level, cyc = normalized_cycle(iv)
            ref = seen.setdefault(level, cyc)
            if not np.array_equal(ref, cyc):
                return False
    return all(np.array_equal(cyc, morse_perm(level).array) for level, cyc in seen.items())


def ulfts_check(samples, depth):
    """Uniform local finiteness over sample points, from orbit-derived orders."""
    return ulfts_check_constructions([oracle_construction(x, depth) for x in samples])
