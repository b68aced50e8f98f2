"""The acceptance checks, runnable from the CLI (``morse verify``) and from tests.

Every check is deterministic given the seed.  A check passes only if its
property holds and it finishes inside its time limit.
"""
import random
import time
from dataclasses import dataclass, field

import numpy as np

from .dyadic import MAX_POINTS, Dyadic, from_bits, is_generic, random_rational
from .morse import a_seq, jump, morse_on_int, morse_step
from .perms import TAU, TAUBAR, morse_perm, order, reflect
from .stats import r_distribution
from .substitution import complement, cube_free, derivative, thue_morse
from .timesub import build_order, check_locally_finite, oracle_interval, orbit_trace, ulfts_check

DEFAULT_SEED = 0

MORSE_TABLE = [1, 3, 7, 2, 5, 15, 4, 6, 9, 11, 31, 10, 13, 8, 12, 14]
MORSE_TABLE_NEG = [-2, -4, -8, -3, -6, -16, -5]
A_SEQ_HEAD = [0, 1, 2, 5, 10, 21, 42, 85, 170, 341]
G_CYCLES = {1: [2, 3], 2: [4, 5, 7, 6], 3: [8, 9, 11, 10, 15, 14, 12, 13]}
TAU_3 = [15, 14, 12, 13, 8, 9, 11, 10]
TAUBAR_3 = [8, 9, 11, 10, 15, 14, 12, 13]
MINUS_SEVENTH_TRACE = {-1: -1, 0: 0, 1: 2, 2: 1, 3: 22}
# the printed 32-element order for -1/7, read as one chain
MINUS_SEVENTH_FRAGMENT = [-9, -8, -6, -7, -2, -3, -5, -4, 6, 5, 3, 4, -1, 0, 2, 1,
                          22, 21, 19, 20, 15, 16, 18, 17, 7, 8, 10, 9, 14, 13, 11, 12]
FIRST_INTERVAL_ORDERS = {
    0: (-2, 5, [-2, -1, 1, 0, 5, 4, 2, 3]),
    1: (-5, 2, [2, 1, -1, 0, -5, -4, -2, -3]),
}
# generic points with r_1 = 3: digits 0100... and 1011...
FIRST_INTERVAL_POINTS = {0: from_bits([0, 1, 0, 0], [1, 1, 0]), 1: from_bits([1, 0, 1, 1], [0, 0, 1])}

N_EQUIVALENCE = 10 ** 5
N_CONJUGACY = 10 ** 4
N_GENERIC = 10 ** 3
N_ULFTS = 100
N_COVERAGE = 100
TRACE_WINDOW = 256
COVERAGE_WINDOW = 512
COVERAGE_RADIUS = 8
MC_SAMPLES = 10 ** 6
MC_KMAX = 10


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    elapsed: float
    limit: float
    detail: str = ""
    data: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.ok and self.elapsed < self.limit

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        timing = f"{self.elapsed:.3f}s / {self.limit:g}s"
        if self.ok and not self.passed:
            timing += " (too slow)"
        return f"[{status}] {self.number:2d}. {self.name} ({timing}){': ' + self.detail if self.detail else ''}"

    def to_json(self):
        return {"number": self.number, "name": self.name, "passed": self.passed, "ok": self.ok,
                "elapsed": self.elapsed, "limit": self.limit, "detail": self.detail}


def rational_points(seed, count):
    rng = random.Random(seed)
    return [random_rational(rng) for _ in range(count)]


def generic_points(seed, count):
    """The first ``count`` generic points of the seeded rational stream."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        x = random_rational(rng)
        if is_generic(x):
            out.append(x)
    return out


# -- the checks -----------------------------------------------------------------
# each returns (ok, detail, data)

def check_table(seed):
    pos = [morse_on_int(n) for n in range(16)]
    neg = [morse_on_int(-n) for n in range(1, 8)]
    ok = pos == MORSE_TABLE and neg == MORSE_TABLE_NEG
    return ok, "" if ok else f"got {pos} and {neg}", {}


def check_aseq(seed):
    head = [a_seq(r) for r in range(10)]
    a = [a_seq(r) for r in range(202)]
    rec = all(a[r + 1] == (1 << r) + a[r - 1] for r in range(1, 201))
    pair = all(a[r - 1] + a[r] + 1 == 1 << r for r in range(1, 201))
    bounds = all((1 << (r - 1)) <= a[r] < (1 << r) for r in range(1, 201))
    ok = head == A_SEQ_HEAD and rec and pair and bounds
    return ok, "" if ok else f"head={head} rec={rec} pair={pair} bounds={bounds}", {}


def _crossings(n):
    arr = morse_perm(n).array
    lo = 1 << n
    half = lo + (1 << (n - 1))
    idx = np.arange(lo, lo << 1)
    down = int(((idx >= half) & (arr < half)).sum())
    up = int(((idx < half) & (arr >= half)).sum())
    return up, down


def check_perms(seed):
    problems = []
    for n, cyc in G_CYCLES.items():
        if morse_perm(n).cycle() != cyc:
            problems.append(f"g_{n}")
    for n in range(1, 17):
        if len(morse_perm(n).cycle()) != 1 << n:
            problems.append(f"g_{n} not one cycle")
        if _crossings(n) != (1, 1):
            problems.append(f"g_{n} crossings {_crossings(n)}")
    if order(3, TAU).tolist() != TAU_3 or order(3, TAUBAR).tolist() != TAUBAR_3:
        problems.append("order 3")
    for n in range(1, 13):
        reflected = [reflect(n, i) for i in order(n, TAU).tolist()]
        if reflected != order(n, TAUBAR).tolist():
            problems.append(f"reflection at level {n}")
    return not problems, ", ".join(problems), {}


def check_equivalence(seed):
    # draw until N_EQUIVALENCE points off MAX have been compared
    rng = random.Random(seed)
    bad = checked = 0
    while checked < N_EQUIVALENCE:
        x = random_rational(rng)
        if x in MAX_POINTS:
            continue
        checked += 1
        if morse_step(x) != x.add_int(jump(x)):
            bad += 1
    return bad == 0, f"{checked} points, {bad} mismatches", {"checked": checked, "mismatches": bad}


def check_conjugacy(seed):
    bad = checked = 0
    # the gluing at MAX respects the conjugacy too, so nothing is skipped
    for x in rational_points(seed + 1, N_CONJUGACY):
        checked += 1
        if derivative(x).add_int(1) != derivative(morse_step(x)):
            bad += 1
    return bad == 0, f"{checked} points, {bad} mismatches", {"checked": checked, "mismatches": bad}


def check_thue_morse(seed):
    head = thue_morse(16) == "0110100110010110"
    doubling = all(thue_morse(1 << (k + 1)) == thue_morse(1 << k) + complement(thue_morse(1 << k))
                   for k in range(15))
    free = cube_free(thue_morse(1 << 12))
    ok = head and doubling and free
    return ok, "" if ok else f"head={head} doubling={doubling} cube_free={free}", {}


def _order_of_length(x, length):
    depth = 1
    while True:
        iv = build_order(x, depth).intervals[-1]
        if len(iv) >= length:
            return iv
        depth += 1


def check_minus_seventh(seed):
    x = Dyadic(-1, 7)
    tr = orbit_trace(x, 16)
    got = {k: tr[k] for k in MINUS_SEVENTH_TRACE}
    iv = _order_of_length(x, len(MINUS_SEVENTH_FRAGMENT))
    window = iv.to_list()
    problems = []
    if got != MINUS_SEVENTH_TRACE:
        problems.append(f"t(-1..3) = {list(got.values())}")
    if window != MINUS_SEVENTH_FRAGMENT:
        rows = [f"{a:>4} {b:>4}{'' if a == b else '  <-'}"
                for a, b in zip(MINUS_SEVENTH_FRAGMENT, window)]
        problems.append("fragment vs constructed order:\n" + "\n".join(rows))
    # the constructed order must also be what the orbit itself does
    oracle = oracle_interval(x, iv.b, iv.c).to_list()
    if oracle != window:
        problems.append(f"orbit order {oracle} differs from the constructed one")
    return not problems, "; ".join(problems), {"order": window}


def _builder_agrees(x, window):
    """Build levels until the segment ``t(-window..window, x)`` sits inside one interval."""
    tr = orbit_trace(x, window)
    seq = tr.sequence()
    depth = 1
    while True:
        con = build_order(x, depth)
        iv = con.intervals[-1]
        p = iv.position(0)
        if p >= window and p + window < len(iv):
            return iv.elements[p - window:p + window + 1].tolist() == seq, con
        depth += 1


def check_builder(seed):
    bad = []
    for x in generic_points(seed, N_GENERIC):
        same, _ = _builder_agrees(x, TRACE_WINDOW)
        if not same:
            bad.append(str(x))
    for eps, (b, c, expected) in FIRST_INTERVAL_ORDERS.items():
        iv = build_order(FIRST_INTERVAL_POINTS[eps], 1).intervals[0]
        if (iv.b, iv.c, iv.to_list()) != (b, c, expected):
            bad.append(f"first interval eps={eps}: {iv.to_list()}")
    detail = f"{N_GENERIC} points, {len(bad)} disagreements" + (f": {bad[:5]}" if bad else "")
    return not bad, detail, {"disagreements": bad}


def check_locally_finite_allied(seed):
    points = generic_points(seed, N_GENERIC)
    worst = 0
    for x in points:
        _, con = _builder_agrees(x, TRACE_WINDOW)
        if con.depth >= 2:
            worst = max(worst, check_locally_finite(con).max_restriction_differences)
    allied = ulfts_check(points[:N_ULFTS], 4)
    ok = worst <= 2 and allied
    return ok, f"max restriction differences {worst}, ulfts {allied}", {"max_differences": worst,
                                                                         "ulfts": allied}


def check_coverage(seed):
    short = []
    for x in generic_points(seed, N_COVERAGE):
        m = orbit_trace(x, COVERAGE_WINDOW).covered_interval()
        if m < COVERAGE_RADIUS:
            short.append((str(x), m))
    detail = f"{N_COVERAGE - len(short)}/{N_COVERAGE} points cover [-{COVERAGE_RADIUS}, {COVERAGE_RADIUS}]"
    if short:
        detail += "; short: " + ", ".join(f"{p} covers [-{m}, {m}]" for p, m in short)
    return not short, detail, {"short": short}


def check_monte_carlo(seed):
    rep = r_distribution(MC_SAMPLES, MC_KMAX, seed)
    worst = {name: max(abs(z) for z in rep.z_scores[name].values()) for name in ("r1", "jump")}
    ok = rep.sigma_ok("r1") and rep.sigma_ok("jump") and rep.jump_mismatches == 0
    detail = f"max |z| r1 {worst['r1']:.2f}, jump {worst['jump']:.2f}, mismatches {rep.jump_mismatches}"
    return ok, detail, {"report": rep.to_json()}


CHECKS = [
    (1, "integer table", check_table, 0.001),
    (2, "a_r values and identities", check_aseq, 0.01),
    (3, "Morse permutations", check_perms, 5.0),
    (4, "rewrite equals closed-form jump", check_equivalence, 30.0),
    (5, "conjugacy T D = D M", check_conjugacy, 10.0),
    (6, "Thue-Morse word", check_thue_morse, 10.0),
    (7, "-1/7 window", check_minus_seventh, 1.0),
    (8, "builder equals oracle", check_builder, 120.0),
    (9, "locally finite and allied", check_locally_finite_allied, 60.0),
    (10, "orbit coverage", check_coverage, 30.0),
    (11, "Monte Carlo laws", check_monte_carlo, 60.0),
]


def run_check(number, seed=DEFAULT_SEED):
    num, name, func, limit = CHECKS[number - 1]
    start = time.perf_counter()
    ok, detail, data = func(seed)
    elapsed = time.perf_counter() - start
    return CheckResult(num, name, bool(ok), elapsed, limit, detail, data)


def run_all(seed=DEFAULT_SEED, only=None):
    numbers = only or [c[0] for c in CHECKS]
    return [run_check(n, seed) for n in numbers]
