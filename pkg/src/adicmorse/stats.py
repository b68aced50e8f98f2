"""Monte Carlo checks of the repeat-index and jump laws.

For a Haar-random point the digits are fair coin flips, so the first repeat
index ``r_1`` and the gaps ``r_{j+1} - r_j`` are geometric,
``P(k) = 2**-k``, and the jump ``t(x)`` has magnitude ``a_r`` with
probability ``2**-r``.

Sample ``i`` of a run is the streamed point with seed ``seed0 + i``.  The
bulk of the work is vectorized over seeds: the first 64 digits of every
sample are one SplitMix64 word, and repeats and the Morse rewrite are read
off that word with bit operations.  Samples whose statistics need digits
beyond the first word go through the scalar :class:`StreamedDyadic` path.
"""
from dataclasses import dataclass, field

import numpy as np

from .bitsource import MASK64, splitmix64_words
from .dyadic import StreamedDyadic
from .errors import StreamedUnderdetermined
from .morse import a_seq, jump, repeat_positions

GAPS = 4
_WORD = 64


def sample_point(seed):
    """A Haar-random point: empty prefix, digits from the seed's SplitMix64 stream."""
    return StreamedDyadic(seed=seed & MASK64)


@dataclass
class RDistributionReport:
    sample_count: int
    kmax: int
    seed0: int
    # statistic name -> {k: count}; names are "r1", "gap1".."gap4" and "jump"
    frequencies: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    z_scores: dict = field(default_factory=dict)
    pathological: int = 0
    jump_mismatches: int = 0
    corr_r1_gap1: float = 0.0

    def sigma_ok(self, name, nsigma=3.0):
        return all(abs(z) <= nsigma for z in self.z_scores[name].values())

    def to_json(self):
        def keyed(d):
            return {name: {str(k): v for k, v in table.items()} for name, table in d.items()}
        return {"sample_count": self.sample_count, "kmax": self.kmax, "seed": self.seed0,
                "frequencies": keyed(self.frequencies), "expected": {str(k): v for k, v in self.expected.items()},
                "z_scores": keyed(self.z_scores), "pathological": self.pathological,
                "jump_mismatches": self.jump_mismatches,
                "corr_r1_gap1": self.corr_r1_gap1}


def _lowest_bit_index(m):
    # 1-based index of the lowest set bit of each uint64; 0 where m == 0
    low = m & (~m + np.uint64(1))
    out = np.zeros(m.shape, dtype=np.int64)
    nz = low != 0
    out[nz] = np.log2(low[nz].astype(np.float64)).astype(np.int64) + 1
    return out


def _vector_repeats(words, count):
    """First ``count`` repeat indices within digits 1..63 of each word (0 = not found)."""
    same = ~(words ^ (words >> np.uint64(1))) & np.uint64((1 << 63) - 1)
    out = np.zeros((count, len(words)), dtype=np.int64)
    for j in range(count):
        idx = _lowest_bit_index(same)
        out[j] = idx
        same &= same - np.uint64(1)
    return out


def _vector_jumps(words, r):
    """``t(x)`` by the digit rewrite on the first word, valid where ``1 <= r <= 62``."""
    mask = (np.uint64(1) << r.astype(np.uint64)) - np.uint64(1)
    low = words & mask
    eps = (words >> (r - 1).astype(np.uint64)) & np.uint64(1)
    new = np.where(eps == 0, mask, np.uint64(0))
    return new.astype(np.int64) - low.astype(np.int64)


def _scalar_sample(seed, count):
    x = sample_point(seed)
    return repeat_positions(x, count), jump(x)


def r_distribution(samples, kmax=10, seed0=0, chunk=1 << 18):
    """Empirical laws of ``r_1``, the gaps ``r_{j+1} - r_j`` (``j <= 4``) and ``|t(x)|``.

    Expected probabilities are ``2**-k`` for each statistic, where for
    ``jump`` the key ``k`` counts samples with ``|t(x)| = a_k``.  A sample
    whose digits exhaust the budget is counted in ``pathological`` and left
    out.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    names = ["r1"] + [f"gap{j}" for j in range(1, GAPS + 1)] + ["jump"]
    counts = {name: np.zeros(kmax + 2, dtype=np.int64) for name in names}
    a = np.array([a_seq(k) for k in range(_WORD)], dtype=np.int64)
    pathological = mismatches = 0
    sx = sy = sxx = syy = sxy = 0.0
    used = 0

    def tally(name, values):
        clipped = np.clip(values, 0, kmax + 1)
        counts[name] += np.bincount(clipped, minlength=kmax + 2)

    for start in range(0, samples, chunk):
        n = min(chunk, samples - start)
        seeds = (np.arange(start, start + n, dtype=np.uint64) + np.uint64(seed0 & MASK64))
        words = splitmix64_words(seeds, 0)
        reps = _vector_repeats(words, GAPS + 1)
        full = reps[GAPS] > 0
        r = reps[:, full]
        t = _vector_jumps(words[full], r[0])
        eps = (words[full] >> (r[0] - 1).astype(np.uint64)) & np.uint64(1)
        # a sample counts toward |t| = a_k only if the rewrite reproduced the closed form
        ok = (np.abs(t) == a[r[0]]) & ((t > 0) == (eps == 0))
        mismatches += int((~ok).sum())
        k_of_jump = np.where(ok, r[0], 0)
        rows = [r[0]] + [r[j] - r[j - 1] for j in range(1, GAPS + 1)]
        extra_rows, extra_jumps = [], []
        for seed in seeds[~full].tolist():
            try:
                rs, tj = _scalar_sample(seed, GAPS + 1)
            except StreamedUnderdetermined:
                pathological += 1
                continue
            extra_rows.append([rs[0]] + [rs[j] - rs[j - 1] for j in range(1, GAPS + 1)])
            hit = abs(tj) == a_seq(rs[0])
            mismatches += not hit
            extra_jumps.append(rs[0] if hit else 0)
        if extra_rows:
            extra = np.array(extra_rows, dtype=np.int64).T
            rows = [np.concatenate((rows[i], extra[i])) for i in range(GAPS + 1)]
            k_of_jump = np.concatenate((k_of_jump, np.array(extra_jumps, dtype=np.int64)))
        for name, vals in zip(names, rows):
            tally(name, vals)
        tally("jump", k_of_jump)
        x, y = rows[0].astype(np.float64), rows[1].astype(np.float64)
        sx += x.sum(); sy += y.sum(); sxx += (x * x).sum(); syy += (y * y).sum(); sxy += (x * y).sum()
        used += len(x)

    expected = {k: 2.0 ** -k for k in range(1, kmax + 1)}
    freqs, zs = {}, {}
    for name in names:
        c = counts[name]
        freqs[name] = {k: int(c[k]) for k in range(1, kmax + 1)}
        freqs[name][f">{kmax}"] = int(c[kmax + 1])
        zs[name] = {k: (c[k] - used * p) / np.sqrt(used * p * (1 - p)) for k, p in expected.items()}
    cov = sxy / used - (sx / used) * (sy / used)
    corr = cov / np.sqrt((sxx / used - (sx / used) ** 2) * (syy / used - (sy / used) ** 2))
    return RDistributionReport(samples, kmax, seed0, freqs, expected, zs, pathological,
                               mismatches, float(corr))
