"""The ``morse`` command line.

Point literals are ``p``, ``p/q`` or a digit string ``prefix(period)``
written least significant digit first.  A negative literal such as
``-1/7`` may be given as it is; flags taking negative values use the
``-K=16`` form.
"""
import argparse
import json
import os
import re
import sys

from . import verify as verify_mod
from .dyadic import format_bits, format_rational, parse_point
from .errors import AdicMorseError, PointSyntaxError
from .morse import a_seq, morse_inverse, morse_on_int, morse_step
from .perms import TAU, TAUBAR, morse_perm, order
from .stats import r_distribution
from .substitution import derivative, thue_morse
from .timesub import build_order, orbit_trace, window_order

SEED_ENV = "MORSE_SEED"
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

_NEG_LITERAL = re.compile(r"-[0-9]+/[0-9]+")


class _Usage(Exception):
    pass


def _point(text):
    try:
        return parse_point(text)
    except PointSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return verify_mod.DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        raise _Usage(f"{SEED_ENV}={raw!r} is not an integer") from None


def _arrow(args):
    return " <| " if args.ascii else " ◁ "


# -- subcommands: each returns (json_payload, text) -----------------------------

def _point_map(args, func):
    y = func(args.point)
    payload = {"input": format_rational(args.point), "output": format_rational(y),
               "output_bits": format_bits(y)}
    return payload, payload["output"]


def cmd_step(args):
    return _point_map(args, morse_step)


def cmd_inverse(args):
    return _point_map(args, morse_inverse)


def cmd_derivative(args):
    return _point_map(args, derivative)


def cmd_table(args):
    if args.to < args.from_:
        raise _Usage("--to must not be below --from")
    ns = list(range(args.from_, args.to + 1))
    ms = [morse_on_int(n) for n in ns]
    text = "n    " + " ".join(map(str, ns)) + "\nM(n) " + " ".join(map(str, ms))
    return [{"n": n, "M": m} for n, m in zip(ns, ms)], text


def cmd_aseq(args):
    if args.max_r < 0:
        raise _Usage("--max-r must be nonnegative")
    values = [a_seq(r) for r in range(args.max_r + 1)]
    return [{"r": r, "a": a} for r, a in enumerate(values)], " ".join(map(str, values))


def cmd_thue(args):
    if args.len < 0:
        raise _Usage("--len must be nonnegative")
    word = thue_morse(args.len)
    return {"length": args.len, "word": word}, word


def cmd_perm(args):
    g = morse_perm(args.n)
    cycle = g.cycle()
    table = [[i, g(i)] for i in range(g.lo, g.hi + 1)]
    if args.format == "table":
        text = "\n".join(f"{i} -> {j}" for i, j in table)
    else:
        text = "(" + ", ".join(map(str, cycle)) + ")"
    return {"n": args.n, "cycle": cycle, "table": table}, text


def cmd_order(args):
    seq = order(args.n, args.kind).tolist()
    return {"n": args.n, "kind": args.kind, "order": seq}, _arrow(args).join(map(str, seq))


def cmd_trace(args):
    tr = orbit_trace(args.point, args.window)
    values = [{"k": k, "t": tr[k]} for k in tr.ks()]
    text = "\n".join(f"{v['k']} {v['t']}" for v in values)
    return {"base": format_rational(args.point), "window": args.window, "values": values}, text


def cmd_build_order(args):
    con = build_order(args.point, args.depth)
    payload = con.to_json()
    payload["base"] = format_rational(args.point)
    lines = [f"r = {con.r}, eps = {con.eps}"]
    for j, iv in enumerate(con.intervals, 1):
        lines.append(f"I_{j} = [{iv.b}, {iv.c}]: " + _arrow(args).join(map(str, iv.to_list())))
    return payload, "\n".join(lines)


def cmd_window(args):
    iv = window_order(args.point, args.K)
    payload = {"base": format_rational(args.point), "window": args.K, "interval": iv.to_json()}
    return payload, _arrow(args).join(map(str, iv.to_list()))


def cmd_stats(args):
    seed = _default_seed() if args.seed is None else args.seed
    rep = r_distribution(args.samples, args.kmax, seed)
    lines = [f"samples {rep.sample_count}, seed {seed}, pathological {rep.pathological}, "
             f"jump mismatches {rep.jump_mismatches}, corr(r1, gap1) {rep.corr_r1_gap1:.5f}"]
    for name, freqs in rep.frequencies.items():
        cells = [f"{k}:{freqs[k]}({rep.z_scores[name][k]:+.2f})" for k in range(1, rep.kmax + 1)]
        lines.append(f"{name:5} " + " ".join(cells) + f" >{rep.kmax}:{freqs[f'>{rep.kmax}']}")
    payload = rep.to_json()
    payload["seed"] = seed
    return payload, "\n".join(lines)


def cmd_verify(args):
    seed = _default_seed() if args.seed is None else args.seed
    results = verify_mod.run_all(seed, args.only)
    passed = all(r.passed for r in results)
    text = "\n".join(r.line() for r in results)
    text += f"\n{sum(r.passed for r in results)}/{len(results)} checks passed"
    payload = {"seed": seed, "passed": passed, "checks": [r.to_json() for r in results]}
    return payload, text, (EXIT_OK if passed else EXIT_FAILED)


# -- parser -----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--ascii", action="store_true", help="write '<|' instead of '◁'")

    parser = argparse.ArgumentParser(prog="morse", description="The Morse transformation on the 2-adic integers.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text, point=False, parents=(common,)):
        p = sub.add_parser(name, help=help_text, parents=list(parents))
        if point:
            p.add_argument("point", type=_point, help="p, p/q or prefix(period)")
        p.set_defaults(func=func)
        return p

    add("step", cmd_step, "apply M to a point", point=True)
    add("inverse", cmd_inverse, "apply M^-1 to a point", point=True)
    add("derivative", cmd_derivative, "digit derivative of a point", point=True)
    p = add("table", cmd_table, "M(n) for a range of integers")
    p.add_argument("--from", dest="from_", type=int, default=0)
    p.add_argument("--to", type=int, default=15)
    p = add("aseq", cmd_aseq, "the jump magnitudes a_0..a_r")
    p.add_argument("--max-r", type=int, default=20)
    p = add("thue", cmd_thue, "prefix of the Thue-Morse word")
    p.add_argument("--len", type=int, default=32)

    # perm has its own --format with the layouts cycle and table
    p = sub.add_parser("perm", help="the Morse permutation g_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["cycle", "table", "text", "json"], default="cycle")
    p.add_argument("--ascii", action="store_true")
    p.set_defaults(func=cmd_perm)

    p = add("order", cmd_order, "the broken-cycle order tau or taubar")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=[TAU, TAUBAR], default=TAU)
    p = add("trace", cmd_trace, "t(k, x) for |k| <= K", point=True)
    p.add_argument("--window", "-K", type=int, default=16)
    p = add("build-order", cmd_build_order, "nested ordered intervals around 0", point=True)
    p.add_argument("--depth", type=int, default=4)
    p = add("window", cmd_window, "constructed order covering [-K, K]", point=True)
    p.add_argument("-K", "--window", dest="K", type=int, default=16)
    p = add("stats", cmd_stats, "Monte Carlo laws of repeat indices and jumps")
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    p.add_argument("--json", action="store_true", help="same as --format json")
    p = add("verify", cmd_verify, "run the acceptance checks")
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    p.add_argument("--only", type=int, nargs="+", choices=range(1, len(verify_mod.CHECKS) + 1),
                   metavar="N", help="run only these checks")
    return parser


def _protect_negative_literals(argv):
    # argparse reads "-1/7" as a flag; a leading space keeps it positional
    return [" " + a if _NEG_LITERAL.fullmatch(a) else a for a in argv]


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_protect_negative_literals(argv))
    if getattr(args, "json", False):
        args.format = "json"
    try:
        result = args.func(args)
    except _Usage as exc:
        parser.exit(EXIT_USAGE, f"morse: error: {exc}\n")
    except (AdicMorseError, ValueError, MemoryError) as exc:
        parser.exit(EXIT_USAGE, f"morse: error: {exc}\n")
    payload, text, *rest = result
    status = rest[0] if rest else EXIT_OK
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
