"""Exact 2-adic arithmetic for the Morse transformation and its time substitution."""
from .dyadic import (Dyadic, ExceptionalClass, StreamedDyadic, add_int, bit, classify,
                     cofinal_difference, format_bits, format_rational, from_bits, from_rational,
                     is_generic, parse_point, random_rational, to_bits)
from .errors import (AdicMorseError, EvenDenominator, ExceptionalPoint, IntervalTooLarge,
                     NonIntegerDisplacement, NoRepeat, OutOfInterval, PointSyntaxError,
                     StreamedUnderdetermined)
from .morse import (JumpParams, a_seq, first_repeat, integer_params, jump, morse_inverse,
                    morse_on_int, morse_step)
from .perms import TAU, TAUBAR, MorsePerm, ShiftedOrder, morse_perm, order, reflect
from .stats import RDistributionReport, r_distribution, sample_point
from .substitution import complement, cube_free, derivative, thue_morse, zeta
from .timesub import (LocalFinitenessReport, OrbitTrace, OrderConstruction, OrderedInterval,
                      build_order, check_locally_finite, lemma3_check, modified_shift,
                      orbit_trace, ulfts_check, window_order)

__version__ = "0.1.0"
