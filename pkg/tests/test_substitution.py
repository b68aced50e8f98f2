import pytest
from hypothesis import given, strategies as st

from adicmorse.dyadic import MAX_POINTS, MINUS_ONE_THIRD, Dyadic, StreamedDyadic
from adicmorse.errors import StreamedUnderdetermined
from adicmorse.morse import morse_step
from adicmorse.substitution import complement, cube_free, derivative, thue_morse, zeta

from conftest import rationals

words = st.text(alphabet="01", max_size=40)


def brute_cube_free(w):
    n = len(w)
    for p in range(1, n // 3 + 1):
        for i in range(n - 3 * p + 1):
            if w[i:i + p] == w[i + p:i + 2 * p] == w[i + 2 * p:i + 3 * p]:
                return False
    return True


def parity_word(n):
    # the k-th letter is the parity of the binary digit sum of k
    return "".join(str(bin(k).count("1") % 2) for k in range(n))


@pytest.mark.parametrize("w, image", [("0", "01"), ("1", "10"), ("", ""), ("01", "0110")])
def test_zeta_examples(w, image):
    assert zeta(w) == image


@given(words)
def test_zeta_doubles_length(w):
    assert len(zeta(w)) == 2 * len(w)


def test_zeta_rejects_other_letters():
    with pytest.raises(ValueError):
        zeta("012")


@pytest.mark.parametrize("n, word", [(16, "0110100110010110"), (1, "0"), (0, "")])
def test_thue_morse_examples(n, word):
    assert thue_morse(n) == word


def test_thue_morse_32_is_16_then_complement():
    head = thue_morse(16)
    assert thue_morse(32) == head + complement(head)


def test_thue_morse_matches_digit_sum_parity():
    assert thue_morse(5000) == parity_word(5000)


@pytest.mark.parametrize("k", range(15))
def test_doubling_rule(k):
    head = thue_morse(2 ** k)
    assert thue_morse(2 ** (k + 1)) == head + complement(head)


@pytest.mark.parametrize("k", range(15))
def test_zeta_iterates_are_nested(k):
    w = "0"
    for _ in range(k):
        w = zeta(w)
    assert zeta(w).startswith(w)


def test_fixed_point_on_prefix():
    u = thue_morse(4096)
    assert zeta(u[:2048]) == u


@pytest.mark.parametrize("w, expected", [("010101", False), ("0110", True), ("000", False),
                                         ("", True), ("0", True), ("001001001", False)])
def test_cube_free_examples(w, expected):
    assert cube_free(w) is expected


def test_thue_morse_is_cube_free():
    assert cube_free(thue_morse(2 ** 12))


@given(words)
def test_cube_free_matches_brute_force(w):
    assert cube_free(w) == brute_cube_free(w)


@pytest.mark.parametrize("x, dx", [(Dyadic(0), Dyadic(0)), (MINUS_ONE_THIRD, Dyadic(-1)),
                                   (Dyadic(1), Dyadic(1)), (Dyadic(-1), Dyadic(0))])
def test_derivative_examples(x, dx):
    assert derivative(x) == dx


@given(rationals())
def test_derivative_digits(x):
    d = derivative(x)
    for k in range(1, 80):
        assert d.bit(k) == (x.bit(k + 1) - x.bit(k)) % 2


@given(rationals())
def test_conjugacy_property(x):
    if x in MAX_POINTS:
        return
    assert derivative(x).add_int(1) == derivative(morse_step(x))


def test_conjugacy_on_sample(rational_sample):
    for x in rational_sample:
        if x in MAX_POINTS:
            continue
        lhs = derivative(x).add_int(1)
        rhs = derivative(morse_step(x))
        assert lhs.digits(64) == rhs.digits(64)
        assert lhs == rhs


def test_derivative_needs_rational():
    with pytest.raises(StreamedUnderdetermined):
        derivative(StreamedDyadic(seed=1))
