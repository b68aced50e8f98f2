import numpy as np
import pytest

from adicmorse.errors import OutOfInterval
from adicmorse.morse import a_seq
from adicmorse.perms import (MATERIALIZE_MAX_LEVEL, TAU, TAUBAR, MorsePerm, ShiftedOrder,
                             morse_perm, morse_perm_value, order, order_by_cycle, reflect)


def perm_by_rule(n):
    """g_n as a dict, straight from the two-copies-plus-exceptions rule."""
    if n == 1:
        return {2: 3, 3: 2}
    prev = perm_by_rule(n - 1)
    half = 2 ** (n - 1)
    g = {}
    for i, j in prev.items():
        g[i + half] = j + half
        g[i + 2 ** n] = j + 2 ** n
    g[a_seq(n + 1)] = 2 ** (n + 1) - 1
    g[2 ** n + a_seq(n)] = 2 ** n
    return g


def relative_pattern(block):
    ranks = sorted(block)
    return tuple(ranks.index(v) + 1 for v in block)


@pytest.mark.parametrize("n, cycle", [
    (1, [2, 3]),
    (2, [4, 5, 7, 6]),
    (3, [8, 9, 11, 10, 15, 14, 12, 13]),
])
def test_cycles(n, cycle):
    assert morse_perm(n).cycle() == cycle


def test_g2_values():
    g = morse_perm(2)
    assert [g(i) for i in (4, 5, 6, 7)] == [5, 7, 4, 6]


@pytest.mark.parametrize("n", range(1, 13))
def test_array_matches_rule(n):
    g = perm_by_rule(n)
    arr = morse_perm(n).array
    assert [g[i] for i in range(2 ** n, 2 ** (n + 1))] == arr.tolist()


@pytest.mark.parametrize("n", range(1, 17))
def test_single_cycle(n):
    assert len(morse_perm(n).cycle()) == 2 ** n


@pytest.mark.parametrize("n", range(2, 17))
def test_one_crossing_each_way(n):
    arr = morse_perm(n).array
    idx = np.arange(2 ** n, 2 ** (n + 1))
    mid = 2 ** n + 2 ** (n - 1)
    assert int(((idx < mid) & (arr >= mid)).sum()) == 1
    assert int(((idx >= mid) & (arr < mid)).sum()) == 1


@pytest.mark.parametrize("n", range(1, 12))
def test_pointwise_matches_array(n):
    arr = morse_perm(n).array
    assert [morse_perm_value(n, i) for i in range(2 ** n, 2 ** (n + 1))] == arr.tolist()


def test_pointwise_above_materialization_limit():
    n = MATERIALIZE_MAX_LEVEL + 6
    g = MorsePerm(n)
    assert g(a_seq(n + 1)) == 2 ** (n + 1) - 1
    assert g(2 ** n + a_seq(n)) == 2 ** n
    i = 2 ** n + 12345
    assert g(i) == morse_perm_value(n, i)
    with pytest.raises(MemoryError):
        g.array


def test_out_of_interval():
    with pytest.raises(OutOfInterval):
        morse_perm(3)(7)
    with pytest.raises(OutOfInterval):
        morse_perm_value(3, 16)
    with pytest.raises(ValueError):
        morse_perm(0)


@pytest.mark.parametrize("n, kind, expected", [
    (3, TAU, [15, 14, 12, 13, 8, 9, 11, 10]),
    (3, TAUBAR, [8, 9, 11, 10, 15, 14, 12, 13]),
    (1, TAU, [3, 2]),
    (1, TAUBAR, [2, 3]),
])
def test_order_examples(n, kind, expected):
    assert order(n, kind).tolist() == expected


@pytest.mark.parametrize("n", range(1, 15))
@pytest.mark.parametrize("kind", [TAU, TAUBAR])
def test_order_matches_cycle_walk(n, kind):
    assert order(n, kind).tolist() == order_by_cycle(n, kind)


@pytest.mark.parametrize("n", range(1, 17))
def test_last_elements(n):
    assert order(n, TAU)[-1] == a_seq(n + 1)
    assert order(n, TAUBAR)[-1] == 2 ** (n + 1) + 2 ** n - a_seq(n + 1) - 1
    assert order(n, TAU)[0] == 2 ** (n + 1) - 1
    assert order(n, TAUBAR)[0] == 2 ** n


@pytest.mark.parametrize("n", range(1, 13))
def test_taubar_is_reflected_tau(n):
    assert [reflect(n, i) for i in order(n, TAU).tolist()] == order(n, TAUBAR).tolist()


@pytest.mark.parametrize("n", range(2, 13))
@pytest.mark.parametrize("kind", [TAU, TAUBAR])
def test_four_blocks(n, kind):
    seq = order(n, kind).tolist()
    for k in range(0, len(seq), 4):
        assert relative_pattern(seq[k:k + 4]) in {(1, 2, 4, 3), (4, 3, 1, 2)}


def test_order_kind_validated():
    with pytest.raises(ValueError):
        order(3, "sigma")


@pytest.mark.parametrize("n, i, j", [(3, 15, 8), (3, 11, 12), (1, 2, 3)])
def test_reflect_examples(n, i, j):
    assert reflect(n, i) == j


@pytest.mark.parametrize("n", range(1, 10))
def test_reflect_is_involution(n):
    for i in range(2 ** n, 2 ** (n + 1)):
        assert reflect(n, reflect(n, i)) == i


def test_reflect_out_of_interval():
    with pytest.raises(OutOfInterval):
        reflect(3, 16)


def test_shifted_order_is_a_view():
    view = ShiftedOrder(3, TAUBAR, -2)
    assert list(view) == [-2, -1, 1, 0, 5, 4, 2, 3]
    assert (view.first, view.last) == (-2, 3)
    assert view[2] == 1
    assert np.shares_memory(view._arr, order(3, TAUBAR))
    assert view.as_array().tolist() == list(view)


def test_cached_arrays_are_read_only():
    with pytest.raises(ValueError):
        order(4, TAU)[0] = 0
    with pytest.raises(ValueError):
        morse_perm(4).array[0] = 0
