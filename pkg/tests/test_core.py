import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from quivergrass.core import (
    Params,
    component_fixed_point,
    component_subsets,
    enumerate_length_tuples,
    is_bounded_window,
    is_juggling_pattern,
    jug_to_lengths,
    lengths_to_jug,
    lengths_to_perm,
    perm_length,
    perm_to_lengths,
    window_value,
    GuardExceeded,
)
from conftest import guarded_triples, workspace

SMALL_TRIPLES = [t for t in guarded_triples(6) if t[1] * t[2] <= 6]


# ---------------------------------------------------------------------------
# oracles


def oracle_enumerate(p: Params):
    """Brute-force filter of the full box [0, nw]^n."""
    out = []
    for ell in itertools.product(range(p.nw + 1), repeat=p.n):
        if sum(ell) != p.total:
            continue
        if {(j + ell[j - 1]) % p.n for j in range(1, p.n + 1)} != set(range(p.n)):
            continue
        out.append(ell)
    return out


def oracle_perm_length(window, horizon_periods=None):
    """Direct inversion count over a finite horizon of positions j > i."""
    n = len(window)
    shifts = [v - i for i, v in enumerate(window, start=1)]
    periods = horizon_periods or (max(shifts) - min(shifts) + n)
    count = 0
    for i in range(1, n + 1):
        for j in range(i + 1, i + periods + 1):
            if window_value(window, i) > window_value(window, j):
                count += 1
    return count


# ---------------------------------------------------------------------------
# enumeration


def test_enumeration_examples():
    assert enumerate_length_tuples(Params(1, 2, 2)) == [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
    assert enumerate_length_tuples(Params(1, 2, 1)) == [(0, 2), (1, 1), (2, 0)]
    for n, omega in [(2, 1), (3, 1), (3, 2), (4, 1)]:
        p = Params(n, n, omega)
        assert enumerate_length_tuples(p) == [(p.nw,) * n]


@pytest.mark.parametrize("trip", [t for t in SMALL_TRIPLES if t[1] * t[2] <= 5])
def test_enumeration_matches_bruteforce(trip):
    p = Params(*trip)
    assert enumerate_length_tuples(p) == oracle_enumerate(p)


def test_enumeration_guard():
    with pytest.raises(GuardExceeded):
        enumerate_length_tuples(Params(1, 11, 1))
    assert enumerate_length_tuples(Params(1, 11, 1), max_size=11)


def test_invalid_params():
    with pytest.raises(ValueError):
        Params(0, 2, 1)
    with pytest.raises(ValueError):
        Params(3, 2, 1)
    with pytest.raises(ValueError):
        Params(1, 2, 0)


# ---------------------------------------------------------------------------
# bijections


def test_jug_lengths_examples():
    p = Params(1, 2, 2)
    assert jug_to_lengths(p, ((3, 4), (3, 4))) == (2, 2)
    assert jug_to_lengths(p, ((2, 4), (1, 3))) == (4, 0)
    assert lengths_to_jug(p, (0, 4)) == ((1, 3), (2, 4))
    with pytest.raises(ValueError):
        jug_to_lengths(p, ((1, 2), (1, 2)))  # breaks the shift rule


def test_constant_tuple_pattern():
    for trip in [(1, 2, 2), (2, 3, 1), (2, 4, 2), (3, 5, 1)]:
        p = Params(*trip)
        top = tuple(range((p.n - p.k) * p.omega + 1, p.nw + 1))
        assert lengths_to_jug(p, (p.kw,) * p.n) == (top,) * p.n


def oracle_all_patterns(p: Params):
    """Independent brute-force enumeration of the juggling patterns."""
    subsets = list(itertools.combinations(range(1, p.nw + 1), p.kw))
    count = 0
    for combo in itertools.product(subsets, repeat=p.n):
        if is_juggling_pattern(p, combo):
            count += 1
    return count


def oracle_all_bounded(p: Params):
    """Independent brute-force enumeration of the bounded windows."""
    count = 0
    for shifts in itertools.product(range(p.nw + 1), repeat=p.n):
        window = tuple(i + s for i, s in enumerate(shifts, start=1))
        if is_bounded_window(p, window):
            count += 1
    return count


@pytest.mark.parametrize("trip", [t for t in SMALL_TRIPLES if t[1] * t[2] <= 4] + [(1, 5, 1), (2, 5, 1)])
def test_three_labelling_counts_agree_independently(trip):
    p = Params(*trip)
    tuples = enumerate_length_tuples(p)
    assert oracle_all_patterns(p) == len(tuples) == oracle_all_bounded(p)


@pytest.mark.parametrize("trip", guarded_triples(8))
def test_bijections_roundtrip(trip):
    ws = workspace(*trip)
    p = ws.p
    seen_patterns = set()
    for ell, jug, win in zip(ws.tuples, ws.patterns, ws.windows):
        assert is_juggling_pattern(p, jug)
        assert jug_to_lengths(p, jug) == ell
        assert is_bounded_window(p, win)
        assert perm_to_lengths(p, win) == ell
        seen_patterns.add(jug)
    # all three labellings have the same cardinality
    assert len(seen_patterns) == len(ws.tuples) == len(set(ws.windows))


def test_perm_rejects_unbounded():
    p = Params(1, 2, 1)
    with pytest.raises(ValueError):
        perm_to_lengths(p, (0, 5))  # f(1) < 1
    with pytest.raises(ValueError):
        perm_to_lengths(p, (4, 1))  # f(1) > 1 + nw


def test_perm_examples():
    p = Params(1, 2, 2)
    assert lengths_to_perm(p, (2, 2)) == (3, 4)
    assert lengths_to_perm(p, (4, 0)) == (5, 2)
    assert perm_to_lengths(p, (5, 2)) == (4, 0)
    assert perm_to_lengths(p, (3, 4)) == (2, 2)
    assert lengths_to_perm(Params(2, 3, 2), (4,) * 3) == (5, 6, 7)


# ---------------------------------------------------------------------------
# length function


def test_perm_length_examples():
    assert perm_length((1, 2)) == 0
    assert perm_length(tuple(i + 3 for i in range(1, 4))) == 0  # shifted identity
    assert perm_length((4, 3)) == 1
    assert perm_length((5, 2)) == 2


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_perm_length_matches_windowed_count(data):
    n = data.draw(st.integers(1, 5))
    shifts = data.draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n))
    window = tuple(i + s for i, s in enumerate(shifts, start=1))
    if len({v % n for v in window}) != n:
        return
    assert perm_length(window) == oracle_perm_length(window)


@pytest.mark.parametrize("trip", SMALL_TRIPLES)
def test_max_length_is_dimension(trip):
    ws = workspace(*trip)
    p = ws.p
    dim = p.omega * p.k * (p.n - p.k)
    assert max(ws.lengths) == dim
    top = [ws.tuples[i] for i, l in enumerate(ws.lengths) if l == dim]
    assert len(top) == math.comb(p.n, p.k)
    comps = {jug_to_lengths(p, component_fixed_point(p, s)) for s in component_subsets(p)}
    assert comps == set(top)


# ---------------------------------------------------------------------------
# component fixed points


def test_component_fixed_point_examples():
    p = Params(1, 2, 2)
    assert component_fixed_point(p, (2,)) == ((2, 4), (1, 3))
    assert component_fixed_point(p, (1,)) == ((1, 3), (2, 4))
    assert jug_to_lengths(p, component_fixed_point(p, (2,))) == (4, 0)
    assert jug_to_lengths(p, component_fixed_point(p, (1,))) == (0, 4)
    q = Params(3, 3, 2)
    full = tuple(range(1, q.nw + 1))
    assert component_fixed_point(q, (1, 2, 3)) == (full,) * 3


def test_component_fixed_point_rejects_bad_subset():
    p = Params(1, 2, 2)
    with pytest.raises(ValueError):
        component_fixed_point(p, (1, 2))
    with pytest.raises(ValueError):
        component_fixed_point(p, (3,))
