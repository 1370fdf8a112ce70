import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supergrass.errors import DimensionError
from supergrass.weights import dominant_filter, highest_weights, is_dominant


def mu(n, i, j):
    v = [0] * n
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def brute_highest_weights(n, k):
    """Levi components 1, ad_1, ad_2, ad_1 (x) ad_2 of End T*; each is
    irreducible, so its highest weight is the weight w with w + alpha never a
    weight, for every simple root alpha of the Levi factor."""
    first = [(i, j) for i in range(k) for j in range(k) if i != j]
    second = [(i, j) for i in range(k, n) for j in range(k, n) if i != j]
    levi_simple = [mu(n, i, i + 1) for i in range(n - 1) if i != k - 1]
    # roots plus the zero weights of the Cartan part of sl
    zero = (0,) * n
    w1 = [mu(n, i, j) for i, j in first] + ([zero] if first else [])
    w2 = [mu(n, i, j) for i, j in second] + ([zero] if second else [])
    comps = [[zero]]
    if w1:
        comps.append(w1)
    if w2:
        comps.append(w2)
    if w1 and w2:
        comps.append([tuple(a + b for a, b in zip(x, y)) for x in w1 for y in w2])
    out = []
    for weights in comps:
        ws = set(weights)
        tops = [w for w in ws
                if not any(tuple(a + b for a, b in zip(w, r)) in ws for r in levi_simple)]
        assert len(tops) == 1
        out.append(tops[0])
    return out


def dominant_by_partial_order(w):
    return all(a >= b for a, b in zip(w, w[1:]))


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 8) for k in range(1, n)])
def test_matches_brute_force(n, k):
    assert sorted(highest_weights(n, k)) == sorted(brute_highest_weights(n, k))
    expected = [w for w in brute_highest_weights(n, k) if dominant_by_partial_order(w)]
    assert sorted(dominant_filter(n, k)) == sorted(expected)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 2), (5, 4)])
def test_only_zero_is_dominant(n, k):
    assert dominant_filter(n, k) == [(0,) * n]


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=6))
def test_dominance_is_weakly_decreasing(w):
    assert is_dominant(tuple(w)) == dominant_by_partial_order(w)


def test_bad_sizes():
    with pytest.raises(DimensionError):
        highest_weights(3, 3)
