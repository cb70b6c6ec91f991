import itertools

import numpy as np
import pytest

from margulis.isometry import AffineIsometry, make_hyperbolic
from margulis.words import (all_reduced_words, canonical, count_reduced, cyclic_reduce,
                            enumerate_cyclically_reduced, evaluate, format_word, inverse,
                            is_cyclically_reduced, parse_word, reduce)


@pytest.mark.parametrize("raw, expected", [
    ("ghHg", "gg"), ("gG", "1"), ("ghgH", "ghgH"), ("hgGgGH", "1"),
])
def test_reduce(raw, expected):
    assert format_word(reduce(parse_word(raw))) == expected


@pytest.mark.parametrize("raw, core, conj", [
    ("ghG", "h", "g"), ("gh", "gh", "1"), ("", "1", "1"), ("hgghgH", "gghg", "h"),
])
def test_cyclic_reduce(raw, core, conj):
    c, k = cyclic_reduce(parse_word(raw))
    assert (format_word(c), format_word(k)) == (core, conj)
    w = reduce(parse_word(raw))
    assert reduce(k + c + inverse(k)) == w


def test_enumeration_small():
    assert [format_word(w) for w in enumerate_cyclically_reduced(1)] == ["g", "G", "h", "H"]
    # a reduced two-letter word never has inverse end letters, so all 4*3 qualify
    assert sum(1 for w in enumerate_cyclically_reduced(2, min_len=2)) == 12



@pytest.mark.parametrize("length", range(1, 9))
def test_count_closed_form(length):
    # cyclically reduced words of length L in a free group of rank 2
    expected = 3 ** length + 1 + (1 + (-1) ** length)
    assert sum(1 for _ in enumerate_cyclically_reduced(length, min_len=length)) == expected


@pytest.mark.parametrize("length", range(1, 8))
def test_enumeration_matches_brute_force(length):
    brute = sorted(w for w in all_reduced_words(length) if is_cyclically_reduced(w))
    fast = list(enumerate_cyclically_reduced(length, min_len=length))
    assert fast == brute
    assert len(all_reduced_words(length)) == count_reduced(length)
    assert all(cyclic_reduce(w)[1] == () for w in fast)


@pytest.mark.parametrize("length", range(1, 7))
def test_dedup_covers_every_class(length):
    reps = set(enumerate_cyclically_reduced(length, dedup=True, min_len=length))
    full = list(enumerate_cyclically_reduced(length, min_len=length))
    assert {canonical(w) for w in full} == reps


def test_evaluate_homomorphism(rng):
    g, _ = make_hyperbolic([1, 0, 0], 0.4)
    h, _ = make_hyperbolic([0, 1, 0], 0.3)
    a = AffineIsometry(g, rng.normal(size=3))
    b = AffineIsometry(h, rng.normal(size=3))
    assert np.allclose(evaluate((), g, h), np.eye(3))
    assert np.allclose(evaluate(parse_word("g"), g, h), g)
    for u, v in itertools.product(["gh", "Hg", "ggH"], ["hG", "g"]):
        wu, wv = parse_word(u), parse_word(v)
        assert np.allclose(evaluate(wu + wv, g, h), evaluate(wu, g, h) @ evaluate(wv, g, h))
        e = evaluate(wu + inverse(wu), a, b)
        assert np.allclose(e.linear, np.eye(3), atol=1e-9) and np.allclose(e.trans, 0, atol=1e-9)
