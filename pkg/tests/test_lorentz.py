import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from margulis.errors import Indeterminate, NotUnitSpacelike
from margulis.lorentz import (CausalClass, classify, det3, lorentz_cross, lorentz_dot,
                              lorentz_unit, null_frame, positively_oriented, strict_sign)

R = 1 / math.sqrt(2)


@pytest.mark.parametrize("x, y, expected", [
    ((1, 0, 0), (1, 0, 0), 1.0),
    ((0, 0, 1), (0, 0, 1), -1.0),
    ((1, 1, 1), (1, -1, 1), -1.0),
])
def test_dot(x, y, expected):
    assert lorentz_dot(x, y) == expected


@pytest.mark.parametrize("x, cls", [
    ((1, 0, 0), CausalClass.SPACELIKE),
    ((1, 0, 1), CausalClass.LIGHTLIKE),
    ((0, 0, 1), CausalClass.TIMELIKE),
    ((0, 0, 0), CausalClass.ZERO),
])
def test_classify(x, cls):
    assert classify(x) is cls


@pytest.mark.parametrize("v, w, expected", [
    ((1, 0, 0), (0, 1, 0), (0, 0, -1)),
    ((1, 0, 0), (0, 0, 1), (0, -1, 0)),
    ((2, 3, 5), (2, 3, 5), (0, 0, 0)),
])
def test_cross_examples(v, w, expected):
    assert np.allclose(lorentz_cross(np.array(v, float), np.array(w, float)), expected)


def test_cross_is_determinant_against_basis():
    v, w = np.array([0.3, -1.2, 2.0]), np.array([1.5, 0.4, -0.7])
    c = lorentz_cross(v, w)
    for e in np.eye(3):
        assert lorentz_dot(e, c) == pytest.approx(det3(e, v, w), abs=1e-12)


finite = st.integers(-10_000, 10_000).map(lambda k: k / 1000)
vectors = st.tuples(finite, finite, finite).map(np.array)


@settings(max_examples=200, deadline=None)
@given(vectors, vectors, vectors)
def test_cross_identity_property(u, v, w):
    scale = max(1.0, np.linalg.norm(u) * np.linalg.norm(v) * np.linalg.norm(w))
    assert abs(lorentz_dot(u, lorentz_cross(v, w)) - det3(u, v, w)) <= 1e-9 * scale


def test_orientation_examples():
    e = np.eye(3)
    assert positively_oriented([e[0], e[1], e[2]])
    assert not positively_oriented([e[1], e[0], e[2]])
    assert positively_oriented([e[1], e[2], e[0]])


def test_orientation_indeterminate():
    with pytest.raises(Indeterminate):
        positively_oriented([(1, 0, 0), (0, 1, 0), (1, 1, 1e-13)])


def test_strict_sign():
    assert strict_sign(2.0) == 1 and strict_sign(-1e-3) == -1
    with pytest.raises(Indeterminate):
        strict_sign(1e-12)


@pytest.mark.parametrize("v, xm, xp", [
    ((1, 0, 0), (0, R, R), (0, -R, R)),
    ((0, 1, 0), (-R, 0, R), (R, 0, R)),
])
def test_null_frame_examples(v, xm, xp):
    f = null_frame(v)
    assert np.allclose(f.xminus, xm) and np.allclose(f.xplus, xp)


def random_unit_spacelike(rng):
    while True:
        x = rng.normal(size=3) * [1, 1, 0.8]
        if lorentz_dot(x, x) > 1e-2:
            return lorentz_unit(x)


def test_null_frame_invariants(rng):
    for _ in range(300):
        v = random_unit_spacelike(rng)
        f = null_frame(v)
        for x in (f.xminus, f.xplus):
            assert abs(lorentz_dot(x, x)) < 1e-9
            assert abs(lorentz_dot(x, v)) < 1e-9
            assert x[2] > 0
            assert abs(np.linalg.norm(x) - 1) < 1e-9
        assert det3(v, f.xminus, f.xplus) > 0


@pytest.mark.parametrize("bad", [(0, 0, 1), (1, 0, 1), (2, 0, 0)])
def test_null_frame_rejects(bad):
    with pytest.raises(NotUnitSpacelike):
        null_frame(bad)
