import math

import numpy as np
import pytest

from margulis.cones import (ConeSpec, build_U_intervals, check_seed, cone_membership,
                            h_cone_intervals, half_space, property_c_arc, seed_vector)
from margulis.errors import Indeterminate, SeedInfeasible
from margulis.isometry import lorentz_inverse
from margulis.lorentz import lorentz_cross, lorentz_dot
from margulis.schottky import angle_of, ray_vector
from margulis.words import G_, H_, GeneratorPair, power


def in_positive_span(gens, v):
    """Elimination oracle: v = c @ gens with every c_i > 0 (4 generators in R^3)."""
    e = np.asarray(gens).T
    c0 = np.linalg.lstsq(e, v, rcond=None)[0]
    if np.linalg.norm(e @ c0 - v) > 1e-9 * max(1.0, np.linalg.norm(v)):
        return False
    null = np.linalg.svd(e)[2][-1]
    lo, hi = -math.inf, math.inf
    for ci, ni in zip(c0, null):
        if abs(ni) < 1e-15:
            if ci <= 0:
                return False
        elif ni > 0:
            lo = max(lo, -ci / ni)
        else:
            hi = min(hi, -ci / ni)
    return lo < hi


@pytest.fixture(scope="module")
def cone3(prepared):
    _, _, sys_, pair = prepared
    return ConeSpec(*build_U_intervals(sys_, pair, 3))


def test_extreme_sum(cone3):
    s = cone3.extremes.sum(axis=0)
    assert cone_membership(s, cone3)
    assert not cone_membership(-s, cone3)


def test_membership_matches_elimination(cone3, rng):
    gens = cone3.extremes
    agree = 0
    for _ in range(1000):
        v = rng.exponential(size=4) @ gens
        assert cone_membership(v, cone3)
    for _ in range(1000):
        v = rng.normal(size=3)
        try:
            got = cone_membership(v, cone3)
        except Indeterminate:
            continue
        assert got == in_positive_span(gens, v)
        agree += 1
    assert agree > 990


def test_margins_many_matches_margins(cone3, rng):
    vs = rng.normal(size=(50, 3))
    assert np.allclose(cone3.margins_many(vs), [cone3.margins(v) for v in vs])


def test_cone_is_dual_to_spacelike_family(cone3, rng):
    # positive against u with x-(u) in U-, x+(u) in U+
    s = cone3.extremes.sum(axis=0)
    for _ in range(200):
        xm = ray_vector(cone3.uminus.at(rng.uniform()))
        xp = ray_vector(cone3.uplus.at(rng.uniform()))
        u = lorentz_cross(xm, xp)
        assert lorentz_dot(s, u) > 0


def test_U_intervals(prepared):
    _, _, sys_, pair = prepared
    um, up = build_U_intervals(sys_, pair, 1)
    assert up.end == pytest.approx(angle_of(pair.xplus((G_,))))
    um, up = build_U_intervals(sys_, pair, 3)
    assert um.contains_interval(sys_.Agm) and um.contains_interval(sys_.Ahm) and um.contains_interval(sys_.Ahp)
    assert up.start == sys_.Agp.start
    assert up.end == pytest.approx(angle_of(pair.xplus((G_, H_, H_))))
    assert sys_.Agp.contains_interval(up)
    hm, hp = h_cone_intervals(sys_)
    assert hp == sys_.Ahp and hm.contains_interval(sys_.Agp)


def test_property_c_arc(prepared):
    _, _, sys_, pair = prepared
    arc = property_c_arc(pair, sys_)
    assert arc.contains_vector(pair.xplus((G_, H_)))
    assert arc.depth(angle_of(pair.xplus((G_,) + power(H_, 3)))) > 0
    assert sys_.Agp.contains_interval(arc)


@pytest.mark.parametrize("n", range(1, 6))
def test_seed(prepared, n):
    _, _, sys_, pair = prepared
    rep = seed_vector(sys_, pair, n)
    assert rep.ok and all(m > 0 for m in rep.margins.values())
    assert ("arc" in rep.margins) == (n >= 2)
    assert half_space(pair, n).contains(rep.vector)
    if n >= 2:
        assert lorentz_dot(rep.vector, pair.xzero((G_,) + power(H_, n - 1))) > 0


def test_seed_outside_is_rejected(prepared):
    _, _, sys_, pair = prepared
    far = ray_vector(sys_.Agm.midpoint)
    assert not check_seed(far, sys_, pair, 3).ok
    with pytest.raises(ValueError):
        seed_vector(sys_, pair, 3, t=1.5)


def test_seed_infeasible_with_misoriented_h(prepared):
    g, h, sys_, _ = prepared
    with pytest.raises(SeedInfeasible) as exc:
        seed_vector(sys_, GeneratorPair(g, lorentz_inverse(h)), 3)
    assert exc.value.margins["cone"] < 0
