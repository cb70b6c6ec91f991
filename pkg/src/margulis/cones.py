"""Feasibility geometry for the translational part of g.

C(U-, U+) is the open cone of vectors positive against every unit-spacelike u
with x-(u) in U- and x+(u) in U+.  It is the positive span of
x+(U-), x-(U+), -x+(U+), -x-(U-), and also the intersection of the four
half-spaces det[v a b] > 0 with a a boundary ray of U- and b one of U+.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import Indeterminate, MargulisError, SeedInfeasible
from .lorentz import TOL, det3, lorentz_dot
from .schottky import (ConicalInterval, angle_of, ccw, gap, ray_vector,
                       smallest_containing, wrap)
from .words import G_, H_, power


@dataclass(frozen=True)
class ConeSpec:
    uminus: ConicalInterval
    uplus: ConicalInterval

    def __post_init__(self):
        if gap(self.uminus, self.uplus) <= 0:
            raise MargulisError("U- and U+ must be disjoint")
        s = self.extremes.sum(axis=0)
        if min(self.margins(s)) <= 0:
            raise MargulisError("degenerate cone: sum of extremes is not interior")

    @property
    def extremes(self):
        return np.array([self.uminus.xplus, self.uplus.xminus, -self.uplus.xplus, -self.uminus.xminus])

    @property
    def corners(self):
        """(a, b) boundary pairs whose Lorentz cross products bound the cone."""
        return [(a, b) for a in (self.uminus.xplus, self.uminus.xminus)
                for b in (self.uplus.xplus, self.uplus.xminus)]

    def margins(self, v):
        return [det3(v, a, b) for a, b in self.corners]

    def margins_many(self, vs):
        """Rows of the four margins for each row of ``vs``."""
        normals = np.array([np.cross(a, b) for a, b in self.corners])
        return np.asarray(vs, dtype=float) @ normals.T


def cone_membership(v, cone, tol=TOL):
    """All four <v, a x b> = det[v a b] clear tol*|v|; Indeterminate inside the band."""
    v = np.asarray(v, dtype=float)
    band = tol * max(float(np.linalg.norm(v)), 1e-300)
    ms = cone.margins(v)
    if min(ms) < -band:
        return False
    if min(ms) <= band:
        raise Indeterminate(f"cone margin {min(ms):.3e} inside tolerance band")
    return True


@dataclass(frozen=True)
class HalfSpaceN:
    n: int
    normal: np.ndarray

    def value(self, v):
        return lorentz_dot(v, self.normal)

    def contains(self, v, tol=TOL):
        return self.value(v) < -tol * max(1.0, float(np.linalg.norm(v)))


def half_space(pair, n):
    return HalfSpaceN(n, pair.xzero((G_,) + power(H_, n)))


def build_U_intervals(sys_, pair, n):
    """U- = smallest arc containing A_h^+-, A_g^-; U_n^+ = [x+(A_g^+), x+(g h^(n-1))]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    uminus = smallest_containing([sys_.Ahm, sys_.Ahp, sys_.Agm])
    end = angle_of(pair.xplus((G_,) + power(H_, n - 1)))
    uplus = ConicalInterval(sys_.Agp.start, end)
    return uminus, uplus


def h_cone_intervals(sys_):
    """U-_(h) = smallest arc containing A_h^-, A_g^+-, paired with U+ = A_h^+."""
    return smallest_containing([sys_.Ahm, sys_.Agm, sys_.Agp]), sys_.Ahp


def property_c_arc(pair, sys_=None):
    """Arc bounded by x+(gh) and g(x+(h)), taken inside A_g^+ (or the shorter one)."""
    a = angle_of(pair.xplus((G_, H_)))
    b = angle_of(pair.g @ pair.xplus((H_,)))
    fwd, back = ConicalInterval(a, b), ConicalInterval(b, a)
    if sys_ is not None:
        for arc in (fwd, back):
            if sys_.Agp.contains_interval(arc):
                return arc
    return fwd if fwd.width <= back.width else back


@dataclass
class SeedReport:
    vector: np.ndarray
    theta: float
    margins: dict

    @property
    def ok(self):
        return all(m > 0 for m in self.margins.values())


def check_seed(v, sys_, pair, n, tol=TOL, require_arc=None):
    """Margins of v in arc A, H_n and C(U-, U_n^+); positive means inside.

    Arc membership is only meaningful for lightlike v; it is skipped (and not
    required) when ``require_arc`` is False, which defaults to n == 1 since the
    arc between x+(g) and x+(gh) lies outside A.
    """
    v = np.asarray(v, dtype=float)
    if require_arc is None:
        require_arc = n >= 2
    scale = max(1.0, float(np.linalg.norm(v)))
    margins = {}
    if require_arc:
        arc = property_c_arc(pair, sys_)
        margins["arc"] = arc.depth(angle_of(v)) if v[2] > 0 else -math.inf
    margins["H_n"] = -half_space(pair, n).value(v) - tol * scale
    uminus, uplus = build_U_intervals(sys_, pair, n)
    cone = ConeSpec(uminus, uplus)
    margins["cone"] = min(cone.margins(v)) - tol * scale
    return SeedReport(v, angle_of(v) if v[2] > 0 else math.nan, margins)


def seed_vector(sys_, pair, n, t=0.5, tol=TOL):
    """Unit lightlike vector a fraction t of the way from x+(gh^(n-1)) to x+(gh^n)."""
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    a0 = angle_of(pair.xplus((G_,) + power(H_, n - 1)))
    a1 = angle_of(pair.xplus((G_,) + power(H_, n)))
    d = ccw(a0, a1)
    if d > math.pi:
        d -= 2.0 * math.pi
    theta = wrap(a0 + t * d)
    rep = check_seed(ray_vector(theta), sys_, pair, n, tol)
    if not rep.ok:
        bad = {k: m for k, m in rep.margins.items() if m <= 0}
        raise SeedInfeasible(f"seed for n={n} fails {sorted(bad)}", rep.margins)
    return rep
