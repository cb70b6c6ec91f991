"""Linear algebra on R^{2,1} with the form x1*y1 + x2*y2 - x3*y3.

Vectors are plain length-3 float arrays.  Strict sign predicates compare
against ``tol * scale`` and raise :class:`Indeterminate` inside the band
instead of guessing.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import Indeterminate, NotUnitSpacelike

TOL = 1e-9

J = np.diag([1.0, 1.0, -1.0])


def vec(x):
    v = np.asarray(x, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite vector {v}")
    return v


def lorentz_dot(x, y):
    return float(x[0] * y[0] + x[1] * y[1] - x[2] * y[2])


def lorentz_norm2(x):
    return lorentz_dot(x, x)


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ZERO = "zero"


def classify(x, tol=TOL):
    x = vec(x)
    e2 = float(x @ x)
    if e2 == 0.0:
        return CausalClass.ZERO
    q = lorentz_norm2(x)
    if abs(q) <= tol * e2:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


def lorentz_cross(v, w):
    """The c with <u, c> = det[u v w] for every u: J applied to the Euclidean cross."""
    c = np.cross(v, w)
    c[2] = -c[2]
    return c


def det3(a, b, c):
    return float(np.linalg.det(np.column_stack([a, b, c])))


def is_future(x):
    return x[2] > 0


def euclidean_unit(x):
    return x / np.linalg.norm(x)


def lorentz_unit(v, tol=TOL):
    """Rescale a spacelike vector to <v, v> = 1."""
    v = vec(v)
    if classify(v, tol) is not CausalClass.SPACELIKE:
        raise NotUnitSpacelike(f"{v} is not spacelike")
    return v / math.sqrt(lorentz_norm2(v))


def strict_sign(value, scale=1.0, tol=TOL, what="value"):
    """Return +1/-1 for ``value``; raise Indeterminate when |value| <= tol*scale."""
    if abs(value) <= tol * max(scale, 1e-300):
        raise Indeterminate(f"{what} = {value:.3e} is within tolerance of zero")
    return 1 if value > 0 else -1


def positively_oriented(vs, tol=TOL):
    """True iff every ordered triple (i<j<k) has det[v_i v_j v_k] > 0.

    Each determinant must clear ``tol`` times the product of Euclidean norms,
    otherwise :class:`Indeterminate` is raised.
    """
    vs = [vec(v) for v in vs]
    if len(vs) < 3:
        raise ValueError("need at least three vectors")
    norms = [np.linalg.norm(v) for v in vs]
    ok = True
    n = len(vs)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                d = det3(vs[i], vs[j], vs[k])
                s = strict_sign(d, norms[i] * norms[j] * norms[k], tol,
                                what=f"det[v{i} v{j} v{k}]")
                ok = ok and s > 0
    return ok


@dataclass(frozen=True)
class NullFrame:
    v: np.ndarray
    xminus: np.ndarray
    xplus: np.ndarray

    def basis(self):
        return np.column_stack([self.v, self.xminus, self.xplus])


def null_frame(v, tol=TOL):
    """The null frame (v, x-, x+) of a unit-spacelike v.

    The two future lightlike lines of v-perp meet the height-one plane at
    angles phi +- arccos(v3 / hypot(v1, v2)); orientation picks which is x-.
    """
    v = vec(v)
    if classify(v, tol) is not CausalClass.SPACELIKE or abs(lorentz_norm2(v) - 1.0) > tol * max(1.0, v @ v):
        raise NotUnitSpacelike(f"{v} is not unit-spacelike (<v,v> = {lorentz_norm2(v)!r})")
    r = math.hypot(v[0], v[1])
    phi = math.atan2(v[1], v[0])
    d = math.acos(max(-1.0, min(1.0, v[2] / r)))
    a = np.array([math.cos(phi + d), math.sin(phi + d), 1.0]) / math.sqrt(2.0)
    b = np.array([math.cos(phi - d), math.sin(phi - d), 1.0]) / math.sqrt(2.0)
    if det3(v, a, b) > 0:
        return NullFrame(v, a, b)
    return NullFrame(v, b, a)
