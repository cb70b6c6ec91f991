"""Linear and affine isometries of R^{2,1}.

Linear parts are 3x3 float arrays in SO(2,1)^0.  A hyperbolic element g has
eigenvalues lambda < 1 < 1/lambda; x-(g) is the lambda-eigenvector, x+(g) the
attracting one, and x0(g) the unit-spacelike fixed vector whose null frame is
(x0, x-, x+).
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import LambdaOutOfRange, MargulisError, NotHyperbolic
from .lorentz import (J, TOL, euclidean_unit, lorentz_cross, lorentz_norm2,
                      null_frame, vec)

POWER_TOL = 1e-12
POWER_MAXITER = 10_000
STALL_ITER = 50
STALL_TOL = 1e-8
_START = euclidean_unit(np.array([1e-3, 2e-3, 1.0]))


def lorentz_inverse(m):
    # exact for O(2,1): m^-1 = J m^T J
    return J @ m.T @ J


def is_lorentz_isometry(m, tol=TOL):
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        return False
    scale = max(1.0, float(np.abs(m).max()) ** 2)
    if np.abs(m.T @ J @ m - J).max() > tol * scale:
        return False
    if abs(np.linalg.det(m) - 1.0) > tol * scale:
        return False
    return bool(m[2, 2] > 0)


@dataclass(frozen=True)
class HyperbolicData:
    lam: float
    xminus: np.ndarray
    xplus: np.ndarray
    xzero: np.ndarray


def make_hyperbolic(axis, lam, tol=TOL):
    """Hyperbolic isometry with fixed unit-spacelike ``axis`` and smallest eigenvalue ``lam``."""
    if not 0.0 < lam < 1.0:
        raise LambdaOutOfRange(f"lambda = {lam!r} is not in (0, 1)")
    frame = null_frame(vec(axis), tol)
    b = frame.basis()
    m = b @ np.diag([1.0, lam, 1.0 / lam]) @ np.linalg.inv(b)
    return m, HyperbolicData(float(lam), frame.xminus, frame.xplus, frame.v)


def _power(m):
    """Dominant eigenvector, Euclidean-unit and future-pointing.

    Stops when a step is below POWER_TOL.  For badly conditioned m (long
    words) rounding noise can sit above POWER_TOL; a step that has stopped
    shrinking for STALL_ITER iterations below STALL_TOL is accepted too.
    """
    v = _START
    best, since = math.inf, 0
    for _ in range(POWER_MAXITER):
        u = m @ v
        u = u / np.linalg.norm(u)
        if u[2] < 0:
            u = -u
        step = float(np.linalg.norm(u - v))
        if step < POWER_TOL:
            return u
        if step < best:
            best, since = step, 0
        else:
            since += 1
            if since >= STALL_ITER and best < STALL_TOL:
                return u
        v = u
    raise NotHyperbolic("power iteration did not converge")


def spectral_data(m):
    m = np.asarray(m, dtype=float)
    # trace = 1 + lam + 1/lam, so |lam - 1| < 1e-6 is trace - 3 < ~1e-12
    if np.trace(m) - 3.0 <= 1e-12 * max(1.0, abs(np.trace(m))):
        raise NotHyperbolic(f"trace {np.trace(m)!r} does not exceed 3")
    inv = lorentz_inverse(m)
    xplus = _power(m)
    xminus = _power(inv)
    lam = 1.0 / float(xminus @ inv @ xminus)
    if abs(lam - 1.0) < 1e-6 or not 0.0 < lam < 1.0:
        raise NotHyperbolic(f"eigenvalue {lam!r} too close to 1")
    c = lorentz_cross(xminus, xplus)
    q = lorentz_norm2(c)
    if q <= 0:
        raise NotHyperbolic("eigenvectors do not span a spacelike axis")
    return HyperbolicData(lam, xminus, xplus, c / math.sqrt(q))


def x0(m):
    return spectral_data(m).xzero


@dataclass(frozen=True)
class AffineIsometry:
    """p -> linear @ p + trans."""
    linear: np.ndarray
    trans: np.ndarray

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def pure(cls, linear, trans=None):
        return cls(np.asarray(linear, dtype=float),
                   np.zeros(3) if trans is None else vec(trans))

    def __matmul__(self, other):
        return compose(self, other)

    def __call__(self, p):
        return apply(self, p)


def compose(a, b):
    return AffineIsometry(a.linear @ b.linear, a.linear @ b.trans + a.trans)


def invert(a):
    inv = lorentz_inverse(a.linear)
    return AffineIsometry(inv, -(inv @ a.trans))


def apply(a, p):
    return a.linear @ vec(p) + a.trans


def check_isometry(m, tol=TOL):
    if not is_lorentz_isometry(m, tol):
        raise MargulisError("matrix is not in SO(2,1)^0")
    return np.asarray(m, dtype=float)
