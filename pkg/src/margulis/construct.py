"""Affine deformations of <g, h> with Margulis invariants of mixed sign.

The main entry point is :func:`construct_counterexample`: translational parts
v_h (positive on every word ending in h) and v_g = k * v, where v sits in the
narrow arc between x+(g h^(n-1)) and x+(g h^n), so that alpha stays positive
on every word of length <= n while alpha(gamma eta^n) is negative.  Two group
elements with opposite-sign alpha rule out a proper action.
"""
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .cones import ConeSpec, cone_membership, h_cone_intervals, property_c_arc, seed_vector
from .errors import (Infeasible, NoSystemFound, NotHyperbolic, PropertyCViolated,
                     VerificationFailed)
from .invariant import alpha_direct, alpha_sum, conjugate_type
from .isometry import AffineIsometry
from .lorentz import TOL, lorentz_dot
from .schottky import (build_schottky_system, candidate_system,
                       is_transversal, ray_vector, verify_schottky)
from .words import (G_, H_, GeneratorPair, enumerate_cyclically_reduced, evaluate,
                    format_word, power)

SCALE_FACTOR = 2.0
CROSS_CHECK_FRACTION = 0.1
CROSS_CHECK_RTOL = 1e-8


def gh_power(n):
    return (G_,) + power(H_, n)


@dataclass
class PropertyCReport:
    depth: int
    samples: int
    n_plus: int = 0
    n_minus: int = 0
    min_slack: float = math.inf
    min_term: float = math.inf
    ok: bool = True
    witness: dict = None

    def as_dict(self):
        return dict(depth=self.depth, samples=self.samples, n_plus=self.n_plus, n_minus=self.n_minus,
                    min_slack=_finite(self.min_slack), min_term=_finite(self.min_term), ok=self.ok,
                    witness=self.witness)

    def raise_if_failed(self):
        if not self.ok:
            raise PropertyCViolated(f"Property C fails at depth {self.depth}: {self.witness}", self.witness)
        return self


def _finite(x):
    return x if math.isfinite(x) else None


def check_property_c(pair, depth, arc_samples=64, sys_=None, tol=TOL):
    """-<x, x0(w1)> < <x, x0(w2)> for x in the arc A, w1 in W+, w2 in W- (length <= depth).

    Both sides are also required to be positive.  Words in W+ start g h^i g^-1,
    words in W- start g h^-i g^-1 (i > 0).
    """
    rep = PropertyCReport(depth, arc_samples)
    plus, minus = [], []
    for w in enumerate_cyclically_reduced(depth):
        c = conjugate_type(w)
        if c:
            (plus if c > 0 else minus).append(w)
    rep.n_plus, rep.n_minus = len(plus), len(minus)
    if not plus and not minus:
        return rep
    try:
        xp = np.array([pair.xzero(w) for w in plus]).reshape(-1, 3)
        xm = np.array([pair.xzero(w) for w in minus]).reshape(-1, 3)
    except NotHyperbolic:
        bad = next(w for w in plus + minus if not pair.hyperbolic(w))
        rep.ok = False
        rep.witness = {"reason": "non-hyperbolic word", "word": format_word(bad)}
        return rep
    xp[:, 2] *= -1.0  # fold J in so rows @ x are Lorentz pairings
    xm[:, 2] *= -1.0
    arc = property_c_arc(pair, sys_)
    for theta in arc.samples(arc_samples):
        x = ray_vector(theta)
        lhs = -(xp @ x) if len(plus) else np.array([-math.inf])
        rhs = xm @ x if len(minus) else np.array([math.inf])
        i, j = int(np.argmax(lhs)), int(np.argmin(rhs))
        slack = float(rhs[j] - lhs[i])
        terms = [v for v in (float(lhs.min()) if len(plus) else None,
                             float(rhs[j]) if len(minus) else None) if v is not None]
        rep.min_slack = min(rep.min_slack, slack)
        rep.min_term = min([rep.min_term] + terms)
        if rep.ok and (slack <= tol or min(terms) <= tol):
            rep.ok = False
            rep.witness = {
                "theta": theta,
                "w1": format_word(plus[i]) if len(plus) else None,
                "w2": format_word(minus[j]) if len(minus) else None,
                "lhs": float(lhs[i]), "rhs": float(rhs[j]), "slack": slack,
                "min_term": min(terms),
            }
    return rep


@dataclass
class Deformation:
    g: np.ndarray
    h: np.ndarray
    vg: np.ndarray
    vh: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def gamma(self):
        return AffineIsometry(self.g, self.vg)

    @property
    def eta(self):
        return AffineIsometry(self.h, self.vh)

    def element(self, w):
        return evaluate(w, self.gamma, self.eta)

    def alpha(self, w):
        return alpha_direct(self.element(w))

    def scaled(self, t):
        return Deformation(self.g, self.h, t * self.vg, self.vh, dict(self.provenance, vg_scale=t))

    def as_dict(self):
        return dict(g=self.g.tolist(), h=self.h.tolist(), vg=self.vg.tolist(), vh=self.vh.tolist(),
                    provenance=_jsonable(self.provenance))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


@dataclass
class Certificate:
    n: int
    passed: bool
    min_alpha_by_length: list          # (length, min alpha, argmin word)
    violator: dict                     # word g h^n and its alpha
    tolerances: dict
    words_checked: int = 0
    dedup: bool = True
    failures: list = field(default_factory=list)
    nonhyperbolic: list = field(default_factory=list)
    cross_check: dict = field(default_factory=dict)
    table: list = field(default_factory=list)  # (word, length, alpha)
    extra: dict = field(default_factory=dict)

    @property
    def min_alpha(self):
        vals = [a for _, a, _ in self.min_alpha_by_length]
        return min(vals) if vals else math.nan

    def as_dict(self):
        return _jsonable(dict(
            n=self.n, passed=self.passed, min_alpha=self.min_alpha,
            min_alpha_by_length=[dict(length=L, alpha=a, word=w) for L, a, w in self.min_alpha_by_length],
            violator=self.violator, tolerances=self.tolerances, words_checked=self.words_checked,
            dedup=self.dedup, failures=self.failures, nonhyperbolic=self.nonhyperbolic,
            cross_check=self.cross_check, **self.extra))


def verify_counterexample(d, n, dedup=True, tol=TOL, cross_check_fraction=CROSS_CHECK_FRACTION, seed=0):
    """Exhaustively evaluate alpha on cyclically reduced words of length <= n.

    Passes iff every alpha exceeds the margin and alpha(g h^n) is below minus
    the margin; margin = tol * max(1, |v_g|, |v_h|).  A seeded random sample of
    the words is re-evaluated through the cyclic-sum formula.
    """
    margin = tol * max(1.0, float(np.linalg.norm(d.vg)), float(np.linalg.norm(d.vh)))
    pair = GeneratorPair(d.g, d.h)
    minima = {}
    table, failures, nonhyp = [], [], []
    words = list(enumerate_cyclically_reduced(n, dedup=dedup))
    for w in words:
        try:
            a = d.alpha(w)
        except NotHyperbolic:
            nonhyp.append(format_word(w))
            failures.append({"word": format_word(w), "reason": "not hyperbolic; alpha undefined"})
            continue
        table.append((format_word(w), len(w), a))
        cur = minima.get(len(w))
        if cur is None or a < cur[0]:
            minima[len(w)] = (a, format_word(w))
        if a <= margin:
            failures.append({"word": format_word(w), "alpha": a, "reason": "alpha not positive"})

    top = gh_power(n)
    try:
        a_top = d.alpha(top)
    except NotHyperbolic:
        a_top = math.nan
        failures.append({"word": format_word(top), "reason": "not hyperbolic; alpha undefined"})
    if not a_top < -margin:
        failures.append({"word": format_word(top), "alpha": a_top, "reason": "alpha(gamma eta^n) not negative"})

    rng = random.Random(seed)
    sample = [w for w in words if format_word(w) not in nonhyp]
    k = max(1, int(round(cross_check_fraction * len(sample)))) if sample else 0
    worst = 0.0
    for w in rng.sample(sample, k):
        a = d.alpha(w)
        b = alpha_sum(w, d.vg, d.vh, pair)
        rel = abs(a - b) / max(1.0, abs(a))
        worst = max(worst, rel)
    if worst > CROSS_CHECK_RTOL:
        failures.append({"reason": "alpha_sum disagrees with alpha_direct", "rel_err": worst})

    return Certificate(
        n=n, passed=not failures,
        min_alpha_by_length=[(L, minima[L][0], minima[L][1]) for L in sorted(minima)],
        violator={"word": format_word(top), "alpha": a_top},
        tolerances={"tol": tol, "margin": margin, "cross_check_rtol": CROSS_CHECK_RTOL},
        words_checked=len(words), dedup=dedup, failures=failures, nonhyperbolic=nonhyp,
        cross_check={"sampled": k, "max_rel_err": worst}, table=table)


def choose_vh(sys_, pair, tol=TOL):
    """Normalised sum of the extremes of C(U-_(h), A_h^+)."""
    cone = ConeSpec(*h_cone_intervals(sys_))
    v = cone.extremes.sum(axis=0)
    v = v / np.linalg.norm(v)
    cone_membership(v, cone, tol)
    return v


def choose_scale(v, vh, pair, n):
    """k with alpha(gamma eta^n) = -S, twice the break-even scale.

    alpha(gamma eta^n) = k <v, x0(g h^n)> + S with S = sum_k <v_h, x0(h^(n-k) g h^k)>.
    Returns (k, S, <v, x0(g h^n)>).  If S <= 0 any positive k already works
    and k = 1 is returned.
    """
    d = lorentz_dot(v, pair.xzero(gh_power(n)))
    if not d < 0:
        raise Infeasible(f"<v, x0(gh^{n})> = {d!r} is not negative")
    s = sum(lorentz_dot(vh, pair.xzero(power(H_, n - j) + (G_,) + power(H_, j))) for j in range(n))
    if s <= 0:
        return 1.0, s, d
    return SCALE_FACTOR * s / (-d), s, d


def _drumm_direction(pair):
    """Least-norm v with <v, x0(g)> = 1 and <v, x0(gh)> = -1."""
    a, b = pair.xzero((G_,)), pair.xzero((G_, H_))
    p, q = a * [1, 1, -1], b * [1, 1, -1]
    m = np.column_stack([p, q])
    gram = m.T @ m
    if abs(np.linalg.det(gram)) < 1e-12 * np.trace(gram) ** 2:
        raise Infeasible("x0(g) and x0(gh) are parallel")
    return m @ np.linalg.solve(gram, np.array([1.0, -1.0]))


def drumm_pair(g, h, sys_=None, tol=TOL):
    """Two-generator deformation with alpha(gamma), alpha(eta) > 0 > alpha(gamma eta)."""
    pair = GeneratorPair(g, h)
    v = _drumm_direction(pair)
    vh = choose_vh(sys_, pair, tol) if sys_ is not None else pair.xzero((H_,))
    k, s, dv = choose_scale(v, vh, pair, 1)
    d = Deformation(pair.g, pair.h, k * v, vh, {"n": 1, "v": v, "k": k, "S": s, "recipe": "drumm"})
    alphas = {"g": d.alpha((G_,)), "h": d.alpha((H_,)), "gh": d.alpha((G_, H_))}
    margin = tol * max(1.0, float(np.linalg.norm(d.vg)))
    passed = alphas["g"] > margin and alphas["h"] > margin and alphas["gh"] < -margin
    cert = Certificate(n=1, passed=passed,
                       min_alpha_by_length=[(1, min(alphas["g"], alphas["h"]),
                                             "g" if alphas["g"] <= alphas["h"] else "h")],
                       violator={"word": "gh", "alpha": alphas["gh"]},
                       tolerances={"tol": tol, "margin": margin}, words_checked=3,
                       extra={"alphas": alphas})
    if not passed:
        raise Infeasible(f"Drumm construction failed: {alphas}")
    return d, cert


@dataclass
class Preconditions:
    transversal: bool = False
    h_inverted: bool = False
    schottky: dict = None
    property_c: dict = None
    notes: list = field(default_factory=list)

    def as_dict(self):
        return _jsonable(self.__dict__)


def prepare(g, h, require_schottky=True, tol=TOL):
    """Transversality normalisation and a Schottky system (verified unless relaxed)."""
    pre = Preconditions()
    tr = is_transversal(g, h, tol)
    pre.transversal = tr.transversal
    if not tr.transversal:
        raise Infeasible(f"<g, h> is not transversal (axis planes meet in a {tr.causal} line)")
    pre.h_inverted = tr.inverted
    h = tr.h
    try:
        sys_ = build_schottky_system(g, h)
        rep = verify_schottky(sys_, g, h)
        pre.schottky = dict(rep.as_dict(), verified=rep.ok)
        if not rep.ok:
            raise NoSystemFound(rep.violation)
    except NoSystemFound as exc:
        if require_schottky:
            raise
        sys_ = candidate_system(g, h)
        pre.schottky = {"verified": False, "reason": str(exc), "min_gap": sys_.min_gap()}
        pre.notes.append("proceeding with an unverified arc system")
    return np.asarray(g, dtype=float), h, sys_, pre


def construct_counterexample(g, h, n, t=0.5, require_schottky=True, property_c_depth=None,
                             property_c_samples=64, tol=TOL, dedup=True):
    """Deformation positive on all words of length <= n with alpha(gamma eta^n) < 0.

    Preconditions (transversality, Schottky system, Property C to depth
    max(n, 6)) are checked first; ``require_schottky=False`` relaxes the
    Schottky and Property C gates into report entries.  Raises
    VerificationFailed, carrying the certificate, when the exhaustive check
    does not pass.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    g, h, sys_, pre = prepare(g, h, require_schottky, tol)
    pair = GeneratorPair(g, h)
    depth = property_c_depth or max(n, 6)
    pc = check_property_c(pair, depth, property_c_samples, sys_, tol)
    pre.property_c = pc.as_dict()
    if require_schottky:
        pc.raise_if_failed()

    vh = choose_vh(sys_, pair, tol)
    seed = seed_vector(sys_, pair, n, t, tol)
    k, s, dv = choose_scale(seed.vector, vh, pair, n)
    d = Deformation(g, h, k * seed.vector, vh, {
        "n": n, "seed": seed.vector, "seed_theta": seed.theta, "seed_t": t,
        "seed_margins": seed.margins, "k": k, "S": s, "v_dot_x0_ghn": dv,
        "vh_recipe": "normalised sum of extremes of C(U-_h, A_h^+)",
        "system": sys_.as_dict(),
    })
    cert = verify_counterexample(d, n, dedup=dedup, tol=tol)
    half = d.scaled(0.5).alpha(gh_power(n))
    cert.extra.update(preconditions=pre.as_dict(), k=k, S=s,
                      break_even={"alpha_at_half_k": half, "relative_to_S": abs(half) / s if s > 0 else None})
    if not cert.passed:
        exc = VerificationFailed(f"verification failed for n={n}: {cert.failures[:3]}", cert)
        exc.deformation = d
        raise exc
    return d, cert
