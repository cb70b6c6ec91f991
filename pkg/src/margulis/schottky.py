"""Conical intervals on the circle of future lightlike rays, Schottky systems,
transversality and the ordering lemmas for attracting eigenvectors.

A future lightlike ray is recorded by the angle theta of its point
(cos theta, sin theta, 1).  Counterclockwise order on that circle is the
positive-orientation order: det[x y z] > 0 iff x, y, z occur counterclockwise.
A ConicalInterval is the closed counterclockwise arc from ``start`` to ``end``;
in the boundary convention <x, x-(U) x x+(U)> > 0 on U this makes
x+(U) the start ray and x-(U) the end ray.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import Indeterminate, MargulisError, NoSystemFound, NotHyperbolic
from .isometry import lorentz_inverse, spectral_data
from .lorentz import TOL, CausalClass, classify, det3, lorentz_cross
from .words import (G_, GI, H_, HI, GeneratorPair, enumerate_cyclically_reduced,
                    format_word, power)

TAU = 2.0 * math.pi
ANGLE_TOL = 1e-9
SCHOTTKY_MARGIN = 1e-3
SAMPLES_PER_ARC = 256


def wrap(theta):
    t = math.fmod(theta, TAU)
    return t + TAU if t < 0 else t


def ccw(a, b):
    """Counterclockwise angular distance from a to b, in [0, 2pi)."""
    return wrap(b - a)


def angle_of(x):
    if x[2] <= 0:
        raise MargulisError(f"{x} is not future-pointing")
    return wrap(math.atan2(x[1], x[0]))


def ray_vector(theta):
    """Euclidean-unit future lightlike vector of the ray at angle theta."""
    return np.array([math.cos(theta), math.sin(theta), 1.0]) / math.sqrt(2.0)


def map_ray(g, theta):
    return angle_of(np.asarray(g) @ ray_vector(theta))


@dataclass(frozen=True)
class ConicalInterval:
    start: float
    end: float

    def __post_init__(self):
        object.__setattr__(self, "start", wrap(self.start))
        object.__setattr__(self, "end", wrap(self.end))
        if self.width <= ANGLE_TOL or self.width >= TAU - ANGLE_TOL:
            raise MargulisError("conical interval must be proper and non-trivial")

    @property
    def width(self):
        return ccw(self.start, self.end)

    @property
    def xplus(self):
        return ray_vector(self.start)

    @property
    def xminus(self):
        return ray_vector(self.end)

    def at(self, t):
        """Ray at fraction t of the way from start to end."""
        return wrap(self.start + t * self.width)

    @property
    def midpoint(self):
        return self.at(0.5)

    def depth(self, theta):
        """Signed angular distance of theta inside the arc (negative outside)."""
        d = ccw(self.start, theta)
        if d <= self.width:
            return min(d, self.width - d)
        return -min(d - self.width, TAU - d)

    def contains(self, theta, tol=ANGLE_TOL):
        return self.depth(theta) >= -tol

    def contains_vector(self, x, tol=ANGLE_TOL):
        return self.contains(angle_of(x), tol)

    def complement(self):
        return ConicalInterval(self.end, self.start)

    def samples(self, n):
        if n <= 0:
            return []
        if n == 1:
            return [self.midpoint]
        return [self.at(k / (n - 1)) for k in range(n)]

    def contains_interval(self, other, tol=ANGLE_TOL):
        return self.contains(other.start, tol) and ccw(self.start, other.start) + other.width <= self.width + tol

    def as_dict(self):
        return {"start": self.start, "end": self.end, "width": self.width}


def gap(p, q):
    """Smallest angular gap between disjoint arcs p and q; negative if they meet."""
    d1 = ccw(p.end, q.start)
    d2 = ccw(q.end, p.start)
    if d1 + q.width + d2 + p.width > TAU + 1e-12:
        return -1.0
    return min(d1, d2)


def image_interval(g, u):
    return ConicalInterval(map_ray(g, u.start), map_ray(g, u.end))


def smallest_containing(arcs):
    """Smallest closed arc containing all of the pairwise disjoint ``arcs``."""
    arcs = sorted(arcs, key=lambda a: a.start)
    best, best_i = -1.0, 0
    for i, a in enumerate(arcs):
        b = arcs[(i + 1) % len(arcs)]
        d = ccw(a.end, b.start)
        if len(arcs) == 1:
            d = TAU - a.width
        if d > best:
            best, best_i = d, i
    return ConicalInterval(arcs[(best_i + 1) % len(arcs)].start, arcs[best_i].end)


@dataclass(frozen=True)
class SchottkySystem:
    Agm: ConicalInterval
    Agp: ConicalInterval
    Ahm: ConicalInterval
    Ahp: ConicalInterval

    def arcs(self):
        return {"A_g^-": self.Agm, "A_g^+": self.Agp, "A_h^-": self.Ahm, "A_h^+": self.Ahp}

    def letter_arc(self, a):
        """The arc holding x+ of every cyclically reduced word with terminal letter a."""
        return {G_: self.Agp, GI: self.Agm, H_: self.Ahp, HI: self.Ahm}[a]

    def min_gap(self):
        arcs = list(self.arcs().values())
        return min(gap(p, q) for i, p in enumerate(arcs) for q in arcs[i + 1:])

    def as_dict(self):
        return {k: v.as_dict() for k, v in self.arcs().items()}


def _balanced_arcs(m):
    """A^- centred at x-(m) with A^+ the closed complement of m(A^-), sized equally."""
    data = spectral_data(m)
    c = angle_of(data.xminus)

    def plus(r):
        a = map_ray(m, c - r)
        b = map_ray(m, c + r)
        return ConicalInterval(b, a)

    lo, hi = 1e-9, math.pi - 1e-9
    for _ in range(200):
        r = 0.5 * (lo + hi)
        if plus(r).width > 2.0 * r:
            lo = r
        else:
            hi = r
        if hi - lo < 1e-15:
            break
    r = 0.5 * (lo + hi)
    return ConicalInterval(c - r, c + r), plus(r)


def candidate_system(g, h):
    """Balanced arcs for g and h with no disjointness guarantee."""
    agm, agp = _balanced_arcs(g)
    ahm, ahp = _balanced_arcs(h)
    return SchottkySystem(agm, agp, ahm, ahp)


def build_schottky_system(g, h, margin=SCHOTTKY_MARGIN):
    """Schottky system for <g, h>, or NoSystemFound.

    For each generator the radius of A^- about x-(.) is bisected until A^- and
    A^+ = cl(F - m(A^-)) have equal width; the four arcs must then be pairwise
    disjoint with at least ``margin`` radians to spare.
    """
    try:
        sys_ = candidate_system(g, h)
    except (NotHyperbolic, MargulisError) as exc:
        raise NoSystemFound(str(exc)) from exc
    mg = sys_.min_gap()
    if mg < margin:
        raise NoSystemFound(f"balanced arcs are not disjoint with margin {margin} (min gap {mg:.4g})")
    return sys_


@dataclass
class SchottkyReport:
    ok: bool
    min_gap: float
    min_inclusion_depth: float = math.inf
    violation: str = ""
    samples: int = 0

    def as_dict(self):
        return dict(ok=self.ok, min_gap=self.min_gap, min_inclusion_depth=self.min_inclusion_depth,
                    violation=self.violation, samples=self.samples)


def verify_schottky(sys_, g, h, n_samples=SAMPLES_PER_ARC, tol=ANGLE_TOL, margin=0.0):
    """Disjointness plus ping-pong inclusions checked on sampled rays."""
    arcs = sys_.arcs()
    names = list(arcs)
    mg = math.inf
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            d = gap(arcs[p], arcs[q])
            mg = min(mg, d)
            if d <= margin:
                return SchottkyReport(False, mg, violation=f"{p} and {q} are not disjoint (gap {d:.4g})")
    report = SchottkyReport(True, mg, samples=n_samples)
    if n_samples <= 0:
        return report
    gi, hi = lorentz_inverse(np.asarray(g)), lorentz_inverse(np.asarray(h))
    checks = [("g", g, sys_.Agm, sys_.Agp), ("g^-1", gi, sys_.Agp, sys_.Agm),
              ("h", h, sys_.Ahm, sys_.Ahp), ("h^-1", hi, sys_.Ahp, sys_.Ahm)]
    for name, m, away, target in checks:
        for theta in away.complement().samples(n_samples):
            d = target.depth(map_ray(m, theta))
            report.min_inclusion_depth = min(report.min_inclusion_depth, d)
            if d < -tol:
                report.ok = False
                report.violation = (f"{name} maps ray {theta:.6f} outside its target arc "
                                    f"(depth {d:.3e})")
                return report
    return report


@dataclass
class TransversalityReport:
    transversal: bool
    causal: str
    cross: np.ndarray
    h: np.ndarray = None
    inverted: bool = False


def is_transversal(g, h, tol=TOL):
    """Do x0(g)-perp and x0(h)-perp meet in a timelike line?

    When they do, also returns h or h^-1, chosen so that x-(g), x-(h), x+(g)
    are positively oriented.
    """
    dg, dh = spectral_data(g), spectral_data(h)
    c = lorentz_cross(dg.xzero, dh.xzero)
    if float(c @ c) <= tol * tol:
        return TransversalityReport(False, CausalClass.ZERO.value, c)
    cls = classify(c, tol)
    if cls is CausalClass.LIGHTLIKE:
        raise Indeterminate("axis planes meet in a (nearly) lightlike line")
    if cls is not CausalClass.TIMELIKE:
        return TransversalityReport(False, cls.value, c)
    d = det3(dg.xminus, dh.xminus, dg.xplus)
    if abs(d) <= tol:
        raise Indeterminate("x-(h) is too close to x+-(g) to orient")
    if d > 0:
        return TransversalityReport(True, cls.value, c, np.asarray(h, dtype=float), False)
    return TransversalityReport(True, cls.value, c, lorentz_inverse(np.asarray(h, dtype=float)), True)


def _po_pairs(x, ys, zs):
    """det[x y z] for every y in ys, z in zs (rows)."""
    if len(ys) == 0 or len(zs) == 0:
        return np.empty((0, 0))
    ys, zs = np.asarray(ys), np.asarray(zs)
    return np.cross(ys[:, None, :], zs[None, :, :]) @ x


@dataclass
class OrderingReport:
    ok: bool = True
    checked: int = 0
    min_margin: float = math.inf
    violation: str = ""
    nonhyperbolic: list = field(default_factory=list)
    items: dict = field(default_factory=dict)

    def _record(self, label, dets, describe, tol):
        if dets.size == 0:
            return
        self.checked += dets.size
        k = int(np.argmin(dets))
        m = float(dets.flat[k])
        self.min_margin = min(self.min_margin, m)
        item = self.items.setdefault(label, {"checked": 0, "min_margin": math.inf})
        item["checked"] += int(dets.size)
        item["min_margin"] = min(item["min_margin"], m)
        if m <= tol and self.ok:
            self.ok = False
            self.violation = f"{label}: {describe(np.unravel_index(k, dets.shape))} has det {m:.3e}"

    def as_dict(self):
        return dict(ok=self.ok, checked=self.checked, min_margin=self.min_margin,
                    violation=self.violation, nonhyperbolic=self.nonhyperbolic, items=self.items)


def _xplus_table(pair, words, report):
    out = []
    for w in words:
        try:
            out.append((w, pair.xplus(w)))
        except NotHyperbolic:
            report.nonhyperbolic.append(format_word(w))
    return out


def check_ordering_lemmas(g, h, sys_, max_len, tol=TOL, corollary_prefix=1):
    """Sweep the eigenvector-ordering lemmas over cyclically reduced words up to max_len.

    Item 1: gh^-1 w1 < g^2 w2 < g h w3 counterclockwise from x+ = x+(A_g^+).
    Item 2: g h^i g w < g h^(n+1) for i <= n, n = max_len.
    Item 3: g h^i < g h^(i+j) for j > 0.
    Also the letter-prefix ordering lemma and its corollary (prefixes of
    length <= ``corollary_prefix``), compared as an equivalence of signs.
    """
    pair = GeneratorPair(g, h)
    report = OrderingReport()
    xp = sys_.Agp.xplus
    words = list(enumerate_cyclically_reduced(max_len))
    table = dict(_xplus_table(pair, words, report))
    if report.nonhyperbolic:
        report.ok = False
        report.violation = f"non-hyperbolic words: {', '.join(report.nonhyperbolic[:5])}"

    def cls(prefix):
        return [(w, table[w]) for w in words if w[:len(prefix)] == prefix and w in table]

    # item 1
    groups = [cls((G_, HI)), cls((G_, G_)), cls((G_, H_))]
    for a in range(3):
        for b in range(a + 1, 3):
            ya, yb = groups[a], groups[b]
            dets = _po_pairs(xp, [y for _, y in ya], [y for _, y in yb])
            report._record("item1", dets, lambda ij, ya=ya, yb=yb:
                           f"PO(x+, x+({format_word(ya[ij[0]][0])}), x+({format_word(yb[ij[1]][0])}))", tol)

    # item 2
    n = max_len
    top = (G_,) + power(H_, n + 1)
    z = pair.xplus(top)
    for i in range(0, n + 1):
        ys = cls((G_,) + power(H_, i) + (G_,))
        dets = _po_pairs(xp, [y for _, y in ys], [z])
        report._record("item2", dets, lambda ij, ys=ys:
                       f"PO(x+, x+({format_word(ys[ij[0]][0])}), x+({format_word(top)}))", tol)

    # item 3
    ghs = [(G_,) + power(H_, i) for i in range(max_len)]
    ys = [pair.xplus(w) for w in ghs]
    for i in range(len(ghs)):
        for j in range(i + 1, len(ghs)):
            d = np.array([[det3(xp, ys[i], ys[j])]])
            report._record("item3", d, lambda ij, i=i, j=j:
                           f"PO(x+, x+({format_word(ghs[i])}), x+({format_word(ghs[j])}))", tol)

    _check_letter_order(pair, sys_, words, table, report, tol, corollary_prefix)
    return report


def _letter_x(pair, a, which):
    d = pair.spectral((a,))
    return d.xplus if which == "+" else d.xminus


def _check_letter_order(pair, sys_, words, table, report, tol, prefix_len):
    """PO(x+(A), x+(a b1 w1), x+(a b2 w2)) <=> PO(x-(a), x+(b1), x+(b2)), and the
    same with a common prefix p in front (A then the arc of p's terminal letter)."""
    letters = (G_, GI, H_, HI)
    prefixes = [()]
    frontier = [()]
    for _ in range(prefix_len):
        frontier = [p + (c,) for p in frontier for c in letters if not p or p[-1] != c ^ 1]
        prefixes += frontier
    wordset = set(table)
    for p in prefixes:
        for a in letters:
            if p and p[-1] == a ^ 1:
                continue
            ref = sys_.letter_arc(p[0] if p else a).xplus
            xa = _letter_x(pair, a, "-")
            label = "lemma-order" if not p else "corollary"
            for b1 in letters:
                for b2 in letters:
                    if b1 == b2 or a ^ 1 in (b1, b2):
                        continue
                    rhs = det3(xa, _letter_x(pair, b1, "+"), _letter_x(pair, b2, "+"))
                    if abs(rhs) <= tol:
                        continue
                    core1 = [w for w in words if len(w) > len(p) + 2 and w[:len(p) + 2] == p + (a, b1)]
                    core2 = [w for w in words if len(w) > len(p) + 2 and w[:len(p) + 2] == p + (a, b2)]
                    ys = [table[w] for w in core1 if w in wordset]
                    zs = [table[w] for w in core2 if w in wordset]
                    dets = _po_pairs(ref, ys, zs) * np.sign(rhs)
                    report._record(label, dets, lambda ij, core1=core1, core2=core2, a=a, b1=b1, b2=b2, p=p:
                                   f"prefix {format_word(p)}, {format_word((a,))}{format_word((b1,))} vs "
                                   f"{format_word((a,))}{format_word((b2,))}", tol)


def brouwer_check(g, h, sys_, max_len, tol=ANGLE_TOL):
    """x+(w) in the arc of w's terminal letter and x-(w) in the arc of its
    initial letter's inverse, for every cyclically reduced w up to max_len.
    Returns (ok, min_depth, first_failure)."""
    pair = GeneratorPair(g, h)
    worst, fail = math.inf, ""
    for w in enumerate_cyclically_reduced(max_len):
        try:
            d = pair.spectral(w)
        except NotHyperbolic:
            return False, -math.inf, f"{format_word(w)} is not hyperbolic"
        dp = sys_.letter_arc(w[0]).depth(angle_of(d.xplus))
        dm = sys_.letter_arc(w[-1] ^ 1).depth(angle_of(d.xminus))
        m = min(dp, dm)
        if m < worst:
            worst = m
        if m < -tol and not fail:
            fail = f"{format_word(w)}: eigenvector outside predicted arc (depth {m:.3e})"
    return not fail, worst, fail
