"""Figures of the circle of future lightlike rays.

The left panel shows the Schottky arcs, U-, U_n^+, the Property C arc and the
rays x+(g h^i) on the unit circle.  The rays x+(g h^i) accumulate at
g(x+(h)) geometrically, so the right panel plots A_g^+ against log angular
distance to that limit.  SVG
element ids (``gid``) are stable: ``arc-<name>``, ``ray-<label>``, ``seed``,
``wedge-C-Hn-<k>``.
"""
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Arc, Wedge  # noqa: E402

import numpy as np  # noqa: E402

from .cones import ConeSpec, build_U_intervals, half_space, property_c_arc  # noqa: E402
from .schottky import angle_of, ccw  # noqa: E402
from .words import G_, H_, power  # noqa: E402

ARC_STYLE = {
    "A_g^-": ("tab:blue", 1.00), "A_g^+": ("tab:blue", 1.00),
    "A_h^-": ("tab:orange", 1.00), "A_h^+": ("tab:orange", 1.00),
    "U^-": ("tab:green", 1.12), "U_n^+": ("tab:red", 1.18), "A": ("tab:purple", 1.24),
}


def ray_label(i):
    return "x+(g)" if i == 0 else "x+(gh)" if i == 1 else f"x+(gh^{i})"


def feasible_runs(thetas, mask):
    """Contiguous [start, end] angle runs where mask holds."""
    mask = np.asarray(mask, dtype=bool)
    edges = np.flatnonzero(np.diff(np.r_[False, mask, False].astype(int)))
    return [(thetas[a], thetas[b - 1]) for a, b in zip(edges[::2], edges[1::2])]


def _feasible(cone, hs, thetas):
    """Rays at ``thetas`` lying in C(U-, U_n^+) and in H_n."""
    vs = np.column_stack([np.cos(thetas), np.sin(thetas), np.ones_like(thetas)]) / math.sqrt(2.0)
    jn = hs.normal * [1.0, 1.0, -1.0]
    return (cone.margins_many(vs).min(axis=1) > 0) & (vs @ jn < 0)


def angle_rows(sys_, pair, n, seed_theta=None):
    """(label, theta, ccw offset from x+(A_g^+)) for every plotted ray."""
    ref = sys_.Agp.start
    uminus, uplus = build_U_intervals(sys_, pair, n)
    rows = []
    for name, arc in sys_.arcs().items():
        rows.append((f"x+({name})", arc.start))
        rows.append((f"x-({name})", arc.end))
    rows += [("x+(U^-)", uminus.start), ("x-(U^-)", uminus.end),
             ("x+(U_n^+)", uplus.start), ("x-(U_n^+)", uplus.end)]
    for i in range(n + 1):
        rows.append((ray_label(i), angle_of(pair.xplus((G_,) + power(H_, i)))))
    rows.append(("g(x+(h))", angle_of(pair.g @ pair.xplus((H_,)))))
    if seed_theta is not None:
        rows.append(("seed", seed_theta))
    return [(label, theta, ccw(ref, theta)) for label, theta in rows]


def plot_configuration(sys_, pair, n, path, seed_theta=None, grid=20000):
    uminus, uplus = build_U_intervals(sys_, pair, n)
    cone = ConeSpec(uminus, uplus)
    hs = half_space(pair, n)
    arcs = dict(sys_.arcs(), **{"U^-": uminus, "U_n^+": uplus, "A": property_c_arc(pair, sys_)})
    rays = [(ray_label(i), angle_of(pair.xplus((G_,) + power(H_, i)))) for i in range(n + 1)]

    plt.rcParams["svg.hashsalt"] = "margulis"
    fig, (ax, zx) = plt.subplots(1, 2, figsize=(12, 6), gridspec_kw={"width_ratios": [1, 1.3]})

    ax.set_aspect("equal")
    ax.add_patch(plt.Circle((0, 0), 1.0, fill=False, color="0.7", lw=0.8))
    for name, arc in arcs.items():
        color, r = ARC_STYLE[name]
        a0 = math.degrees(arc.start)
        p = Arc((0, 0), 2 * r, 2 * r, theta1=a0, theta2=a0 + math.degrees(arc.width),
                color=color, lw=4 if r == 1.0 else 2)
        p.set_gid(f"arc-{name}")
        ax.add_patch(p)
        m = arc.midpoint
        ax.text(1.38 * r * math.cos(m), 1.38 * r * math.sin(m), name, color=color,
                ha="center", va="center", fontsize=9)

    thetas = np.linspace(0.0, 2 * math.pi, grid, endpoint=False)
    mask = _feasible(cone, hs, thetas)
    for k, (t0, t1) in enumerate(feasible_runs(thetas, mask)):
        w = Wedge((0, 0), 0.95, math.degrees(t0), math.degrees(t1), color="tab:red", alpha=0.25)
        w.set_gid(f"wedge-C-Hn-{k}")
        ax.add_patch(w)
    for label, theta in rays:
        ln, = ax.plot([0.9 * math.cos(theta), 1.05 * math.cos(theta)],
                      [0.9 * math.sin(theta), 1.05 * math.sin(theta)], color="k", lw=0.8)
        ln.set_gid(f"ray-{label}")
    if seed_theta is not None:
        ln, = ax.plot([0, math.cos(seed_theta)], [0, math.sin(seed_theta)], color="tab:red", lw=1.2)
        ln.set_gid("seed")
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.axis("off")
    ax.set_title(f"future lightlike rays, n = {n}")

    # A_g^+ up to the limit ray g(x+(h)), on a log scale of angular distance to it
    agp = sys_.Agp
    lim = angle_of(pair.g @ pair.xplus((H_,)))
    span = ccw(agp.start, lim)
    ds = np.geomspace(1e-9 * span, span, 4000)
    zmask = _feasible(cone, hs, lim - ds)
    for k, (d0, d1) in enumerate(feasible_runs(ds, zmask)):
        zx.axvspan(d0, d1, color="tab:red", alpha=0.2, lw=0).set_gid(f"zoom-wedge-C-Hn-{k}")
    for y, name in ((1.0, "U_n^+"), (2.0, "A")):
        arc = arcs[name]
        d0 = max(ccw(arc.start, lim), ds[0])
        d1 = max(ccw(arc.end, lim) if ccw(arc.end, lim) < span else ds[0], ds[0])
        color, _ = ARC_STYLE[name]
        zx.plot([d0, d1], [y, y], color=color, lw=3, label=name)
    for label, theta in rays:
        d = ccw(theta, lim)
        if 0 < d <= span:
            zx.axvline(d, color="k", lw=0.6)
            zx.text(d, 2.6, label, rotation=90, fontsize=7, ha="right", va="top")
    if seed_theta is not None and 0 < ccw(seed_theta, lim) <= span:
        zx.axvline(ccw(seed_theta, lim), color="tab:red", lw=1.2, ls="--", label="seed")
    zx.set_xscale("log")
    zx.set_xlim(span, ds[0])
    zx.set_ylim(0.0, 2.8)
    zx.set_yticks([])
    zx.set_xlabel("angular distance to g(x+(h)) within A_g^+ (rad, log scale)")
    zx.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
    return path
