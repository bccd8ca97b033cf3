"""Stratum labelling of the parameter plane and plot-ready export.

Writes the labelled grid as CSV (exact rational coordinates), the boundary
strata of the compactified family as a second CSV, and renders a figure of
the plane with the real branch of the discriminant curve to PNG and SVG.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction

from .numberfield import zeta_field
from .singular import discriminant_curve, singular_points, classify
from .poly import f_ab


def _is_a2_orbit_point(a, b):
    """(a, b) in {(1,1), (w,w), (w^2,w^2)} for rational inputs: only (1,1)."""
    return a == 1 and b == 1


def label_point(a, b, with_counts=True):
    flags = discriminant_curve(a, b)
    row = {
        "a": a, "b": b,
        "on_curve_0": flags[0], "on_curve_1": flags[1],
        "on_curve_2": flags[2],
    }
    if _is_a2_orbit_point(a, b):
        row["label"] = "A2-orbit"
    elif any(flags):
        row["label"] = "curve-" + "".join(str(j) for j, f
                                          in enumerate(flags) if f)
    else:
        row["label"] = "smooth"
    if with_counts and any(flags):
        pts = singular_points(a, b)
        row["n_singular"] = len(pts)
        F = f_ab(a, b)
        row["classes"] = sorted({classify(F, p).tag for p in pts})
    else:
        row["n_singular"] = 0 if not any(flags) else None
        row["classes"] = []
    return row


def grid_rows(a0, a1, b0, b1, step):
    a0, a1, b0, b1 = (Fraction(x) for x in (a0, a1, b0, b1))
    step = Fraction(step)
    assert step > 0
    rows = []
    a = a0
    while a <= a1:
        b = b0
        while b <= b1:
            rows.append(label_point(a, b))
            b += step
        a += step
    return rows


def boundary_rows():
    """The strata added by the compactification:  the curve of cubics with
    degenerate singular structure [1, 0, t, -1] (modulo t ~ -t) and the
    single point [0, 0, 1, 1]."""
    rows = [
        {"stratum": "ADE-curve",
         "description": "singular members with isolated nodal/cuspidal "
                        "points; image of the discriminant curve"},
        {"stratum": "boundary-curve",
         "description": "coefficient family [1, 0, t, -1], parameter "
                        "modulo sign"},
        {"stratum": "boundary-point",
         "description": "the single coefficient point [0, 0, 1, 1]"},
    ]
    return rows


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else \
        f"{x.numerator}/{x.denominator}"


def export_moduli_plane(a0, a1, b0, b1, step, outdir, basename="plane"):
    """Write <basename>.csv, <basename>_boundary.csv, and figures.

    Returns the dict of written paths.
    """
    os.makedirs(outdir, exist_ok=True)
    rows = grid_rows(a0, a1, b0, b1, step)
    csv_path = os.path.join(outdir, f"{basename}.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["a", "b", "label", "on_curve_0", "on_curve_1",
                    "on_curve_2", "n_singular", "classes"])
        for r in rows:
            w.writerow([_frac_str(r["a"]), _frac_str(r["b"]), r["label"],
                        int(r["on_curve_0"]), int(r["on_curve_1"]),
                        int(r["on_curve_2"]),
                        "" if r["n_singular"] is None else r["n_singular"],
                        "+".join(r["classes"])])
    bpath = os.path.join(outdir, f"{basename}_boundary.csv")
    with open(bpath, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["stratum", "description"])
        for r in boundary_rows():
            w.writerow([r["stratum"], r["description"]])
    figs = render_plane_figure(rows, (a0, a1, b0, b1), outdir, basename)
    return {"csv": csv_path, "boundary_csv": bpath, **figs}


def render_plane_figure(rows, extent, outdir, basename="plane"):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    a0, a1, b0, b1 = (float(Fraction(x)) for x in extent)
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    colors = {"smooth": "#b0c4de", "A2-orbit": "#d62728"}
    xs, ys, cs, sizes = [], [], [], []
    for r in rows:
        xs.append(float(r["a"]))
        ys.append(float(r["b"]))
        lab = r["label"]
        if lab.startswith("curve"):
            cs.append("#ff7f0e")
            sizes.append(36)
        else:
            cs.append(colors.get(lab, "#777777"))
            sizes.append(30 if lab != "smooth" else 9)
    ax.scatter(xs, ys, c=cs, s=sizes, zorder=3)
    # real branch of the curve, drawn through its rational parametrization
    ts, pa, pb = [], [], []
    n = 4000
    for i in range(1, n):
        t = -4.0 + 8.0 * i / n
        if abs(t) < 1e-3:
            pa.append(None)
            continue
        a = -2 * t - t * t
        b = -2.0 / t - 1.0 / (t * t)
        pa.append((a, b))
    seg_x, seg_y = [], []
    for p in pa:
        if p is None or not (a0 - 1 <= p[0] <= a1 + 1) \
                or not (b0 - 1 <= p[1] <= b1 + 1):
            if seg_x:
                ax.plot(seg_x, seg_y, color="#2ca02c", lw=1.2, zorder=2)
                seg_x, seg_y = [], []
            continue
        seg_x.append(p[0])
        seg_y.append(p[1])
    if seg_x:
        ax.plot(seg_x, seg_y, color="#2ca02c", lw=1.2, zorder=2,
                label="discriminant curve (real branch)")
    ax.scatter([1], [1], marker="*", s=160, c="#d62728", zorder=4,
               label="cuspidal member (1,1)")
    ax.set_xlim(a0 - 0.5, a1 + 0.5)
    ax.set_ylim(b0 - 0.5, b1 + 0.5)
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.set_title("parameter plane of the order-7 family")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    png = os.path.join(outdir, f"{basename}.png")
    svg = os.path.join(outdir, f"{basename}.svg")
    fig.savefig(png, dpi=150)
    fig.savefig(svg)
    plt.close(fig)
    return {"png": png, "svg": svg}
