"""Figure rendering for CLI reports.

Every function writes one PNG next to the delimited output and closes the
figure; rendering is headless (Agg).  Figures are a convenience view of
the same numbers the CSV/JSON files carry.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg", force=True)

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "save_points_plot",
    "save_spectra_plot",
    "save_tensor_plot",
    "save_growth_plot",
    "save_iteration_plot",
    "save_descent_plot",
    "save_spath_plot",
    "save_lift_plot",
    "save_orbit_plot",
    "save_embedding_plot",
]


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=140)
    plt.close(fig)


def save_points_plot(path, points, centre=None, rho=None) -> bool:
    """2d scatter with the centre and enclosing circle; skipped above 2d."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        return False
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(pts[:, 0], pts[:, 1], s=18, color="tab:blue", label="points")
    if centre is not None:
        c = np.asarray(centre, dtype=float)
        ax.scatter([c[0]], [c[1]], s=60, marker="x", color="tab:red", label="centre")
        if rho is not None:
            th = np.linspace(0.0, 2.0 * np.pi, 256)
            ax.plot(c[0] + rho * np.cos(th), c[1] + rho * np.sin(th), color="tab:red", lw=0.8)
    ax.set_aspect("equal")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("point set and minimax centre")
    _finish(fig, path)
    return True


def save_spectra_plot(path, reports) -> bool:
    if not reports:
        return False
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    for i, r in enumerate(reports):
        ax1.plot(np.full(r.eigenvalues.size, i), r.eigenvalues, ".", ms=3, color="tab:blue")
    ax1.axhline(1.0, color="gray", lw=0.6)
    ax1.axhline(-1.0, color="gray", lw=0.6)
    ax1.set_xticks(range(len(reports)))
    ax1.set_xticklabels([r.group for r in reports], rotation=45, ha="right", fontsize=7)
    ax1.set_ylabel("averaging spectrum")
    gaps = [r.h_gap if np.isfinite(r.h_gap) else 2.0 for r in reports]
    ax2.bar(range(len(reports)), gaps, color="tab:orange")
    ax2.set_xticks(range(len(reports)))
    ax2.set_xticklabels([r.group for r in reports], rotation=45, ha="right", fontsize=7)
    ax2.set_ylabel("two-sided gap h")
    _finish(fig, path)
    return True


def save_tensor_plot(path, result) -> bool:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    s = result.product_spectrum
    ax.plot(s, np.zeros_like(s), "|", ms=18, color="tab:blue")
    if np.isfinite(result.eps) and result.eps > 0:
        ax.axvspan(result.eps - 1.0, 1.0 - result.eps, color="tab:green", alpha=0.15)
    ax.axvline(1.0, color="gray", lw=0.8)
    ax.set_yticks([])
    ax.set_xlabel("product averaging spectrum")
    ax.set_title(f"eps = {result.eps:.4g}, contained = {result.contained}")
    _finish(fig, path)
    return True


def save_growth_plot(path, table) -> bool:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(table.lengths, table.norms, "o-", color="tab:blue")
    ax.axhline(1.0, color="gray", lw=0.8, label="unit bound on generators")
    ax.axvline(table.window_limit, color="tab:red", lw=0.8, label="strictness window edge")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("word length m")
    ax.set_ylabel("|b(g_m)|")
    ax.legend(fontsize=8)
    _finish(fig, path)
    return True


def save_iteration_plot(path, trace) -> bool:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(trace.ks, np.maximum(trace.step_norms, 1e-300), label="step |v_{k+1}-v_k|")
    ax.semilogy(trace.ks, trace.step_bounds, "--", label="bound 4/(h k^2)")
    ax.semilogy(trace.ks, np.maximum(trace.sup_displacements, 1e-300), ":", label="sup |s v - v|")
    ax.set_xlabel("k")
    ax.legend(fontsize=8)
    _finish(fig, path)
    return True


def save_descent_plot(path, trace) -> bool:
    trace = list(trace)
    if not trace:
        return False
    ns = [row[0] for row in trace]
    ds = [max(row[1], 1e-300) for row in trace]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ns, ds, "o-", ms=3)
    ax.set_xlabel("iteration")
    ax.set_ylabel("displacement d(x_n)")
    _finish(fig, path)
    return True


def save_spath_plot(path, s_path) -> bool:
    s = np.asarray(s_path, dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(range(s.size), s, "o-")
    ax.set_xlabel("projected-out directions")
    ax.set_ylabel("remaining radius s")
    _finish(fig, path)
    return True


def save_lift_plot(path, lifts, labels) -> bool:
    fig, ax = plt.subplots(figsize=(5, 5))
    for f, lab in zip(lifts, labels):
        xs = [float(x) for x in f.breakpoints] + [1.0]
        ys = [float(v) for v in f.values] + [float(f.values[0]) + 1.0]
        ax.plot(xs, ys, "o-", ms=3, label=lab)
    ax.plot([0, 1], [0, 1], "--", color="gray", lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("f(x)")
    ax.legend(fontsize=8)
    _finish(fig, path)
    return True


def save_orbit_plot(path, displacements) -> bool:
    ys = [float(v) for v in displacements]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(range(1, len(ys) + 1), ys, ".-", ms=3)
    ax.set_xlabel("n")
    ax.set_ylabel("w^n(0)")
    _finish(fig, path)
    return True


def save_embedding_plot(path, gram_eigenvalues) -> bool:
    lam = np.sort(np.asarray(gram_eigenvalues, dtype=float))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(np.maximum(lam[::-1], 1e-300), "o", ms=3)
    ax.set_xlabel("index")
    ax.set_ylabel("Gram eigenvalue")
    _finish(fig, path)
    return True
