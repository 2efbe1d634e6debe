"""Command line front end.

Subcommands drive the library modules and write a deterministic
report.json (manifest + results) into --out, together with CSV tables and
PNG figures for the same numbers.  Identical invocations produce
byte-identical JSON reports; all randomness flows from --seed.

Exit codes: 0 success, 1 invariant or certificate failure, 2 input error,
3 resource cap.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import actions as act
from . import bounded_product as bp
from . import centres, homeo, io, plots, spectral
from .config import DEFAULT_TOL, MAX_GROUP_ORDER
from .errors import (
    CoarseFPError,
    InputError,
    InvariantViolation,
    ResourceLimitError,
)
from .groups import make_cyclic, parse_family_spec, parse_group_spec, validate_group
from .spaces import hilbert, lp

__all__ = ["main", "build_parser"]


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit(args, inputs, tolerances, results) -> None:
    payload = {
        "manifest": {
            "subcommand": args.subcommand,
            "inputs": list(inputs),
            "seed": int(args.seed),
            "tolerances": tolerances,
            "output": str(args.out),
        },
        "results": results,
    }
    io.write_report(_outdir(args) / "report.json", payload)


def _space_for(args, dim):
    if getattr(args, "lp", None) is not None:
        return lp(args.lp, dim)
    return hilbert(dim)


def _space_dict(space):
    return {"kind": space.kind, "dim": space.dim, "p": space.p}


def _check_cap(args, groups) -> None:
    for G in groups:
        if G.order > args.cap:
            raise ResourceLimitError(
                f"group {G.name or '?'} has order {G.order} above the cap {args.cap}"
            )


# ---------------------------------------------------------------- centres


def cmd_centres_solve(args) -> None:
    pts = io.load_points(args.points)
    space = _space_for(args, pts.shape[1])
    A = centres.BoundedSet(space, pts)
    sol = centres.solve_centre(A, tol=args.tol)
    out = _outdir(args)
    if not args.no_plot:
        plots.save_points_plot(out / "points.png", pts, sol.centre, sol.rho)
    _emit(
        args,
        [str(args.points)],
        {"tol": args.tol},
        {
            "space": _space_dict(space),
            "points": pts.shape[0],
            "centre": sol.centre,
            "rho": sol.rho,
            "iterations": sol.iterations,
            "residual": sol.residual,
        },
    )


def cmd_centres_nested(args) -> None:
    big = io.load_points(args.outer)
    small = io.load_points(args.inner)
    if big.shape[1] != small.shape[1]:
        raise InputError("the two point sets live in different dimensions")
    space = _space_for(args, big.shape[1])
    A = centres.BoundedSet(space, big)
    B = centres.BoundedSet(space, small)
    ca, ra = centres.chebyshev_centre(A, tol=args.tol)
    cb, rb = centres.chebyshev_centre(B, tol=args.tol)
    results = {
        "space": _space_dict(space),
        "rho_outer": ra,
        "rho_inner": rb,
        "centre_distance": float(np.linalg.norm(np.asarray(ca) - np.asarray(cb))),
    }
    if space.kind == "hilbert":
        ok = centres.hilbert_nested_bound_check(A, B)
        results["hilbert_bound"] = math.sqrt(max(ra * ra - rb * rb, 0.0))
        results["hilbert_bound_holds"] = ok
        if not ok:
            raise InvariantViolation("nested-centre bound violated")
    if args.eps is not None:
        ok = centres.stability_bound_check(A, B, args.eps)
        results["stability_eps"] = args.eps
        results["stability_bound_holds"] = ok
        if not ok:
            raise InvariantViolation("stability bound violated")
    out = _outdir(args)
    if not args.no_plot:
        plots.save_points_plot(out / "outer.png", big, ca, ra)
        plots.save_points_plot(out / "inner.png", small, cb, rb)
    _emit(args, [str(args.outer), str(args.inner)], {"tol": args.tol}, results)


def cmd_centres_mean(args) -> None:
    pts = io.load_points(args.points)
    space = _space_for(args, pts.shape[1])
    mu = centres.WeightedSet(space, pts, np.ones(pts.shape[0]))
    per_depth = []
    for depth in range(args.depth + 1):
        c = centres.mean_centre(mu, depth)
        per_depth.append({"depth": depth, "centre": c})
    io.write_csv(
        _outdir(args) / "mean_centres.csv",
        ["depth"] + [f"x{i}" for i in range(pts.shape[1])],
        [[row["depth"], *np.asarray(row["centre"])] for row in per_depth],
    )
    _emit(
        args,
        [str(args.points)],
        {"tol": args.tol},
        {"space": _space_dict(space), "depths": per_depth},
    )


def cmd_centres_shopping(args) -> None:
    pts = io.load_points(args.points)
    space = hilbert(pts.shape[1])
    L = centres.BoundedSet(space, pts)
    cfg = centres.ShoppingConfig(subspace_budget=args.budget)
    res = centres.shopping_centre(L, cfg)
    out = _outdir(args)
    io.write_csv(out / "s_path.csv", ["directions", "s"], list(enumerate(res.s_path)))
    if not args.no_plot:
        plots.save_spath_plot(out / "s_path.png", res.s_path)
    _emit(
        args,
        [str(args.points)],
        {"tol": cfg.tol},
        {
            "space": _space_dict(space),
            "budget": args.budget,
            "s_hat": res.s_hat,
            "eps": res.eps,
            "centre": res.centre,
            "centre_norm": float(np.linalg.norm(res.centre)),
            "hull_residual": res.hull_residual,
            "s_path": list(res.s_path),
        },
    )


def cmd_centres_demo(args) -> None:
    rep = centres.compactness_demo(args.dim, budget=args.budget)
    out = _outdir(args)
    io.write_csv(
        out / "centres.csv",
        ["index"] + [f"x{i}" for i in range(args.dim)],
        [[i, *c] for i, c in enumerate(rep.centres)],
    )
    if not args.no_plot:
        plots.save_spath_plot(out / "shopping_norms.png", rep.shopping_norms)
    _emit(
        args,
        [f"dim:{args.dim}"],
        {"tol": args.tol},
        {
            "dim": rep.dim,
            "isometries": len(rep.centres),
            "pairwise_min": rep.pairwise_min,
            "pairwise_max": rep.pairwise_max,
            "shopping_norms": list(rep.shopping_norms),
            "s_hats": list(rep.s_hats),
            "degenerate": rep.degenerate,
        },
    )


# ---------------------------------------------------------------- spectra


def _safe_name(name: str) -> str:
    return name.replace(":", "-").replace(",", "_").replace("(", "").replace(")", "")


def cmd_spectra_report(args) -> None:
    fam, groups = parse_family_spec(args.family)
    _check_cap(args, groups)
    for G in groups:
        validate_group(G, require_generates=G.generates)
    reports = [spectral.spectral_report(G) for G in groups]
    verdict = spectral.expander_check(fam, groups, args.threshold)
    out = _outdir(args)
    for r in reports:
        io.write_csv(
            out / f"spectrum_{_safe_name(r.group)}.csv",
            ["eigenvalue"],
            [[v] for v in r.eigenvalues],
        )
    io.write_csv(
        out / "summary.csv",
        ["group", "order", "degree", "h_gap", "gamma", "kazhdan_lower"],
        [[r.group, r.order, r.degree, r.h_gap, r.gamma, r.kazhdan_lower] for r in reports],
    )
    if not args.no_plot:
        plots.save_spectra_plot(out / "spectra.png", reports)
    _emit(
        args,
        [args.family],
        {"threshold": args.threshold},
        {
            "members": [
                {
                    "group": r.group,
                    "order": r.order,
                    "degree": r.degree,
                    "h_gap": r.h_gap,
                    "gamma": r.gamma,
                    "kazhdan_lower": r.kazhdan_lower,
                }
                for r in reports
            ],
            "inf_gap": verdict.inf_gap,
            "threshold": verdict.threshold,
            "expander": verdict.verdict,
        },
    )


def cmd_spectra_tensor(args) -> None:
    G1 = parse_group_spec(args.left)
    G2 = parse_group_spec(args.right)
    _check_cap(args, [G1, G2])
    res = spectral.tensor_gap_check(G1, G2)
    out = _outdir(args)
    io.write_csv(
        out / "product_spectrum.csv", ["eigenvalue"], [[v] for v in res.product_spectrum]
    )
    if not args.no_plot:
        plots.save_tensor_plot(out / "tensor.png", res)
    _emit(
        args,
        [args.left, args.right],
        {"slack": 1e-9},
        {
            "eps": res.eps,
            "contained": res.contained,
            "degenerate": res.degenerate,
            "cross_checked": res.cross_checked,
            "spectrum_min": float(res.product_spectrum[0]),
            "spectrum_max": float(res.product_spectrum[-1]),
        },
    )
    if not res.contained:
        raise InvariantViolation("product spectrum escapes the stated interval")


# ---------------------------------------------------------------- product


def cmd_product_iterate(args) -> None:
    fam, groups = parse_family_spec(args.family)
    _check_cap(args, groups)
    P = bp.TruncatedProduct(tuple(groups[: args.level]))
    rep = bp.block_rep(P)
    h = bp.product_gap(P)
    if not (h > 0) or math.isinf(h):
        raise InputError("the truncated family has no positive finite gap")
    k0 = args.k0 if args.k0 is not None else math.ceil(2.0 / h - 1e-9)
    rng = np.random.default_rng(args.seed)
    base = np.ones(rep.dim) / math.sqrt(rep.dim)
    noise = rng.normal(size=rep.dim)
    noise -= rep.project(noise)
    nn = np.linalg.norm(noise)
    if nn > 0:
        noise /= nn
    amp = args.perturbation
    while True:
        v0 = base + amp * noise
        v0 /= np.linalg.norm(v0)
        if rep.sup_displacement(v0) <= 1.0 / k0:
            break
        amp /= 2.0
    trace = bp.almost_invariant_iteration(P, v0, k0, args.steps)
    for _ in range(args.probes):
        probe = rng.normal(size=rep.dim)
        if not bp.gap_projection_inequality_check(P, probe):
            raise InvariantViolation("gap-projection inequality failed on a probe")
    out = _outdir(args)
    io.write_csv(
        out / "iteration.csv",
        ["k", "step_norm", "step_bound", "sup_displacement"],
        zip(trace.ks, trace.step_norms, trace.step_bounds, trace.sup_displacements),
    )
    if not args.no_plot:
        plots.save_iteration_plot(out / "iteration.png", trace)
    _emit(
        args,
        [args.family],
        {"invariance": 1e-8},
        {
            "level": P.level,
            "dim": rep.dim,
            "h": h,
            "k0": k0,
            "steps": args.steps,
            "perturbation": amp,
            "final_invariance": trace.final_invariance,
            "final_sup_displacement": rep.sup_displacement(trace.final),
            "probes": args.probes,
            "probes_ok": True,
        },
    )


def cmd_product_cocycle(args) -> None:
    if args.orders:
        orders = [int(tok) for tok in args.orders.split(",")]
    else:
        orders = [2 ** (k + 3) for k in range(args.levels)]
    lengths = [int(tok) for tok in args.lengths.split(",")]
    groups = [make_cyclic(n) for n in orders]
    _check_cap(args, groups)
    table = bp.unbounded_cocycle_demo(groups, len(groups), lengths)
    out = _outdir(args)
    io.write_csv(
        out / "growth.csv", ["m", "cocycle_norm"], zip(table.lengths, table.norms)
    )
    if not args.no_plot:
        plots.save_growth_plot(out / "growth.png", table)
    _emit(
        args,
        [",".join(str(n) for n in orders)],
        {},
        {
            "orders": list(table.orders),
            "lengths": list(table.lengths),
            "norms": list(table.norms),
            "generator_norm": table.gen_norm,
            "generator_norm_below_one": table.gen_norm < 1.0,
            "block_displacements": list(table.block_displacements),
            "schedule": list(table.schedule),
            "window_limit": table.window_limit,
            "monotone_nondecreasing": table.monotone_nondecreasing,
            "strictly_increasing_in_window": table.strictly_increasing_in_window,
        },
    )


# ---------------------------------------------------------------- actions


def cmd_actions_descend(args) -> None:
    a = io.load_action(args.action)
    cfg = act.DescentConfig(
        alpha=args.alpha, R=args.radius, tol=args.tol, max_iters=args.max_iters
    )
    x0 = None
    if args.x0 is not None:
        x0 = np.array([float(t) for t in args.x0.split(",")])
    res = act.fixed_point_search(a, cfg, x0=x0, seed=args.seed)
    out = _outdir(args)
    io.write_csv(out / "descent.csv", ["n", "displacement", "step"], res.trace)
    if not args.no_plot:
        plots.save_descent_plot(out / "descent.png", res.trace)
    if isinstance(res, act.FixedPointResult):
        results = {
            "kind": "fixed-point",
            "point": res.point,
            "displacement": res.displacement,
            "iterations": res.iterations,
        }
    else:
        results = {
            "kind": "positive-displacement-evidence",
            "point": res.point,
            "displacement": res.displacement,
            "alpha": res.alpha,
            "ball_radius": res.ball_radius,
            "samples": res.samples,
            "min_sampled": res.min_sampled,
        }
    _emit(
        args,
        [str(args.action)],
        {"tol": args.tol, "alpha": args.alpha, "R": args.radius},
        results,
    )


def cmd_actions_audit(args) -> None:
    a = io.load_action(args.action)
    if not act.cocycle_check(a, samples=args.samples, seed=args.seed):
        raise InvariantViolation("cocycle identity failed")
    if not act.lipschitz_check(a, pairs=args.samples, seed=args.seed):
        raise InvariantViolation("displacement is not 2-Lipschitz")
    v = act.coboundary_solve(a)
    results = {
        "generators": list(a.labels),
        "dim": a.space.dim,
        "cocycle_ok": True,
        "lipschitz_ok": True,
        "origin_displacement": act.displacement(a, np.zeros(a.space.dim)),
        "coboundary": v is not None,
    }
    if v is not None:
        results["fixed_point"] = v
        results["fixed_point_displacement"] = act.displacement(a, v)
    _emit(args, [str(args.action)], {"tol": 1e-7}, results)


def cmd_actions_embed(args) -> None:
    pts = io.load_points(args.points)
    F = act.gaussian_embedding(pts, args.t)
    sq = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=2)
    G = np.exp(-args.t * sq)
    lam = np.linalg.eigvalsh(G)
    out = _outdir(args)
    io.write_csv(
        out / "factor.csv",
        [f"phi{i}" for i in range(F.shape[0])],
        [list(col) for col in F.T],
    )
    if not args.no_plot:
        plots.save_embedding_plot(out / "gram_spectrum.png", lam)
    _emit(
        args,
        [str(args.points)],
        {"psd": 1e-9, "residual": 1e-8},
        {
            "points": pts.shape[0],
            "t": args.t,
            "min_eigenvalue": float(lam[0]),
            "factor_residual": float(np.max(np.abs(F.T @ F - G))),
        },
    )


# ---------------------------------------------------------------- homeo


def cmd_homeo_certificate(args) -> None:
    rep = homeo.corollary_certificate(args.n_max)
    a = homeo.standard_a()
    b = homeo.standard_b()
    w = homeo.compose(
        homeo.commutator(homeo.invert(b), homeo.invert(a)), homeo.commutator(a, b)
    )
    out = _outdir(args)
    io.save_lift(out / "a.json", a)
    io.save_lift(out / "b.json", b)
    io.save_lift(out / "w.json", w)
    io.write_csv(
        out / "orbit.csv",
        ["n", "w_pow_n_at_0"],
        [[n, str(v)] for n, v in enumerate(rep.displacements, start=1)],
    )
    if not args.no_plot:
        plots.save_lift_plot(out / "lifts.png", [a, b, w], ["a", "b", "w"])
        plots.save_orbit_plot(out / "orbit.png", rep.displacements)
    _emit(
        args,
        [],
        {"exact": 0.0},
        {
            "commutator_ab_at_0": rep.commutator_ab_at_0,
            "commutator_inv_at_half": rep.commutator_inv_at_half,
            "w_at_0": rep.w_at_0,
            "n_max": rep.n_max,
            "orbit_exact": rep.orbit_exact,
            "ok": rep.ok,
        },
    )


def cmd_homeo_bounded(args) -> None:
    lifts = [io.load_lift(p) for p in args.lifts]
    rep = homeo.ob_bounded_check(lifts, args.bound)
    _emit(
        args,
        [str(p) for p in args.lifts],
        {},
        {
            "count": len(lifts),
            "max_abs_at_0": rep.max_abs_at_0,
            "bound": rep.bound,
            "bounded": rep.bounded,
        },
    )


# ---------------------------------------------------------------- parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="solver tolerance")
    p.add_argument("--cap", type=int, default=MAX_GROUP_ORDER, help="group order cap")
    p.add_argument("--no-plot", action="store_true", help="skip PNG figures")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarsefp",
        description="centres, spectral gaps, bounded products, affine actions, and exact circle-map certificates",
    )
    common = _common()
    top = parser.add_subparsers(dest="command", metavar="command")

    pc = top.add_parser("centres", help="minimax centres and their stability")
    sc = pc.add_subparsers(dest="sub", metavar="action")

    p = sc.add_parser("solve", parents=[common], help="centre and radius of a point set")
    p.add_argument("points")
    p.add_argument("--lp", type=float, default=None, help="use the lp norm with this p")
    p.set_defaults(func=cmd_centres_solve, subcommand="centres solve")

    p = sc.add_parser("nested", parents=[common], help="audit centre bounds for nested sets")
    p.add_argument("outer")
    p.add_argument("inner")
    p.add_argument("--lp", type=float, default=None)
    p.add_argument("--eps", type=float, default=None, help="also audit the eps-stability bound")
    p.set_defaults(func=cmd_centres_nested, subcommand="centres nested")

    p = sc.add_parser("mean", parents=[common], help="partition-refined mean centres")
    p.add_argument("points")
    p.add_argument("--lp", type=float, default=None)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_centres_mean, subcommand="centres mean")

    p = sc.add_parser("shopping", parents=[common], help="centre after ignoring leading directions")
    p.add_argument("points")
    p.add_argument("--budget", type=int, required=True, help="directions to project out")
    p.set_defaults(func=cmd_centres_shopping, subcommand="centres shopping")

    p = sc.add_parser("demo", parents=[common], help="swap-family compactness demonstration")
    p.add_argument("--dim", type=int, default=50)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_centres_demo, subcommand="centres demo")

    ps = top.add_parser("spectra", help="averaging spectra and expander verdicts")
    ss = ps.add_subparsers(dest="sub", metavar="action")

    p = ss.add_parser("report", parents=[common], help="per-member gaps and family verdict")
    p.add_argument("family", help='family spec, e.g. "cyclic:10..100:10" or "sl2:3,5,7"')
    p.add_argument("--threshold", type=float, default=0.05)
    p.set_defaults(func=cmd_spectra_report, subcommand="spectra report")

    p = ss.add_parser("tensor", parents=[common], help="product-spectrum gap containment")
    p.add_argument("left", help='group spec, e.g. "cyclic:3"')
    p.add_argument("right")
    p.set_defaults(func=cmd_spectra_tensor, subcommand="spectra tensor")

    pp = top.add_parser("product", help="truncated bounded products")
    sp = pp.add_subparsers(dest="sub", metavar="action")

    p = sp.add_parser("iterate", parents=[common], help="almost-invariant vector iteration")
    p.add_argument("--family", default="cyclic:3,3")
    p.add_argument("--level", type=int, default=2)
    p.add_argument("--k0", type=int, default=None)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--perturbation", type=float, default=0.1)
    p.add_argument("--probes", type=int, default=200)
    p.set_defaults(func=cmd_product_iterate, subcommand="product iterate")

    p = sp.add_parser("cocycle", parents=[common], help="growth table of the block cocycle")
    p.add_argument("--levels", type=int, default=7, help="members 8, 16, ... doubling")
    p.add_argument("--orders", default=None, help="explicit cyclic orders, comma separated")
    p.add_argument("--lengths", default="1,2,4,8,16,32,64")
    p.set_defaults(func=cmd_product_cocycle, subcommand="product cocycle")

    pa = top.add_parser("actions", help="affine isometric actions")
    sa = pa.add_subparsers(dest="sub", metavar="action")

    p = sa.add_parser("descend", parents=[common], help="displacement descent")
    p.add_argument("action")
    p.add_argument("--alpha", type=float, default=0.75)
    p.add_argument("--radius", type=float, default=1.0, help="ball factor R")
    p.add_argument("--max-iters", type=int, default=10_000)
    p.add_argument("--x0", default=None, help="start point, comma separated")
    p.set_defaults(func=cmd_actions_descend, subcommand="actions descend")

    p = sa.add_parser("audit", parents=[common], help="cocycle, Lipschitz and coboundary checks")
    p.add_argument("action")
    p.add_argument("--samples", type=int, default=500)
    p.set_defaults(func=cmd_actions_audit, subcommand="actions audit")

    p = sa.add_parser("embed", parents=[common], help="Gaussian kernel embedding")
    p.add_argument("points")
    p.add_argument("--t", type=float, default=1.0)
    p.set_defaults(func=cmd_actions_embed, subcommand="actions embed")

    ph = top.add_parser("homeo", help="exact circle-map lifts")
    sh = ph.add_subparsers(dest="sub", metavar="action")

    p = sh.add_parser("certificate", parents=[common], help="exact commutator orbit certificate")
    p.add_argument("--n-max", type=int, default=100)
    p.set_defaults(func=cmd_homeo_certificate, subcommand="homeo certificate")

    p = sh.add_parser("bounded", parents=[common], help="boundedness of a set of lifts")
    p.add_argument("lifts", nargs="+")
    p.add_argument("--bound", required=True, help="rational bound, e.g. 1/4")
    p.set_defaults(func=cmd_homeo_bounded, subcommand="homeo bounded")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 2
    try:
        args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CoarseFPError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
