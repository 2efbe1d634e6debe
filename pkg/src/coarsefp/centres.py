"""Centres of bounded sets in uniformly convex spaces.

The basic object is the Chebyshev centre Z(A): the unique minimiser of the
covering radius r(x) = max_a |x a| over a bounded set A.  On top of it the
module builds

* stability and annulus checks for Z under thinning of the set,
* the mean centre of a weighted set, obtained by averaging centres over a
  refining partition,
* shopping centres: points that remain central after projecting away any
  finite collection of directions, which survive isometries that move the
  plain centre arbitrarily far, and
* a demonstration contrasting the two behaviours on a swap family.

The solver runs subgradient descent with a Polyak step seeded at the
coordinate-wise mean, then polishes.  In Hilbert space the polish step
identifies the near-active support and solves the enclosing-ball
optimality system on it exactly, so centres come out at machine precision;
in lp spaces a shrinking pattern search refines the subgradient iterate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .config import CENTRE_MAX_ITERS, DEFAULT_TOL
from .errors import ConvergenceError, InputError, NumericalError
from .spaces import SpaceSpec, as_point, distance, stability_coefficient

__all__ = [
    "BoundedSet",
    "WeightedSet",
    "ShoppingConfig",
    "ShoppingResult",
    "CentreSolve",
    "CompactnessReport",
    "radius_at",
    "chebyshev_centre",
    "solve_centre",
    "annulus_invariance_check",
    "hilbert_nested_bound_check",
    "stability_bound_check",
    "centre_equivariance_check",
    "hull_distance",
    "mean_centre",
    "projected_radius",
    "shopping_centre",
    "swap_family_set",
    "swap_isometry",
    "compactness_demo",
]


@dataclass(frozen=True)
class BoundedSet:
    """A finite, nonempty point set in a space, stored one point per row."""

    space: SpaceSpec
    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise InputError("a bounded set needs at least one point")
        if pts.shape[1] != self.space.dim:
            raise InputError(
                f"points of dimension {pts.shape[1]} in a space of dimension {self.space.dim}"
            )
        if not np.all(np.isfinite(pts)):
            raise InputError("bounded set has non-finite coordinates")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class WeightedSet:
    """Finitely many atoms with nonnegative weights of positive total mass."""

    space: SpaceSpec
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        base = BoundedSet(self.space, self.points)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if w.shape[0] != base.points.shape[0]:
            raise InputError("one weight per atom required")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise InputError("weights must be finite and nonnegative")
        if w.sum() <= 0:
            raise InputError("total mass must be positive")
        object.__setattr__(self, "points", base.points)
        object.__setattr__(self, "weights", w)

    def total_mass(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class ShoppingConfig:
    """Parameters of the truncated shopping-centre search.

    The subspace is grown one principal direction at a time, up to
    subspace_budget directions, while eps runs through eps_schedule
    (padded with its last entry when the budget is longer).
    """

    subspace_budget: int
    eps_schedule: tuple = (0.5, 0.25, 0.125, 0.0625, 0.03125)
    tol: float = 1e-7

    def __post_init__(self):
        if not isinstance(self.subspace_budget, int) or self.subspace_budget < 0:
            raise InputError("subspace budget must be a nonnegative integer")
        sched = tuple(float(e) for e in self.eps_schedule)
        if not sched or any(e <= 0 for e in sched):
            raise InputError("eps schedule must be nonempty and positive")
        if any(b >= a for a, b in zip(sched, sched[1:])):
            raise InputError("eps schedule must be strictly decreasing")
        if self.tol <= 0:
            raise InputError("tol must be positive")
        object.__setattr__(self, "eps_schedule", sched)


@dataclass
class CentreSolve:
    """Solver output: the centre, its radius, and convergence diagnostics."""

    centre: np.ndarray
    rho: float
    iterations: int
    residual: float


@dataclass
class ShoppingResult:
    centre: np.ndarray
    s_hat: float
    directions: np.ndarray
    eps: float
    hull_residual: float
    s_path: tuple


@dataclass
class CompactnessReport:
    dim: int
    centres: np.ndarray
    pairwise_min: float
    pairwise_max: float
    shopping_norms: np.ndarray
    s_hats: np.ndarray
    degenerate: bool


def radius_at(A: BoundedSet, x) -> float:
    """Covering radius r(x) = max over a in A of |x a|."""
    x = as_point(A.space, x)
    return float(_dists(A.space, A.points, x).max())


def _dists(space: SpaceSpec, pts: np.ndarray, x: np.ndarray) -> np.ndarray:
    diff = pts - x
    if space.kind == "hilbert":
        return np.linalg.norm(diff, axis=1)
    return np.linalg.norm(diff, ord=space.p, axis=1)


def _subgradient(space: SpaceSpec, u: np.ndarray) -> np.ndarray:
    # gradient of || . || at u != 0
    if space.kind == "hilbert":
        return u / np.linalg.norm(u)
    p = space.p
    nu = np.linalg.norm(u, ord=p)
    return np.sign(u) * (np.abs(u) / nu) ** (p - 1.0)


def _batch_circumcentres(cand: np.ndarray, size: int) -> np.ndarray:
    """Circumcentres of every size-subset of cand, degenerate ones dropped."""
    m = cand.shape[0]
    idx = np.array(list(itertools.combinations(range(m), size)))
    T = cand[idx]
    base = T[:, :1, :]
    V = T[:, 1:, :] - base
    G = 2.0 * (V @ V.transpose(0, 2, 1))
    rhs = np.einsum("kij,kij->ki", V, V)
    try:
        mu = np.linalg.solve(G, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError:
        # a singular subset poisons the whole batch; redo one by one
        mu = np.zeros_like(rhs)
        keep = np.ones(len(T), dtype=bool)
        for i in range(len(T)):
            try:
                mu[i] = np.linalg.solve(G[i], rhs[i])
            except np.linalg.LinAlgError:
                keep[i] = False
        T, base, V, mu = T[keep], base[keep], V[keep], mu[keep]
    c = base[:, 0, :] + np.einsum("ki,kid->kd", mu, V)
    dist = np.linalg.norm(T - c[:, None, :], axis=2)
    spread = dist.max(axis=1) - dist.min(axis=1)
    ok = spread <= 1e-8 * np.maximum(1.0, dist.max(axis=1))
    return c[ok]


def _polish_hilbert(pts: np.ndarray, x: np.ndarray, r: float):
    """Refine an approximate enclosing-ball centre to machine precision.

    Enumerates circumcentres of small subsets of the near-active points and
    keeps whichever covers the whole set with the smallest radius.  The true
    centre is the circumcentre of its support set, so once the support is
    inside the candidate pool the output is exact.
    """
    n, d = pts.shape
    best_x, best_r = x.copy(), r
    max_subset = min(d + 1, 8)
    sq = np.einsum("ij,ij->i", pts, pts)
    prev_pool = None
    for _ in range(8):
        dv = np.linalg.norm(pts - best_x, axis=1)
        # candidate support points: the farthest few, re-ranked each round
        act = np.argsort(dv)[-min(n, 14):]
        cand = np.unique(pts[act], axis=0)
        pool = cand.tobytes()
        if pool == prev_pool:
            break
        prev_pool = pool
        centres = [cand]
        for size in range(2, min(max_subset, cand.shape[0]) + 1):
            c = _batch_circumcentres(cand, size)
            if c.size:
                centres.append(c)
        C = np.concatenate(centres, axis=0)
        # covering radius of every candidate in one matrix product
        d2 = sq[:, None] - 2.0 * (pts @ C.T) + np.einsum("ij,ij->i", C, C)
        radii = np.sqrt(np.maximum(d2, 0.0).max(axis=0))
        pick = C[int(np.argmin(radii))]
        rc = float(np.linalg.norm(pts - pick, axis=1).max())
        if rc < best_r - 1e-15:
            best_x, best_r = pick.copy(), rc
        else:
            break
    return best_x, best_r


_STENCILS: dict = {}


def _stencil(d: int) -> np.ndarray:
    if d not in _STENCILS:
        if d <= 4:
            dirs = [np.array(v, dtype=float) for v in itertools.product((-1, 0, 1), repeat=d)]
            dirs = [v for v in dirs if np.any(v)]
        else:
            eye = np.eye(d)
            dirs = [eye[i] for i in range(d)] + [-eye[i] for i in range(d)]
        _STENCILS[d] = np.array(dirs)
    return _STENCILS[d]


def _polish_pattern(space: SpaceSpec, pts: np.ndarray, x: np.ndarray, r: float, tol: float):
    """Shrinking pattern search for lp spaces.  Reliable in low dimension.

    The fixed compass stencil alone can stagnate in the kinked valleys of a
    max-of-norms objective, so every round also probes a fresh batch of
    random directions before the step size is halved.
    """
    dirs = _stencil(space.dim)
    rng = np.random.default_rng(1)
    h = max(r, 1.0) * 0.25
    fx = r
    evals = 0
    floor = max(tol * 1e-3, 1e-13)
    while h > floor and evals < 200000:
        extra = rng.standard_normal((24, space.dim))
        extra /= np.linalg.norm(extra, axis=1, keepdims=True)
        improved = False
        for u in np.vstack([dirs, extra]):
            y = x + h * u
            fy = float(_dists(space, pts, y).max())
            evals += 1
            if fy < fx - 1e-15:
                x, fx = y, fy
                improved = True
                break
        if not improved:
            h *= 0.5
    return x, fx


def _polish_lp(space: SpaceSpec, pts: np.ndarray, x: np.ndarray, r: float, tol: float):
    """Refine an lp centre through the epigraph program.

    Minimising t subject to sum_j |x_j - a_j|^p <= t^p is a smooth problem
    for p > 1, so a sequential quadratic solver reaches far tighter optima
    than direct search on the flat minimax landscape.  The pattern-search
    result is kept as a fallback in case the solver wanders.
    """
    xp, fp = _polish_pattern(space, pts, x, r, tol)
    p = space.p
    v0 = np.append(xp, fp * (1.0 + 1e-9) + 1e-12)
    obj_jac = np.zeros(space.dim + 1)
    obj_jac[-1] = 1.0

    def cons(v):
        u = v[:-1] - pts
        return v[-1] ** p - np.sum(np.abs(u) ** p, axis=1)

    def cons_jac(v):
        u = v[:-1] - pts
        J = np.empty((pts.shape[0], space.dim + 1))
        J[:, :-1] = -p * np.sign(u) * np.abs(u) ** (p - 1.0)
        J[:, -1] = p * v[-1] ** (p - 1.0)
        return J

    try:
        res = scipy.optimize.minimize(
            lambda v: v[-1],
            v0,
            jac=lambda v: obj_jac,
            constraints=[{"type": "ineq", "fun": cons, "jac": cons_jac}],
            method="SLSQP",
            options={"maxiter": 400, "ftol": 1e-14},
        )
        xn = res.x[:-1]
        fn = float(_dists(space, pts, xn).max())
        if np.all(np.isfinite(xn)) and fn < fp:
            return xn, fn
    except (ValueError, OverflowError):
        pass
    return xp, fp


def solve_centre(A: BoundedSet, tol: float = DEFAULT_TOL) -> CentreSolve:
    """Chebyshev centre with diagnostics.

    Subgradient descent with a Polyak step aimed at the current best value
    (minus a geometrically shrinking slack), seeded at the coordinate-wise
    mean, capped at CENTRE_MAX_ITERS iterations, and stopped once the best
    radius improves by less than tol across a 50-step window.  The iterate
    is then polished as described in the module docstring.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    space, pts = A.space, A.points
    n = pts.shape[0]
    if n == 1:
        return CentreSolve(pts[0].copy(), 0.0, 0, 0.0)

    x = pts.mean(axis=0)
    dv = _dists(space, pts, x)
    best_x, best_r = x.copy(), float(dv.max())
    scale = max(best_r, 1e-12)
    window_start = best_r
    since = 0
    iters = 0
    slack = 0.5 * scale
    for k in range(1, CENTRE_MAX_ITERS + 1):
        iters = k
        dv = _dists(space, pts, x)
        i = int(np.argmax(dv))
        r = float(dv[i])
        if r < best_r:
            best_r = r
            best_x = x.copy()
        since += 1
        if since >= 50:
            if window_start - best_r < tol:
                break
            window_start = best_r
            since = 0
        u = pts[i] - x
        if not np.any(u):
            break  # the farthest point coincides with the iterate
        g = -_subgradient(space, u)
        slack = max(slack * 0.95, 0.0)
        target = best_r - slack
        step = max(r - target, 0.0) / float(g @ g)
        x = x - step * g
    residual = window_start - best_r

    if space.kind == "hilbert":
        z, rho = _polish_hilbert(pts, best_x, best_r)
    else:
        z, rho = _polish_lp(space, pts, best_x, best_r, tol)
    return CentreSolve(z, float(rho), iters, abs(float(residual)))


def chebyshev_centre(A: BoundedSet, tol: float = DEFAULT_TOL):
    """The centre Z(A) and radius rho(A) of the bounded set A."""
    sol = solve_centre(A, tol)
    return sol.centre, sol.rho


def annulus_invariance_check(A: BoundedSet, eps: float, tol: float = 1e-6) -> bool:
    """Z is already determined by the outer annulus of A.

    Keeps the points at distance >= rho(A) - eps from Z(A) and verifies the
    centre of the thinned set agrees with Z(A) within tol.
    """
    if eps <= 0:
        raise InputError("eps must be positive")
    z, rho = chebyshev_centre(A)
    keep = _dists(A.space, A.points, z) >= rho - eps
    D = BoundedSet(A.space, A.points[keep])
    z2, _ = chebyshev_centre(D)
    return distance(A.space, z, z2) <= tol


def _require_subset(A: BoundedSet, B: BoundedSet, tol: float = 1e-9):
    for q in B.points:
        if _dists(A.space, A.points, q).min() > tol:
            raise InputError("B is not a subset of A")


def hilbert_nested_bound_check(A: BoundedSet, B: BoundedSet, slack: float = DEFAULT_TOL) -> bool:
    """For B inside A in Hilbert space: |Z(A) Z(B)| <= sqrt(rho(A)^2 - rho(B)^2)."""
    if A.space.kind != "hilbert" or A.space != B.space:
        raise InputError("both sets must live in the same Hilbert space")
    _require_subset(A, B)
    za, ra = chebyshev_centre(A)
    zb, rb = chebyshev_centre(B)
    lhs = distance(A.space, za, zb)
    rhs = np.sqrt(max(ra * ra - rb * rb, 0.0))
    return lhs <= rhs + slack


def stability_bound_check(A: BoundedSet, B: BoundedSet, eps: float, slack: float = DEFAULT_TOL) -> bool:
    """Centre drift bound for nested sets in any supported space:

    |Z(A) Z(B)| <= eps * rho(A) + kappa(eps) * (rho(A) - rho(B)).
    """
    if A.space != B.space:
        raise InputError("both sets must live in the same space")
    _require_subset(A, B)
    kappa = stability_coefficient(A.space, eps)
    za, ra = chebyshev_centre(A)
    zb, rb = chebyshev_centre(B)
    lhs = distance(A.space, za, zb)
    return lhs <= eps * ra + kappa * (ra - rb) + slack


def _validate_isometry(space: SpaceSpec, Q: np.ndarray, t: np.ndarray):
    Q = np.asarray(Q, dtype=float)
    t = as_point(space, t)
    if Q.shape != (space.dim, space.dim):
        raise InputError("linear part has the wrong shape")
    if space.kind == "hilbert":
        if np.abs(Q.T @ Q - np.eye(space.dim)).max() > 1e-9:
            raise InputError("linear part is not orthogonal")
    else:
        # isometries of lp (p != 2) permute coordinates up to sign
        absQ = np.abs(Q)
        ok = (
            np.allclose(absQ.sum(axis=0), 1.0, atol=1e-12)
            and np.allclose(absQ.sum(axis=1), 1.0, atol=1e-12)
            and np.allclose(absQ * (1.0 - absQ), 0.0, atol=1e-12)
        )
        if not ok:
            raise InputError("linear part is not a signed permutation, hence not an lp isometry")
    return Q, t


def centre_equivariance_check(A: BoundedSet, Q, t, tol: float = 1e-7) -> bool:
    """Z(u A) = u Z(A) for the isometry u: x -> Q x + t."""
    Q, t = _validate_isometry(A.space, Q, t)
    z, _ = chebyshev_centre(A)
    image = BoundedSet(A.space, A.points @ Q.T + t)
    zi, _ = chebyshev_centre(image)
    return distance(A.space, Q @ z + t, zi) <= tol


def hull_distance(points: np.ndarray, target: np.ndarray):
    """Distance from target to the convex hull of the rows of points.

    Returns (coefficients, residual) where coefficients lie on the simplex.
    Solved as a nonnegative least-squares problem with a mass constraint.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    target = np.asarray(target, dtype=float)
    n = points.shape[0]
    scale = max(1.0, float(np.abs(points).max()), float(np.abs(target).max()))
    w = 1e4 * scale
    A = np.vstack([points.T, w * np.ones((1, n))])
    b = np.concatenate([target, [w]])
    coeffs, _ = scipy.optimize.nnls(A, b, maxiter=max(300, 30 * n))
    s = coeffs.sum()
    if s <= 1e-12:
        raise NumericalError("hull projection collapsed to the zero combination")
    coeffs = coeffs / s
    residual = float(np.linalg.norm(points.T @ coeffs - target))
    return coeffs, residual


def mean_centre(mu: WeightedSet, depth: int) -> np.ndarray:
    """Mean centre of a weighted set at a given partition depth.

    The cell partition starts trivial and is refined depth times by median
    splits along the coordinate of largest spread; the result is the
    mass-weighted average of the cell centres.  Depth 0 returns the plain
    centre of the support; full refinement returns the weighted barycentre.
    """
    if not isinstance(depth, int) or depth < 0:
        raise InputError("depth must be a nonnegative integer")
    keep = mu.weights > 0
    pts = mu.points[keep]
    wts = mu.weights[keep]
    cells = [np.arange(pts.shape[0])]
    for _ in range(depth):
        nxt = []
        for cell in cells:
            sub = pts[cell]
            spread = sub.max(axis=0) - sub.min(axis=0)
            j = int(np.argmax(spread))
            if spread[j] <= 0.0:
                nxt.append(cell)
                continue
            med = float(np.median(sub[:, j]))
            if med >= sub[:, j].max():
                med = 0.5 * (float(sub[:, j].min()) + float(sub[:, j].max()))
            mask = sub[:, j] <= med
            nxt.append(cell[mask])
            nxt.append(cell[~mask])
        cells = nxt
    total = wts.sum()
    acc = np.zeros(mu.space.dim)
    for cell in cells:
        z, _ = chebyshev_centre(BoundedSet(mu.space, pts[cell]))
        acc += wts[cell].sum() * z
    return acc / total


def _check_directions(space: SpaceSpec, V) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    if V.size == 0:
        return np.zeros((0, space.dim))
    V = np.atleast_2d(V)
    if V.shape[1] != space.dim:
        raise InputError("directions have the wrong dimension")
    if np.abs(V @ V.T - np.eye(V.shape[0])).max() > 1e-9:
        raise InputError("directions are not orthonormal")
    return V


def projected_radius(L: BoundedSet, V) -> float:
    """Covering radius of L after projecting away the span of the rows of V.

    This is the quantity whose infimum over finite-dimensional V defines the
    shopping radius; it can only decrease as V grows.
    """
    if L.space.kind != "hilbert":
        raise InputError("projections need a Hilbert space")
    V = _check_directions(L.space, V)
    proj = L.points - (L.points @ V.T) @ V
    return solve_centre(BoundedSet(L.space, proj)).rho


def shopping_centre(L: BoundedSet, cfg: ShoppingConfig) -> ShoppingResult:
    """Truncated shopping centre of L.

    Grows the projected-away subspace V by principal directions of the
    covariance, one per step while eps shrinks along the schedule, and at the
    final (V, eps) returns a convex combination z of points of L whose
    projections stay nearly extremal around the projected centre.  By
    construction z lies within cfg.tol of the hull of
    {v in L : |p(v - z)| >= s_hat - eps}, which is verified before returning.
    """
    if L.space.kind != "hilbert":
        raise InputError("shopping centres are computed in Hilbert space")
    d = L.space.dim
    if cfg.subspace_budget >= d:
        raise InputError("subspace budget must stay below the ambient dimension")
    pts = L.points
    centred = pts - pts.mean(axis=0)
    cov = centred.T @ centred / pts.shape[0]
    evals, evecs = np.linalg.eigh(cov)
    dirs = evecs[:, np.argsort(evals)[::-1]].T  # rows, by descending variance

    sched = cfg.eps_schedule
    s_path = []
    for j in range(cfg.subspace_budget + 1):
        eps = sched[min(j, len(sched) - 1)]
        s_path.append(projected_radius(L, dirs[:j]))
    V = dirs[: cfg.subspace_budget]

    proj = pts - (pts @ V.T) @ V
    sol = solve_centre(BoundedSet(L.space, proj))
    x, s_hat = sol.centre, sol.rho

    dv = np.linalg.norm(proj - x, axis=1)
    half = np.flatnonzero(dv >= s_hat - eps / 2.0)
    coeffs, _ = hull_distance(proj[half], x)
    z = coeffs @ pts[half]

    pz = z - (z @ V.T) @ V if V.shape[0] else z
    dz = np.linalg.norm(proj - pz, axis=1)
    annulus = np.flatnonzero(dz >= s_hat - eps)
    _, hull_res = hull_distance(pts[annulus], z)
    if hull_res > cfg.tol:
        raise ConvergenceError(
            f"shopping centre failed its hull certificate: residual {hull_res:.3e} > {cfg.tol:.3e}"
        )
    return ShoppingResult(
        centre=z,
        s_hat=float(s_hat),
        directions=V,
        eps=float(eps),
        hull_residual=float(hull_res),
        s_path=tuple(float(s) for s in s_path),
    )


def swap_family_set(dim: int) -> BoundedSet:
    """The swap-family test set: unit vectors +-e_i plus two far points.

    The far points 10 e_1 +- ... pin the plain centre at e_2, while the set
    is symmetric enough that the origin is the natural shopping centre.
    """
    if dim < 3:
        raise InputError("the swap family needs dimension at least 3")
    space = SpaceSpec("hilbert", dim)
    eye = np.eye(dim)
    far1 = 10.0 * eye[0] + eye[1]
    far2 = -10.0 * eye[0] + eye[1]
    pts = np.vstack([eye, -eye, far1, far2])
    return BoundedSet(space, pts)


def swap_isometry(dim: int, m: int) -> np.ndarray:
    """Orthogonal map exchanging e_2 and e_m (1-based), fixing the rest."""
    if not (2 <= m <= dim):
        raise InputError("swap index out of range")
    Q = np.eye(dim)
    i, j = 1, m - 1
    Q[[i, j]] = Q[[j, i]]
    return Q


def compactness_demo(dim: int, budget: int | None = None, tol: float = 0.05) -> CompactnessReport:
    """Contrast plain centres with shopping centres on the swap family.

    Applying the isometry that swaps e_2 and e_m moves the plain centre to
    e_m, so the centres of the images form an infinite-looking spread with
    pairwise distances sqrt(2).  The shopping-centre estimates stay near the
    origin with s_hat near 1.  Small dimensions are flagged degenerate: with
    few coordinates left after the projection budget the contrast is weak.
    """
    L = swap_family_set(dim)
    if budget is None:
        budget = max(1, min(5, dim - 3))
    cfg = ShoppingConfig(subspace_budget=budget, tol=1e-6)
    centres = []
    shopping_norms = []
    s_hats = []
    for m in range(2, dim + 1):
        Q = swap_isometry(dim, m)
        A = BoundedSet(L.space, L.points @ Q.T)
        z, _ = chebyshev_centre(A)
        centres.append(z)
        res = shopping_centre(A, cfg)
        shopping_norms.append(np.linalg.norm(res.centre))
        s_hats.append(res.s_hat)
    centres = np.array(centres)
    diffs = centres[:, None, :] - centres[None, :, :]
    pd = np.linalg.norm(diffs, axis=2)
    off = pd[~np.eye(pd.shape[0], dtype=bool)]
    return CompactnessReport(
        dim=dim,
        centres=centres,
        pairwise_min=float(off.min()) if off.size else 0.0,
        pairwise_max=float(off.max()) if off.size else 0.0,
        shopping_norms=np.array(shopping_norms),
        s_hats=np.array(s_hats),
        degenerate=dim < 6,
    )
