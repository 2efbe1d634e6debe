"""Independent oracles used to cross-check the library's solvers.

Everything here is deliberately naive: combinatorial enumeration and grid
refinement instead of iterative optimisation, so the two code paths share
no logic with the package under test.
"""

from itertools import combinations

import numpy as np
import scipy.optimize


def circumcentre(pts: np.ndarray):
    """Centre equidistant from all rows of pts, inside their affine hull.

    Returns None when the points are affinely dependent enough that the
    equidistant locus is not a single point of the hull.
    """
    p0 = pts[0]
    rel = pts[1:] - p0
    if rel.shape[0] == 0:
        return p0.copy()
    # c = p0 + rel.T @ x with 2 rel @ rel.T x = |rel_i|^2.
    G = 2.0 * rel @ rel.T
    b = np.einsum("ij,ij->i", rel, rel)
    try:
        x = np.linalg.solve(G, b)
    except np.linalg.LinAlgError:
        return None
    c = p0 + rel.T @ x
    r = np.linalg.norm(pts - c, axis=1)
    if np.ptp(r) > 1e-8 * (1.0 + r.max()):
        return None
    return c


def meb_oracle(points: np.ndarray):
    """Brute-force smallest enclosing ball for the Euclidean norm.

    Enumerates circumcentres of all support subsets of size 1..d+1 and keeps
    the cheapest one that covers everything.  Exponential, so only suitable
    for the small instances used in tests.
    """
    pts = np.asarray(points, dtype=float)
    n, d = pts.shape
    best_c, best_r = None, np.inf
    for k in range(1, min(n, d + 1) + 1):
        for idx in combinations(range(n), k):
            c = circumcentre(pts[list(idx)])
            if c is None:
                continue
            r = np.linalg.norm(pts - c, axis=1).max()
            if r < best_r - 1e-12:
                best_r, best_c = r, c
    return best_c, best_r


def lp_grid_oracle(points: np.ndarray, p: float, rounds: int = 22, width: int = 16):
    """Grid-refinement minimax centre for the lp norm, dimension <= 3.

    Shrinks a box around the incumbent by 1/3 each round; accurate to about
    box_size * (2/3)^rounds, plenty for 1e-4 comparisons.
    """
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    centre = (lo + hi) / 2.0
    half = (hi - lo) / 2.0 + 1e-9
    best_r = np.inf
    for _ in range(rounds):
        axes = [np.linspace(c - h, c + h, width) for c, h in zip(centre, half)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(centre))
        radii = np.linalg.norm(pts[None, :, :] - mesh[:, None, :], ord=p, axis=2).max(axis=1)
        i = int(np.argmin(radii))
        if radii[i] < best_r:
            best_r = float(radii[i])
            centre = mesh[i]
        half = half * (2.0 / 3.0)
    return centre, best_r


def lp_kkt_residual(points: np.ndarray, z: np.ndarray, p: float, active_tol: float = 1e-6):
    """Optimality certificate for a minimax lp centre.

    z minimises max_i |z - a_i|_p iff the zero vector lies in the convex
    hull of the gradients of the active distance functions.  Returns the
    infinity-norm distance from 0 to that hull (via a small LP) together
    with the active-set size; a correct centre gives a residual near 0.
    """
    pts = np.asarray(points, dtype=float)
    u = z - pts
    d = np.linalg.norm(u, ord=p, axis=1)
    r = d.max()
    act = np.flatnonzero(d >= r - active_tol * (1.0 + r))
    g = np.sign(u[act]) * (np.abs(u[act]) / d[act, None]) ** (p - 1.0)
    k, dim = g.shape
    # min s  s.t.  |sum_i lam_i g_i|_inf <= s,  sum lam = 1,  lam >= 0
    c = np.zeros(k + 1)
    c[-1] = 1.0
    A_ub = np.zeros((2 * dim, k + 1))
    A_ub[:dim, :k] = g.T
    A_ub[dim:, :k] = -g.T
    A_ub[:, -1] = -1.0
    A_eq = np.zeros((1, k + 1))
    A_eq[0, :k] = 1.0
    res = scipy.optimize.linprog(
        c, A_ub=A_ub, b_ub=np.zeros(2 * dim), A_eq=A_eq, b_eq=[1.0], bounds=(0, None)
    )
    assert res.status == 0
    return float(res.fun), int(k)


def random_point_set(rng: np.random.Generator, n: int, dim: int, spread: float = 2.0):
    return spread * rng.standard_normal((n, dim)) + rng.uniform(-3, 3, size=dim)


def random_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((dim, dim)))
    return Q * np.sign(np.diag(R))


def random_signed_permutation(rng: np.random.Generator, dim: int) -> np.ndarray:
    P = np.zeros((dim, dim))
    P[np.arange(dim), rng.permutation(dim)] = rng.choice([-1.0, 1.0], size=dim)
    return P


def circulant_spectrum(n: int) -> np.ndarray:
    """Eigenvalues of the averaging operator of a cycle: cos(2 pi k / n)."""
    return np.sort(np.cos(2.0 * np.pi * np.arange(n) / n))
