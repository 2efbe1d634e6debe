"""Affine isometric actions on real inner-product spaces.

An action assigns to each generator label s an orthogonal matrix pi(s) and a
translation vector b(s); the generator acts by x -> pi(s) x + b(s).  Words
over the labels (tokens like "s" and "s^-1") compose left to right, so the
leftmost letter acts last.  The displacement of a point is its worst move
under a single generator; a fixed point is a point of zero displacement.

fixed_point_search implements a displacement descent: from x it tries the
midpoints toward the moved points, pullbacks against the move directions,
and random samples in the ball of radius R*d(x), accepting any candidate
that contracts the displacement by the factor alpha.  When no sampled point
in the ball beats alpha*d(x), that sample set is returned as evidence that
the displacement is bounded away from zero near x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, InputError, NumericalError
from .spaces import SpaceSpec, as_point

__all__ = [
    "AffineAction",
    "DescentConfig",
    "FixedPointResult",
    "NoFixedPointEvidence",
    "parse_word",
    "reduce_word",
    "compose_word",
    "evaluate_word",
    "cocycle_check",
    "displacement",
    "lipschitz_check",
    "fixed_point_search",
    "coboundary_solve",
    "gaussian_embedding",
]

_ORTHO_TOL = 1e-9


@dataclass(eq=False)
class AffineAction:
    """Generator labels with orthogonal linear parts and translation parts.

    Optional relations are words that must compose to the identity map;
    they are verified on construction.
    """

    space: SpaceSpec
    linear: dict
    translation: dict
    relations: tuple = ()

    def __post_init__(self):
        if self.space.kind != "hilbert":
            raise InputError("affine actions are supported on inner-product spaces only")
        d = self.space.dim
        if set(self.linear) != set(self.translation):
            raise InputError("linear and translation parts must share the same labels")
        if not self.linear:
            raise InputError("an action needs at least one generator")
        lin = {}
        tra = {}
        for s, Q in self.linear.items():
            Q = np.asarray(Q, dtype=float)
            if Q.shape != (d, d) or not np.all(np.isfinite(Q)):
                raise InputError(f"linear part of {s!r} is not a finite {d}x{d} matrix")
            if np.max(np.abs(Q.T @ Q - np.eye(d))) > _ORTHO_TOL:
                raise InputError(f"linear part of {s!r} is not orthogonal")
            lin[s] = Q
            tra[s] = as_point(self.space, self.translation[s])
        self.linear = lin
        self.translation = tra
        self.relations = tuple(tuple(parse_word(w)) for w in self.relations)
        for w in self.relations:
            P, t = compose_word(self, w)
            if np.max(np.abs(P - np.eye(d))) > 1e-8 or np.max(np.abs(t)) > 1e-8:
                raise InputError(f"relation {_word_str(w)!r} does not compose to the identity")

    @property
    def labels(self):
        return tuple(self.linear)


def parse_word(w):
    """Tokens (label, power) from a string or iterable.

    Strings split on whitespace; a trailing "^-1" marks an inverse letter.
    The empty word is allowed.
    """
    if isinstance(w, str):
        parts = w.split()
    else:
        parts = list(w)
    toks = []
    for tok in parts:
        if isinstance(tok, tuple):
            lab, p = tok
            if p not in (1, -1):
                raise InputError("word tokens carry power +1 or -1")
            toks.append((lab, p))
        elif tok.endswith("^-1"):
            toks.append((tok[:-3], -1))
        else:
            toks.append((tok, 1))
    return toks


def reduce_word(tokens):
    """Free reduction: cancel adjacent letter/inverse pairs."""
    out = []
    for lab, p in tokens:
        if out and out[-1][0] == lab and out[-1][1] == -p:
            out.pop()
        else:
            out.append((lab, p))
    return out


def _word_str(tokens):
    return " ".join(lab if p == 1 else f"{lab}^-1" for lab, p in tokens)


def compose_word(a: AffineAction, w):
    """Linear and translation part of the composed map of a word.

    Letters are absorbed left to right: with (P, t) the prefix map and
    (Q, u) the next letter, the new prefix is (P Q, P u + t).  The result
    applied to v is P v + t, the leftmost letter acting last.
    """
    tokens = reduce_word(parse_word(w))
    d = a.space.dim
    P = np.eye(d)
    t = np.zeros(d)
    for lab, p in tokens:
        if lab not in a.linear:
            raise InputError(f"unknown generator label {lab!r}")
        Q = a.linear[lab]
        u = a.translation[lab]
        if p == -1:
            Q = Q.T
            u = -(Q @ u)
        t = P @ u + t
        P = P @ Q
    return P, t


def evaluate_word(a: AffineAction, w, v):
    v = as_point(a.space, v)
    P, t = compose_word(a, w)
    return P @ v + t


def _random_word(rng, labels, max_len):
    n = int(rng.integers(0, max_len + 1))
    toks = []
    for _ in range(n):
        lab = labels[int(rng.integers(len(labels)))]
        toks.append((lab, 1 if rng.random() < 0.5 else -1))
    return toks


def cocycle_check(a: AffineAction, samples: int = 1000, seed: int = 0, max_len: int = 6) -> bool:
    """Translation part of a product word matches pi(g) b(h) + b(g).

    This holds identically for composed affine maps; the check guards the
    composition code on random word pairs.
    """
    rng = np.random.default_rng(seed)
    labels = a.labels
    for _ in range(samples):
        g = _random_word(rng, labels, max_len)
        h = _random_word(rng, labels, max_len)
        Pg, tg = compose_word(a, g)
        _, th = compose_word(a, h)
        _, tgh = compose_word(a, g + h)
        if np.max(np.abs(tgh - (Pg @ th + tg))) > 1e-9:
            return False
    return True


def displacement(a: AffineAction, x) -> float:
    """Largest single-generator move max_s |s.x - x|."""
    x = as_point(a.space, x)
    best = 0.0
    for s in a.labels:
        move = a.linear[s] @ x + a.translation[s] - x
        best = max(best, float(np.linalg.norm(move)))
    return best


def lipschitz_check(a: AffineAction, pairs: int = 1000, seed: int = 0, radius: float = 10.0) -> bool:
    """Displacement is 2-Lipschitz: |d(x) - d(y)| <= 2 |x - y| on random pairs."""
    rng = np.random.default_rng(seed)
    d = a.space.dim
    for _ in range(pairs):
        x = rng.uniform(-radius, radius, size=d)
        y = rng.uniform(-radius, radius, size=d)
        if abs(displacement(a, x) - displacement(a, y)) > 2.0 * np.linalg.norm(x - y) + 1e-9:
            return False
    return True


@dataclass(frozen=True)
class DescentConfig:
    alpha: float = 0.75
    R: float = 1.0
    tol: float = 1e-8
    max_iters: int = 10_000
    ball_samples: int = 64
    witness_samples: int = 1000

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise InputError("alpha must lie in (0, 1)")
        if self.R <= 0 or self.tol <= 0 or self.max_iters <= 0:
            raise InputError("R, tol and max_iters must be positive")


@dataclass(frozen=True)
class FixedPointResult:
    point: np.ndarray
    displacement: float
    iterations: int
    trace: tuple


@dataclass(frozen=True)
class NoFixedPointEvidence:
    """Sampled-ball evidence of positive displacement, not a proof.

    At `point` with displacement d, every one of `samples` sampled points
    in the ball of radius R d kept displacement above alpha * d; the least
    sampled value is recorded.
    """

    point: np.ndarray
    displacement: float
    alpha: float
    ball_radius: float
    samples: int
    min_sampled: float
    trace: tuple = field(default=())


def _ball_points(rng, centre, radius, count):
    d = centre.size
    u = rng.normal(size=(count, d))
    u /= np.maximum(np.linalg.norm(u, axis=1, keepdims=True), 1e-300)
    r = radius * rng.random(count) ** (1.0 / d)
    return centre + u * r[:, None]


def fixed_point_search(a: AffineAction, cfg: DescentConfig, x0=None, seed: int = 0):
    """Displacement descent from x0 (default: the origin).

    Returns a FixedPointResult when the displacement is driven under
    cfg.tol, or NoFixedPointEvidence when a sampled ball shows no point
    contracting past alpha.  Raises ConvergenceError when the iteration
    cap is hit with neither outcome.
    """
    rng = np.random.default_rng(seed)
    x = np.zeros(a.space.dim) if x0 is None else as_point(a.space, x0)
    d = displacement(a, x)
    trace = [(0, d, 0.0)]
    for n in range(1, cfg.max_iters + 1):
        if d <= cfg.tol:
            return FixedPointResult(x, d, n - 1, tuple(trace))
        ball = cfg.R * d
        cands = []
        for s in a.labels:
            sx = a.linear[s] @ x + a.translation[s]
            move = sx - x
            cands.append((x + sx) / 2.0)
            scale = 0.5
            while scale * np.linalg.norm(move) > 1e-300 and scale >= 1.0 / 64.0:
                cands.append(x - (cfg.R * scale) * move)
                scale /= 2.0
        cands.extend(_ball_points(rng, x, ball, cfg.ball_samples))
        best_y, best_d = None, d
        for y in cands:
            if np.linalg.norm(y - x) > ball + 1e-12:
                continue
            dy = displacement(a, y)
            if dy < best_d:
                best_y, best_d = y, dy
        if best_y is not None and best_d <= cfg.alpha * d:
            trace.append((n, best_d, float(np.linalg.norm(best_y - x))))
            x, d = best_y, best_d
            continue
        # no contracting candidate; test the ball thoroughly
        sampled = _ball_points(rng, x, ball, cfg.witness_samples)
        vals = np.array([displacement(a, y) for y in sampled])
        if np.min(vals) > cfg.alpha * d:
            return NoFixedPointEvidence(
                point=x,
                displacement=d,
                alpha=cfg.alpha,
                ball_radius=ball,
                samples=cfg.witness_samples,
                min_sampled=float(np.min(vals)),
                trace=tuple(trace),
            )
        k = int(np.argmin(vals))
        y = sampled[k]
        trace.append((n, float(vals[k]), float(np.linalg.norm(y - x))))
        x, d = y, float(vals[k])
    raise ConvergenceError(
        f"descent inconclusive after {cfg.max_iters} steps: displacement {d:.3e}"
    )


def coboundary_solve(a: AffineAction):
    """Least-squares v with (I - pi(s)) v = b(s) for every generator.

    Returns v when the stacked residual is at most 1e-7 (then every
    generator fixes v), otherwise None.
    """
    d = a.space.dim
    rows = []
    rhs = []
    for s in a.labels:
        rows.append(np.eye(d) - a.linear[s])
        rhs.append(a.translation[s])
    A = np.vstack(rows)
    y = np.concatenate(rhs)
    v, *_ = np.linalg.lstsq(A, y, rcond=None)
    if np.linalg.norm(A @ v - y) <= 1e-7:
        return v
    return None


def gaussian_embedding(points, t: float) -> np.ndarray:
    """Factor F with F^T F = G for the Gaussian Gram matrix G.

    G_ij = exp(-t |v_i - v_j|^2) is positive semidefinite for every t > 0;
    the factor is built from the eigendecomposition, columns of F being
    the embedded points, so |F_i - F_j|^2 = 2 - 2 G_ij.
    """
    if t <= 0:
        raise InputError("t must be positive")
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[0] < 1 or not np.all(np.isfinite(P)):
        raise InputError("points must be a finite 2d array, one point per row")
    sq = np.sum((P[:, None, :] - P[None, :, :]) ** 2, axis=2)
    G = np.exp(-t * sq)
    lam, Q = np.linalg.eigh(G)
    if lam[0] < -1e-9:
        raise NumericalError(f"Gaussian Gram matrix has eigenvalue {lam[0]:.3e}")
    F = np.sqrt(np.clip(lam, 0.0, None))[:, None] * Q.T
    if np.max(np.abs(F.T @ F - G)) > 1e-8:
        raise NumericalError("Gram factor residual exceeds tolerance")
    return F
