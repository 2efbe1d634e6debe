"""Truncated products of finite marked groups acting blockwise.

A TruncatedProduct holds the first N groups of a family.  Its generating
set is the full product S_1 x ... x S_N; a generator tuple acts on the
direct sum of the per-group function spaces by left translation in each
block.  Because the action is blockwise, the supremum of |s v - v| over
the whole product generating set decomposes exactly: each block picks its
own worst generator, no tuple enumeration needed.

The invariant-vector iteration pushes an almost invariant unit vector to
an exactly invariant one:

    v_{k+1} = ((k-2)/k + (2/k) p) v_k, renormalized,  k = k0, k0+1, ...

with p the projection onto blockwise constants and k0 >= ceil(2/h) for h
the least two-sided gap among the blocks.  Each step is verified against
the contraction bound |v_{k+1} - v_k| <= 4/(h k^2) and the almost
invariance bound sup_s |s v_k - v_k| <= 1/k.

unbounded_cocycle_demo plays the opposite game on a gapless cyclic family:
per-block almost invariant unit vectors v_n (normalized mean-zero cosine
waves) define b(g) = (g v_n - v_n)_n, and the norms |b(g_m)| for powers
g_m of the coordinatewise shift are tabulated together with monotonicity
flags.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .actions import AffineAction, compose_word
from .config import MAX_GROUP_ORDER
from .errors import InputError, InvariantViolation, ResourceLimitError
from .groups import FiniteGroup
from .spaces import hilbert
from .spectral import spectral_report

__all__ = [
    "TruncatedProduct",
    "BlockRep",
    "IterationTrace",
    "KazhdanDisplacementReport",
    "GrowthTable",
    "block_rep",
    "product_gap",
    "product_kazhdan_lower",
    "gap_projection_inequality_check",
    "almost_invariant_iteration",
    "product_block_action",
    "kazhdan_displacement_check",
    "unbounded_cocycle_demo",
]

_DENSE_CAP = 4096


@dataclass(frozen=True)
class TruncatedProduct:
    """The first `level` groups of a family, acting as a product."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InputError("a truncated product needs at least one component")
        if any(not isinstance(G, FiniteGroup) for G in comps):
            raise InputError("components must be finite groups")
        object.__setattr__(self, "components", comps)

    @property
    def level(self) -> int:
        return len(self.components)

    @property
    def total_dim(self) -> int:
        return sum(G.order for G in self.components)

    def block_slices(self):
        out = []
        off = 0
        for G in self.components:
            out.append(slice(off, off + G.order))
            off += G.order
        return out


class BlockRep:
    """Blockwise left-translation representation on the summed function spaces."""

    def __init__(self, product: TruncatedProduct):
        if product.total_dim > MAX_GROUP_ORDER:
            raise ResourceLimitError(
                f"block representation dimension {product.total_dim} exceeds the cap"
            )
        self.product = product
        self.dim = product.total_dim
        self.slices = product.block_slices()
        # left translation by s permutes coordinates: (s.f)(x) = f(s^-1 x)
        self._perms = [
            {int(s): G.mult[G.inv[s]] for s in G.gens} for G in product.components
        ]

    def generator_tuples(self):
        """All tuples of per-block generators (the product generating set)."""
        return list(itertools.product(*(G.gens for G in self.product.components)))

    def translate(self, choice, v: np.ndarray) -> np.ndarray:
        """Apply the generator tuple `choice` blockwise to v."""
        v = self._vec(v)
        w = np.empty_like(v)
        for perms, sl, s in zip(self._perms, self.slices, choice):
            if int(s) not in perms:
                raise InputError(f"element {s} is not a marked generator of its block")
            w[sl] = v[sl][perms[int(s)]]
        return w

    def _vec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,) or not np.all(np.isfinite(v)):
            raise InputError(f"expected a finite vector of length {self.dim}")
        return v

    def sup_displacement(self, v) -> float:
        """sup over the product generating set of |s v - v|.

        Exact by per-block maximization: the squared move is a sum of
        independent per-block squared moves.
        """
        v = self._vec(v)
        total = 0.0
        for perms, sl in zip(self._perms, self.slices):
            blk = v[sl]
            worst = 0.0
            for perm in perms.values():
                worst = max(worst, float(np.sum((blk[perm] - blk) ** 2)))
            total += worst
        return math.sqrt(total)

    def worst_tuple(self, v):
        """A generator tuple attaining the supremum displacement."""
        v = self._vec(v)
        out = []
        for perms, sl in zip(self._perms, self.slices):
            blk = v[sl]
            best_s, best = None, -1.0
            for s, perm in perms.items():
                m = float(np.sum((blk[perm] - blk) ** 2))
                if m > best:
                    best_s, best = s, m
            out.append(best_s)
        return tuple(out)

    def project(self, v) -> np.ndarray:
        """Orthogonal projection onto blockwise constant vectors."""
        v = self._vec(v)
        w = np.empty_like(v)
        for sl in self.slices:
            w[sl] = np.mean(v[sl])
        return w

    def projection_matrix(self) -> np.ndarray:
        if self.dim > _DENSE_CAP:
            raise ResourceLimitError("projection matrix too large to materialize")
        P = np.zeros((self.dim, self.dim))
        for sl, G in zip(self.slices, self.product.components):
            P[sl, sl] = 1.0 / G.order
        return P

    def generator_matrix(self, choice) -> np.ndarray:
        if self.dim > _DENSE_CAP:
            raise ResourceLimitError("generator matrix too large to materialize")
        M = np.zeros((self.dim, self.dim))
        for perms, sl, s in zip(self._perms, self.slices, choice):
            perm = perms[int(s)]
            rows = np.arange(sl.start, sl.stop)
            M[rows, sl.start + perm] = 1.0
        return M


def block_rep(P: TruncatedProduct) -> BlockRep:
    return BlockRep(P)


def product_gap(P: TruncatedProduct) -> float:
    """Least two-sided averaging gap among the components."""
    return min(spectral_report(G).h_gap for G in P.components)


def product_kazhdan_lower(P: TruncatedProduct) -> float:
    """Kazhdan-type lower bound for the product: min over components."""
    return min(spectral_report(G).kazhdan_lower for G in P.components)


def gap_projection_inequality_check(P: TruncatedProduct, v, slack: float = 1e-8) -> bool:
    """h |p v - v| <= sup_s |s v - v| for the product generating set."""
    h = product_gap(P)
    if not (h > 0) or math.isinf(h):
        raise InputError("inequality needs a finite positive gap")
    rep = block_rep(P)
    lhs = h * float(np.linalg.norm(rep.project(v) - rep._vec(v)))
    return lhs <= rep.sup_displacement(v) + slack


@dataclass(frozen=True)
class IterationTrace:
    ks: np.ndarray
    step_norms: np.ndarray
    step_bounds: np.ndarray
    sup_displacements: np.ndarray
    vectors: np.ndarray
    h: float
    final: np.ndarray
    final_invariance: float


def almost_invariant_iteration(
    P: TruncatedProduct, v0, k0: int, steps: int
) -> IterationTrace:
    """Run the averaging-with-projection iteration from a verified start.

    Preconditions: v0 is a unit vector with sup_s |s v0 - v0| <= 1/k0 and
    k0 >= ceil(2/h).  Every step is checked against the contraction bound
    4/(h k^2) and the almost invariance bound 1/k; violations raise.
    """
    rep = block_rep(P)
    h = product_gap(P)
    if not (h > 0) or math.isinf(h):
        raise InputError("iteration needs a finite positive gap")
    if steps < 1:
        raise InputError("steps must be positive")
    v = rep._vec(v0).copy()
    if abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise InputError("v0 must be a unit vector")
    kmin = math.ceil(2.0 / h - 1e-9)
    if k0 < kmin:
        raise InputError(f"k0 = {k0} is below ceil(2/h) = {kmin}")
    if rep.sup_displacement(v) > 1.0 / k0 + 1e-12:
        raise InputError("v0 is not almost invariant at level 1/k0")

    ks = np.arange(k0, k0 + steps)
    step_norms = np.empty(steps)
    bounds = 4.0 / (h * ks.astype(float) ** 2)
    sups = np.empty(steps)
    vecs = np.empty((steps + 1, rep.dim))
    vecs[0] = v
    for i, k in enumerate(ks):
        sup = rep.sup_displacement(v)
        sups[i] = sup
        if sup > 1.0 / k + 1e-10:
            raise InvariantViolation(
                f"almost invariance lost at k={k}: sup displacement {sup:.3e} > 1/k"
            )
        w = ((k - 2.0) / k) * v + (2.0 / k) * rep.project(v)
        nw = float(np.linalg.norm(w))
        if nw <= 0:
            raise InvariantViolation(f"iteration collapsed to zero at k={k}")
        vnext = w / nw
        stepn = float(np.linalg.norm(vnext - v))
        step_norms[i] = stepn
        if stepn > bounds[i] + 1e-10:
            raise InvariantViolation(
                f"contraction bound violated at k={k}: step {stepn:.3e} > 4/(h k^2)"
            )
        v = vnext
        vecs[i + 1] = v
    final_inv = float(np.linalg.norm(rep.project(v) - v))
    return IterationTrace(
        ks=ks,
        step_norms=step_norms,
        step_bounds=bounds,
        sup_displacements=sups,
        vectors=vecs,
        h=h,
        final=v,
        final_invariance=final_inv,
    )


def product_block_action(P: TruncatedProduct, w=None) -> AffineAction:
    """Affine action of the product generating set on the block space.

    Linear parts are the blockwise translation matrices; translation parts
    form the coboundary of w (zero vector when w is None, giving a linear
    action).  Generator labels are "t0", "t1", ... in the order of
    BlockRep.generator_tuples().
    """
    rep = block_rep(P)
    tuples = rep.generator_tuples()
    if len(tuples) > 512:
        raise ResourceLimitError("too many generator tuples to materialize an action")
    w = np.zeros(rep.dim) if w is None else rep._vec(w)
    linear = {}
    translation = {}
    for i, choice in enumerate(tuples):
        M = rep.generator_matrix(choice)
        linear[f"t{i}"] = M
        translation[f"t{i}"] = w - M @ w
    return AffineAction(hilbert(rep.dim), linear, translation)


def _tuple_order(P: TruncatedProduct, choice) -> int:
    order = 1
    for G, s in zip(P.components, choice):
        cur, m = int(s), 1
        while cur != G.identity:
            cur = int(G.mult[int(s), cur])
            m += 1
        order = order * m // math.gcd(order, m)
    return order


@dataclass(frozen=True)
class KazhdanDisplacementReport:
    eps: float
    c_bound: float
    limit: float
    max_displacement: float
    max_ratio: float
    words_checked: int
    ok: bool

    def __bool__(self) -> bool:
        return self.ok


def kazhdan_displacement_check(
    P: TruncatedProduct,
    action: AffineAction,
    c_bound: float,
    base_point=None,
    max_len: int = 5,
    samples: int = 200,
    seed: int = 0,
) -> KazhdanDisplacementReport:
    """Whole-orbit displacement bound from generator displacements.

    With eps the product Kazhdan lower bound and every generator moving the
    base point by at most c_bound, each sampled word must move it by at
    most 2 c_bound / eps.  The action's generator labels must be "t{i}" in
    the order of the product generator tuples, and each label's affine map
    must have the order of its tuple (this is what ties the linear part to
    the product; a genuinely unbounded translation part fails it).
    """
    rep = block_rep(P)
    tuples = rep.generator_tuples()
    expected = tuple(f"t{i}" for i in range(len(tuples)))
    if tuple(action.labels) != expected:
        raise InputError("action labels do not match the product generator tuples")
    if action.space.dim != rep.dim:
        raise InputError("action dimension does not match the block space")
    d = rep.dim
    for lab, choice in zip(expected, tuples):
        m = _tuple_order(P, choice)
        Pm, tm = compose_word(action, [(lab, 1)] * m)
        if np.max(np.abs(Pm - np.eye(d))) > 1e-8 or np.max(np.abs(tm)) > 1e-8:
            raise InputError(
                f"generator {lab} does not have the product element's order {m}; "
                "the action does not factor through the product"
            )
    eps = product_kazhdan_lower(P)
    if not (eps > 0) or math.isinf(eps):
        raise InputError("displacement bound needs a finite positive Kazhdan bound")
    v = np.zeros(d) if base_point is None else rep._vec(base_point)
    gen_disp = 0.0
    for lab in expected:
        Pw, tw = compose_word(action, [(lab, 1)])
        gen_disp = max(gen_disp, float(np.linalg.norm(Pw @ v + tw - v)))
    if gen_disp > c_bound + 1e-12:
        raise InputError(
            f"generator displacement {gen_disp:.3e} exceeds the stated bound {c_bound}"
        )
    limit = 2.0 * c_bound / eps
    rng = np.random.default_rng(seed)
    max_disp = 0.0
    max_ratio = 0.0
    checked = 0
    for _ in range(samples):
        n = int(rng.integers(1, max_len + 1))
        word = [
            (expected[int(rng.integers(len(expected)))], 1 if rng.random() < 0.5 else -1)
            for _ in range(n)
        ]
        Pw, tw = compose_word(action, word)
        disp = float(np.linalg.norm(Pw @ v + tw - v))
        max_disp = max(max_disp, disp)
        if limit > 0:
            max_ratio = max(max_ratio, disp / limit)
        checked += 1
    return KazhdanDisplacementReport(
        eps=eps,
        c_bound=float(c_bound),
        limit=limit,
        max_displacement=max_disp,
        max_ratio=max_ratio,
        words_checked=checked,
        ok=bool(max_disp <= limit + 1e-9),
    )


def _is_standard_cyclic(G: FiniteGroup) -> bool:
    idx = np.arange(G.order)
    return np.array_equal(G.mult, np.add.outer(idx, idx) % G.order)


@dataclass(frozen=True)
class GrowthTable:
    orders: tuple
    lengths: tuple
    norms: tuple
    gen_norm: float
    block_displacements: tuple
    schedule: tuple
    window_limit: float
    monotone_nondecreasing: bool
    strictly_increasing_in_window: bool


def unbounded_cocycle_demo(groups, N: int, lengths) -> GrowthTable:
    """Tabulate |b(g_m)| for powers of the coordinatewise shift.

    The first N groups must be standard cyclic tables whose orders n_k are
    large enough that the per-block almost invariance 2 sin(pi/n_k) <=
    2^-k holds (this is exactly where a uniform-gap family is refused:
    its blocks cannot be made almost invariant on schedule).  Per block,
    v_k is the normalized mean-zero cosine wave; b(g) stacks the moves
    g v_k - v_k.  The table records |b(g_m)| for each requested power m,
    along with monotonicity flags over the given lengths.
    """
    groups = list(groups)
    if N < 1 or N > len(groups):
        raise InputError("N must select a prefix of the family")
    members = groups[:N]
    lengths = tuple(int(m) for m in lengths)
    if not lengths or any(m < 1 for m in lengths):
        raise InputError("lengths must be positive integers")
    orders = []
    for k, G in enumerate(members):
        if not _is_standard_cyclic(G):
            raise InputError(
                f"member {k} is not a standard cyclic table; the demo needs a gapless cyclic family"
            )
        n = G.order
        if 2.0 * math.sin(math.pi / n) > 2.0 ** (-k) + 1e-12:
            raise InputError(
                f"member {k} (order {n}) cannot meet the almost-invariance schedule "
                f"2 sin(pi/{n}) <= 2^-{k}; the family's gap does not decay"
            )
        orders.append(n)

    waves = []
    for n in orders:
        x = np.arange(n)
        v = np.cos(2.0 * np.pi * x / n)
        v -= np.mean(v)
        waves.append(v / np.linalg.norm(v))

    def b_norm(m: int) -> float:
        total = 0.0
        for n, v in zip(orders, waves):
            moved = np.roll(v, m % n)
            total += float(np.sum((moved - v) ** 2))
        return math.sqrt(total)

    norms = tuple(b_norm(m) for m in lengths)
    gen_norm = b_norm(1)
    block_disp = tuple(
        float(np.linalg.norm(np.roll(v, 1) - v)) for v in waves
    )
    window = max(orders) / 4.0
    monotone = all(b >= a - 1e-12 for a, b in zip(norms, norms[1:]))
    pairs = list(zip(lengths, norms))
    strict = all(
        nb > na + 1e-15
        for (_, na), (mb, nb) in zip(pairs, pairs[1:])
        if mb <= window
    )
    return GrowthTable(
        orders=tuple(orders),
        lengths=lengths,
        norms=norms,
        gen_norm=gen_norm,
        block_displacements=block_disp,
        schedule=tuple(2.0 ** (-k) for k in range(N)),
        window_limit=window,
        monotone_nondecreasing=monotone,
        strictly_increasing_in_window=strict,
    )
