"""Averaging operators on finite groups and their spectral gaps.

For a finite group with symmetric generating set S, the averaging operator
M = (1/|S|) sum_s s acts on functions over the group; its matrix is the
normalized Cayley adjacency.  The unnormalized Laplacian is D = |S| (I - M).
Three numbers summarize the gap structure:

  h_gap   largest h with every eigenvalue of M in [h-1, 1-h] or equal to 1
  gamma   smallest nonzero eigenvalue of D
  kazhdan_lower  sqrt(2 gamma / |S|), a certified lower bound on the
                 Kazhdan constant of (G, S) via averaging over S

h_gap is two-sided on purpose: a bipartite Cayley graph has -1 in the
spectrum and h_gap = 0 even when 1 - lambda_2 is large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import MAX_GROUP_ORDER
from .errors import InputError, InvariantViolation, ResourceLimitError
from .groups import FiniteGroup, GroupFamily, cayley_adjacency, make_product

__all__ = [
    "SpectralReport",
    "ExpanderReport",
    "TensorGapResult",
    "averaging_operator",
    "spectrum",
    "spectral_report",
    "expander_check",
    "tensor_gap_check",
    "gap_certificate",
]

_ONE_TOL = 1e-9


def averaging_operator(G: FiniteGroup) -> np.ndarray:
    """Normalized Cayley adjacency; symmetric and doubly stochastic."""
    A = cayley_adjacency(G)
    if not np.array_equal(A, A.T):
        raise InputError("generating set is not symmetric")
    return A / float(len(G.gens))


def spectrum(M: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a symmetric real matrix."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError("spectrum needs a square matrix")
    scale = max(1.0, float(np.max(np.abs(M))))
    if np.max(np.abs(M - M.T)) > 1e-9 * scale:
        raise InputError("matrix is not symmetric")
    return np.linalg.eigvalsh(M)


@dataclass(frozen=True)
class SpectralReport:
    group: str
    order: int
    degree: int
    eigenvalues: np.ndarray
    h_gap: float
    gamma: float
    kazhdan_lower: float


def _two_sided_gap(eigs: np.ndarray) -> float:
    rest = eigs[np.abs(eigs - 1.0) > _ONE_TOL]
    if rest.size == 0:
        return math.inf
    # the spectrum lies in [-1, 1]; a negative gap is pure roundoff
    return max(0.0, float(min(1.0 - np.max(rest), 1.0 + np.min(rest))))


def spectral_report(G: FiniteGroup) -> SpectralReport:
    """Full gap summary for one group.

    The order-1 group has spectrum {1} and no nonzero modes; both gaps are
    reported as +inf sentinels.
    """
    if G.order > MAX_GROUP_ORDER:
        raise ResourceLimitError(
            f"group order {G.order} exceeds the cap {MAX_GROUP_ORDER}"
        )
    M = averaging_operator(G)
    eigs = spectrum(M)
    if eigs[-1] > 1.0 + 1e-8 or eigs[0] < -1.0 - 1e-8:
        raise InvariantViolation("averaging spectrum escapes [-1, 1]")
    if abs(eigs[-1] - 1.0) > 1e-8:
        raise InvariantViolation("constant vector lost: top eigenvalue is not 1")
    k = len(G.gens)
    h_gap = _two_sided_gap(eigs)
    lap = k * (1.0 - eigs)
    nonzero = lap[lap > 1e-8 * k]
    gamma = float(np.min(nonzero)) if nonzero.size else math.inf
    kaz = math.sqrt(2.0 * gamma / k) if math.isfinite(gamma) else math.inf
    return SpectralReport(
        group=G.name or "group",
        order=G.order,
        degree=k,
        eigenvalues=eigs,
        h_gap=h_gap,
        gamma=gamma,
        kazhdan_lower=kaz,
    )


@dataclass(frozen=True)
class ExpanderReport:
    family: str
    members: tuple
    h_gaps: tuple
    inf_gap: float
    threshold: float
    verdict: bool


def expander_check(family: GroupFamily, groups, threshold: float) -> ExpanderReport:
    """Per-member two-sided gaps, their infimum, and the threshold verdict."""
    if threshold < 0:
        raise InputError("threshold must be nonnegative")
    reports = [spectral_report(G) for G in groups]
    gaps = tuple(r.h_gap for r in reports)
    inf_gap = min(gaps) if gaps else math.inf
    return ExpanderReport(
        family=f"{family.kind}:{','.join(str(p) for p in family.params)}",
        members=tuple(r.group for r in reports),
        h_gaps=gaps,
        inf_gap=inf_gap,
        threshold=float(threshold),
        verdict=bool(inf_gap >= threshold),
    )


@dataclass(frozen=True)
class TensorGapResult:
    eps: float
    contained: bool
    degenerate: bool
    product_spectrum: np.ndarray
    cross_checked: bool

    def __bool__(self) -> bool:
        return self.contained


def tensor_gap_check(G1: FiniteGroup, G2: FiniteGroup) -> TensorGapResult:
    """Check that the product group keeps the smaller of the two gaps.

    The Cayley adjacency of G1 x G2 over the pair set S1 x S2 is the
    Kronecker product of the factor adjacencies, so the product spectrum is
    exactly the multiset of pairwise eigenvalue products.  With eps the
    smaller factor gap, every product eigenvalue must land in
    [eps-1, 1-eps] or at 1 (slack 1e-9).

    When either factor gap is 0 (bipartite factor, say) the containment is
    trivially true; the result is flagged degenerate.  When the product
    order is within the table cap, the eigenvalue-product multiset is
    cross-checked against a directly built product table.
    """
    r1 = spectral_report(G1)
    r2 = spectral_report(G2)
    eps = min(r1.h_gap, r2.h_gap)
    prod = np.sort(np.multiply.outer(r1.eigenvalues, r2.eigenvalues).ravel())

    cross_checked = False
    if G1.order * G2.order <= MAX_GROUP_ORDER:
        direct = spectral_report(make_product(G1, G2)).eigenvalues
        if np.max(np.abs(np.sort(direct) - prod)) > 1e-8:
            raise InvariantViolation(
                "product spectrum disagrees with eigenvalue products"
            )
        cross_checked = True

    if math.isinf(eps):
        contained = bool(np.all(np.abs(prod - 1.0) <= _ONE_TOL))
        degenerate = True
    else:
        near_one = np.abs(prod - 1.0) <= _ONE_TOL
        inside = (prod <= 1.0 - eps + 1e-9) & (prod >= eps - 1.0 - 1e-9)
        contained = bool(np.all(near_one | inside))
        degenerate = eps <= 1e-12
    return TensorGapResult(
        eps=float(eps),
        contained=contained,
        degenerate=degenerate,
        product_spectrum=prod,
        cross_checked=cross_checked,
    )


def gap_certificate(G: FiniteGroup, gamma: float) -> bool:
    """True iff every Laplacian eigenvalue x satisfies x (x - gamma) >= -1e-8.

    Equivalently each eigenvalue is 0 or at least gamma (up to tolerance),
    which is the positivity of D^2 - gamma D on functions over the group.
    """
    if gamma < 0:
        raise InputError("gamma must be nonnegative")
    r = spectral_report(G)
    lap = r.degree * (1.0 - r.eigenvalues)
    return bool(np.all(lap * (lap - gamma) >= -1e-8))
