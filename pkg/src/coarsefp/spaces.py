"""Ambient normed spaces and their convexity data.

A space is described by a :class:`SpaceSpec` (Hilbert, i.e. Euclidean, or a
finite-dimensional lp space with 1 < p < infinity).  Points are plain numpy
arrays.  Besides distances and midpoints, the module exposes the convexity
modulus delta(eps), which quantifies how far the midpoint of a well separated
pair must sink below the radius of a ball containing both, and the stability
coefficient kappa(eps) derived from it, which controls how far a minimax
centre can drift when the set it covers is thinned out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import InputError

__all__ = [
    "SpaceSpec",
    "hilbert",
    "lp",
    "as_point",
    "norm",
    "distance",
    "midpoint",
    "convexity_modulus",
    "stability_coefficient",
    "DEFAULT_TOL",
]


@dataclass(frozen=True)
class SpaceSpec:
    """Description of the ambient space.

    kind is "hilbert" or "lp"; p is required (and only allowed) for "lp".
    """

    kind: str
    dim: int
    p: float | None = None

    def __post_init__(self):
        if self.kind not in ("hilbert", "lp"):
            raise InputError(f"unknown space kind {self.kind!r}")
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InputError(f"dimension must be a positive integer, got {self.dim!r}")
        if self.kind == "lp":
            if self.p is None or not (1.0 < float(self.p) < math.inf):
                raise InputError(f"lp space needs a finite exponent p > 1, got {self.p!r}")
        elif self.p is not None:
            raise InputError("a Hilbert space takes no exponent")


def hilbert(dim: int) -> SpaceSpec:
    return SpaceSpec("hilbert", dim)


def lp(p: float, dim: int) -> SpaceSpec:
    return SpaceSpec("lp", dim, float(p))


def as_point(space: SpaceSpec, x) -> np.ndarray:
    """Validate x as a point of the space and return it as a float array."""
    arr = np.asarray(x, dtype=float)
    if arr.shape != (space.dim,):
        raise InputError(f"point of shape {arr.shape} does not live in dimension {space.dim}")
    if not np.all(np.isfinite(arr)):
        raise InputError("point has non-finite coordinates")
    return arr


def norm(space: SpaceSpec, u: np.ndarray) -> float:
    u = np.asarray(u, dtype=float)
    if space.kind == "hilbert":
        return float(np.linalg.norm(u))
    return float(np.linalg.norm(u, ord=space.p))


def distance(space: SpaceSpec, x, y) -> float:
    return norm(space, as_point(space, x) - as_point(space, y))


def midpoint(space: SpaceSpec, x, y) -> np.ndarray:
    """Metric midpoint.  In these norms it is the arithmetic mean."""
    return (as_point(space, x) + as_point(space, y)) / 2.0


def convexity_modulus(space: SpaceSpec, eps: float) -> float:
    """Modulus of uniform convexity delta(eps) for 0 < eps <= 2.

    Hilbert:      1 - sqrt(1 - eps^2/4)            (exact)
    lp, p >= 2:   1 - (1 - (eps/2)^p)^(1/p)        (exact, from Clarkson)
    lp, 1 < p < 2: (p-1) * eps^2 / 8               (classical lower bound;
                   the sharp modulus has no closed form in this range)

    Every returned value is a valid modulus: whenever |x-y| >= eps * M with
    both |x-z|, |y-z| <= M, the midpoint m of x,y satisfies
    |z-m| <= (1 - delta) * M.
    """
    eps = float(eps)
    if not (0.0 < eps <= 2.0):
        raise InputError(f"eps must lie in (0, 2], got {eps}")
    if space.kind == "hilbert":
        d = 1.0 - math.sqrt(max(0.0, 1.0 - eps * eps / 4.0))
    elif space.p >= 2.0:
        d = 1.0 - (1.0 - (eps / 2.0) ** space.p) ** (1.0 / space.p)
    else:
        d = (space.p - 1.0) * eps * eps / 8.0
    if not (0.0 < d <= 1.0):
        raise InputError(f"modulus {d} fell outside (0, 1]")
    return d


def stability_coefficient(space: SpaceSpec, eps: float) -> float:
    """Coefficient kappa(eps) in the centre stability bound, 0 < eps < 2.

    For nested bounded sets B inside A the minimax centres satisfy
    |Z(A) Z(B)| <= eps * rho(A) + kappa(eps) * (rho(A) - rho(B)).
    """
    eps = float(eps)
    if not (0.0 < eps < 2.0):
        raise InputError(f"eps must lie in (0, 2), got {eps}")
    d = convexity_modulus(space, eps)
    denom = 1.0 - math.exp(-math.log(eps / 2.0) * math.log(1.0 - d) / math.log(2.0))
    return (2.0 - eps) / denom
