"""Exact piecewise-linear lifts of orientation-preserving circle maps.

A lift is an increasing homeomorphism of the line commuting with integer
translation, f(x + n) = f(x) + n.  We store the restriction to [0, 1) as
breakpoints 0 = x_0 < x_1 < ... < x_k < 1 with values f(x_i), the value
f(1) = f(0) + 1 being implied; all coordinates are exact rationals.

Composition and inversion are computed exactly by locating the corner
preimages, so group identities hold structurally after canonicalization
(collinear interior breakpoints are merged; x = 0 is always kept).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .config import COMPOSITION_CAP
from .errors import CertificateError, InputError, ResourceLimitError

__all__ = [
    "PLLift",
    "CertificateReport",
    "OBReport",
    "identity_lift",
    "translation_lift",
    "standard_a",
    "standard_b",
    "evaluate",
    "compose",
    "invert",
    "commutator",
    "power",
    "corollary_certificate",
    "ob_bounded_check",
]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("floats are not exact; pass Fraction, int or string")
    try:
        return Fraction(x)
    except (ValueError, TypeError) as exc:
        raise InputError(f"not a rational value: {x!r}") from exc


@dataclass(frozen=True)
class PLLift:
    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bps = tuple(_frac(x) for x in self.breakpoints)
        vals = tuple(_frac(v) for v in self.values)
        if len(bps) != len(vals) or not bps:
            raise InputError("breakpoints and values must be nonempty and match")
        if bps[0] != 0:
            raise InputError("the first breakpoint must be 0")
        if any(not (0 <= x < 1) for x in bps):
            raise InputError("breakpoints must lie in [0, 1)")
        if any(b <= a for a, b in zip(bps, bps[1:])):
            raise InputError("breakpoints must be strictly increasing")
        closed_vals = vals + (vals[0] + 1,)
        if any(b <= a for a, b in zip(closed_vals, closed_vals[1:])):
            raise InputError("values must be strictly increasing up to f(0)+1")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.breakpoints)


def _canonical(bps, vals) -> PLLift:
    """Drop interior breakpoints whose adjacent slopes agree."""
    k = len(bps)
    pts = list(zip(bps, vals)) + [(Fraction(1), vals[0] + 1)]
    keep = [0]
    for j in range(1, k):
        (xa, va), (xb, vb), (xc, vc) = pts[j - 1], pts[j], pts[j + 1]
        left = (vb - va) / (xb - xa)
        right = (vc - vb) / (xc - xb)
        if left != right:
            keep.append(j)
    return PLLift(tuple(bps[j] for j in keep), tuple(vals[j] for j in keep))


def identity_lift() -> PLLift:
    return PLLift((Fraction(0),), (Fraction(0),))


def translation_lift(p) -> PLLift:
    """The lift x -> x + p."""
    return PLLift((Fraction(0),), (_frac(p),))


def standard_a() -> PLLift:
    """The lift x -> x - 1/4."""
    return translation_lift(Fraction(-1, 4))


def standard_b() -> PLLift:
    """Slope 3 on [0, 1/4], slope 1/3 on [1/4, 1], fixing the integers."""
    return PLLift((Fraction(0), Fraction(1, 4)), (Fraction(0), Fraction(3, 4)))


def evaluate(f: PLLift, x) -> Fraction:
    """Exact value of the lift at a rational point."""
    x = _frac(x)
    n = math.floor(x)
    r = x - n
    i = bisect_right(f.breakpoints, r) - 1
    x0 = f.breakpoints[i]
    v0 = f.values[i]
    if i + 1 < len(f.breakpoints):
        x1, v1 = f.breakpoints[i + 1], f.values[i + 1]
    else:
        x1, v1 = Fraction(1), f.values[0] + 1
    return v0 + (v1 - v0) * (r - x0) / (x1 - x0) + n


def _inverse_evaluate(f: PLLift, y) -> Fraction:
    """Exact x with f(x) = y."""
    y = _frac(y)
    v0 = f.values[0]
    # shift y into [f(0), f(0)+1)
    n = math.floor(y - v0)
    r = y - n
    vals = list(f.values) + [v0 + 1]
    i = bisect_right(vals, r) - 1
    if i == len(f.breakpoints):
        i -= 1
    xa = f.breakpoints[i]
    xb = f.breakpoints[i + 1] if i + 1 < len(f.breakpoints) else Fraction(1)
    va, vb = vals[i], vals[i + 1]
    return xa + (xb - xa) * (r - va) / (vb - va) + n


def invert(f: PLLift) -> PLLift:
    """Exact inverse lift: corners of the inverse are the corner values mod 1."""
    bps = sorted({Fraction(0)} | {v - math.floor(v) for v in f.values})
    vals = [_inverse_evaluate(f, b) for b in bps]
    return _canonical(tuple(bps), tuple(vals))


def compose(f: PLLift, g: PLLift) -> PLLift:
    """Exact composition f after g.

    Corners of f(g(x)) sit at corners of g and at preimages under g of
    corners of f, taken mod 1.
    """
    cand = set(g.breakpoints)
    for xf in f.breakpoints:
        t = _inverse_evaluate(g, xf)
        cand.add(t - math.floor(t))
    cand.add(Fraction(0))
    bps = tuple(sorted(cand))
    if len(bps) > COMPOSITION_CAP:
        raise ResourceLimitError(
            f"composition would carry {len(bps)} breakpoints (cap {COMPOSITION_CAP})"
        )
    vals = tuple(evaluate(f, evaluate(g, x)) for x in bps)
    return _canonical(bps, vals)


def commutator(f: PLLift, g: PLLift) -> PLLift:
    """f g f^-1 g^-1 as lifts, the rightmost factor acting first."""
    return compose(compose(f, g), compose(invert(f), invert(g)))


def power(f: PLLift, n: int) -> PLLift:
    """n-fold composition; negative n inverts first."""
    if n < 0:
        return power(invert(f), -n)
    out = identity_lift()
    for _ in range(n):
        out = compose(f, out)
    return out


@dataclass(frozen=True)
class CertificateReport:
    commutator_ab_at_0: Fraction
    commutator_inv_at_half: Fraction
    w_at_0: Fraction
    n_max: int
    orbit_exact: bool
    displacements: tuple

    @property
    def ok(self) -> bool:
        return (
            self.commutator_ab_at_0 == Fraction(1, 2)
            and self.commutator_inv_at_half == 1
            and self.w_at_0 == 1
            and self.orbit_exact
        )


def corollary_certificate(n_max: int = 100) -> CertificateReport:
    """Exact orbit certificate for the two standard lifts.

    Builds a(x) = x - 1/4 and the slope-3/slope-1/3 map b, then verifies
    with zero tolerance: the two defining formulas of b agree at the
    interior corner, [a,b](0) = 1/2, [b^-1,a^-1](1/2) = 1, and the word
    w = [b^-1,a^-1][a,b] satisfies w^n(0) = n for n = 1..n_max.  Any
    mismatch raises CertificateError.
    """
    if n_max < 1:
        raise InputError("n_max must be positive")
    a = standard_a()
    b = standard_b()

    # b is x + 2{x} for {x} <= 1/4 and x + 2/3 - (2/3){x} beyond; both
    # formulas must give 3/4 at the corner, and b must match them exactly.
    corner = Fraction(1, 4)
    left = corner + 2 * corner
    right = corner + Fraction(2, 3) - Fraction(2, 3) * corner
    if left != right or evaluate(b, corner) != left:
        raise CertificateError("the two defining formulas of b disagree at the corner")
    for r in (Fraction(0), Fraction(1, 8), Fraction(1, 4)):
        if evaluate(b, r) != r + 2 * r:
            raise CertificateError(f"b deviates from its first formula at {r}")
    for r in (Fraction(1, 4), Fraction(1, 2), Fraction(7, 8)):
        if evaluate(b, r) != r + Fraction(2, 3) - Fraction(2, 3) * r:
            raise CertificateError(f"b deviates from its second formula at {r}")

    c1 = commutator(a, b)
    c2 = commutator(invert(b), invert(a))
    v1 = evaluate(c1, 0)
    v2 = evaluate(c2, Fraction(1, 2))
    w = compose(c2, c1)
    w0 = evaluate(w, 0)
    if v1 != Fraction(1, 2):
        raise CertificateError(f"[a,b](0) = {v1}, expected 1/2")
    if v2 != 1:
        raise CertificateError(f"[b^-1,a^-1](1/2) = {v2}, expected 1")
    if w0 != 1:
        raise CertificateError(f"w(0) = {w0}, expected 1")

    x = Fraction(0)
    disps = []
    orbit_exact = True
    for n in range(1, n_max + 1):
        x = evaluate(w, x)
        disps.append(abs(x))
        if x != n:
            orbit_exact = False
            raise CertificateError(f"w^{n}(0) = {x}, expected {n}")
    return CertificateReport(
        commutator_ab_at_0=v1,
        commutator_inv_at_half=v2,
        w_at_0=w0,
        n_max=n_max,
        orbit_exact=orbit_exact,
        displacements=tuple(disps),
    )


@dataclass(frozen=True)
class OBReport:
    max_abs_at_0: Fraction
    bound: Fraction
    bounded: bool

    def __bool__(self) -> bool:
        return self.bounded


def ob_bounded_check(lifts, bound) -> OBReport:
    """Boundedness of a set of lifts via the values at 0.

    A set of lifts is bounded exactly when its orbit of 0 is a bounded set
    of rationals; the check reports max |f(0)| against the supplied bound.
    """
    bound = _frac(bound)
    if bound < 0:
        raise InputError("bound must be nonnegative")
    vals = [abs(evaluate(f, 0)) for f in lifts]
    m = max(vals) if vals else Fraction(0)
    return OBReport(max_abs_at_0=m, bound=bound, bounded=bool(m <= bound))
