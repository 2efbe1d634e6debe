"""Finite groups as dense index tables, with marked generating sets.

A FiniteGroup stores its full multiplication table (mult[i, j] is the index
of g_i * g_j), the inverse table, the identity index and a tuple of marked
generator indices.  Builders cover cyclic, dihedral and symmetric groups,
SL2 over a prime field with the four elementary generators, direct products
(generated by pairs of factor generators) and the trivial group.

Note that the product generating set S_G x S_H need not generate the product
group (pair two involutions and only the diagonal is reached); the builders
record this in the `generates` flag and word_lengths refuses to run on such
a marked group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .config import MAX_GROUP_ORDER
from .errors import InputError, ResourceLimitError

__all__ = [
    "FiniteGroup",
    "GroupFamily",
    "make_trivial",
    "make_cyclic",
    "make_dihedral",
    "make_symmetric",
    "make_sl2",
    "make_product",
    "validate_group",
    "word_lengths",
    "cayley_adjacency",
    "parse_group_spec",
    "parse_family_spec",
]


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    mult: np.ndarray
    inv: np.ndarray
    identity: int
    gens: tuple
    name: str = ""
    generates: bool = True

    def __post_init__(self):
        mult = np.asarray(self.mult, dtype=np.int32)
        if mult.shape != (self.order, self.order):
            raise InputError("multiplication table has the wrong shape")
        inv = np.asarray(self.inv, dtype=np.int32)
        if inv.shape != (self.order,):
            raise InputError("inverse table has the wrong shape")
        gens = tuple(int(s) for s in self.gens)
        if not gens:
            raise InputError("a marked generating set is required")
        if any(not (0 <= s < self.order) for s in gens):
            raise InputError("generator index out of range")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "inv", inv)
        object.__setattr__(self, "gens", gens)

    def mul(self, i: int, j: int) -> int:
        return int(self.mult[i, j])


def _check_order(n: int):
    if n > MAX_GROUP_ORDER:
        raise ResourceLimitError(f"group order {n} exceeds the cap {MAX_GROUP_ORDER}")


def validate_group(G: FiniteGroup, rng_seed: int = 0, require_generates: bool = True):
    """Structural checks: identity, inverses, symmetry of S, generation.

    Associativity is verified exhaustively up to order 64 and on 10^4 random
    triples beyond that.
    """
    n = G.order
    e = G.identity
    if not np.array_equal(G.mult[e], np.arange(n)) or not np.array_equal(G.mult[:, e], np.arange(n)):
        raise InputError("marked identity is not an identity")
    if not np.array_equal(G.mult[np.arange(n), G.inv], np.full(n, e)):
        raise InputError("inverse table is wrong")
    gen_set = set(G.gens)
    if any(int(G.inv[s]) not in gen_set for s in gen_set):
        raise InputError("generating set is not symmetric")
    if n <= 64:
        m = G.mult
        # m[m, :][i, j, k] = m[m[i, j], k]; m[:, m][i, j, k] = m[i, m[j, k]]
        if not np.array_equal(m[m, :], m[:, m]):
            raise InputError("multiplication table is not associative")
    else:
        rng = np.random.default_rng(rng_seed)
        a, b, c = rng.integers(0, n, size=(3, 10_000))
        if not np.array_equal(G.mult[G.mult[a, b], c], G.mult[a, G.mult[b, c]]):
            raise InputError("multiplication table is not associative")
    if require_generates:
        reached = _bfs_lengths(G)
        if np.any(reached < 0):
            raise InputError(
                f"generators reach only {int(np.sum(reached >= 0))} of {n} elements"
            )


def _bfs_lengths(G: FiniteGroup) -> np.ndarray:
    dist = np.full(G.order, -1, dtype=np.int64)
    dist[G.identity] = 0
    frontier = [G.identity]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for s in G.gens:
            row = G.mult[s, frontier]
            for y in row:
                if dist[y] < 0:
                    dist[y] = d
                    nxt.append(int(y))
        frontier = nxt
    return dist


def word_lengths(G: FiniteGroup) -> np.ndarray:
    """Distance from the identity in the marked Cayley graph, via BFS."""
    dist = _bfs_lengths(G)
    if np.any(dist < 0):
        missing = int(np.sum(dist < 0))
        raise InputError(
            f"the marked set does not generate: {missing} of {G.order} elements unreached"
        )
    return dist


def cayley_adjacency(G: FiniteGroup) -> np.ndarray:
    """Adjacency with multiplicity: entry (x, s x) incremented for each s."""
    n = G.order
    A = np.zeros((n, n), dtype=np.int64)
    cols = np.arange(n)
    for s in G.gens:
        A[cols, G.mult[s, cols]] += 1
    return A


def make_trivial() -> FiniteGroup:
    """Order-1 group; its only generating set is the identity itself."""
    return FiniteGroup(1, np.zeros((1, 1)), np.zeros(1), 0, (0,), name="trivial")


def make_cyclic(n: int) -> FiniteGroup:
    if n < 2:
        raise InputError("cyclic groups here need order at least 2")
    _check_order(n)
    idx = np.arange(n)
    mult = np.add.outer(idx, idx) % n
    inv = (-idx) % n
    gens = (1,) if n == 2 else (1, n - 1)
    return FiniteGroup(n, mult, inv, 0, gens, name=f"cyclic:{n}")


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, elements r^k s^b, generators r, r^-1, s."""
    if n < 2:
        raise InputError("dihedral groups here need rotation order at least 2")
    _check_order(2 * n)
    k = np.arange(2 * n) % n
    b = np.arange(2 * n) // n
    # (k1,b1)*(k2,b2) = (k1 + (-1)^b1 k2 mod n, b1 xor b2)
    sign = np.where(b == 0, 1, -1)
    kk = (k[:, None] + sign[:, None] * k[None, :]) % n
    bb = b[:, None] ^ b[None, :]
    mult = kk + n * bb
    inv_k = np.where(b == 0, (-k) % n, k)
    inv = inv_k + n * b
    gens = (1, n - 1, n) if n > 2 else (1, n)
    return FiniteGroup(2 * n, mult, inv, 0, tuple(dict.fromkeys(gens)), name=f"dihedral:{n}")


def make_symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n letters, generated by an n-cycle (both ways) and
    the transposition of the first two letters."""
    if not (2 <= n <= 7):
        raise InputError("symmetric groups are built for 2 <= n <= 7")
    perms = list(itertools.permutations(range(n)))
    _check_order(len(perms))
    index = {p: i for i, p in enumerate(perms)}
    N = len(perms)
    arr = np.array(perms)
    mult = np.empty((N, N), dtype=np.int32)
    for i, p in enumerate(perms):
        comp = arr[:, list(p)]  # comp[j, x] = p_j[p_i[x]], i.e. p_j after p_i
        mult[i] = [index[tuple(row)] for row in comp]
    # we want mult[i, j] = p_i after p_j, so transpose
    mult = mult.T.copy()
    inv = np.empty(N, dtype=np.int32)
    for i, p in enumerate(perms):
        q = [0] * n
        for x, px in enumerate(p):
            q[px] = x
        inv[i] = index[tuple(q)]
    cycle = tuple((x + 1) % n for x in range(n))
    cycle_inv = tuple((x - 1) % n for x in range(n))
    swap = tuple([1, 0] + list(range(2, n)))
    gens = tuple(dict.fromkeys((index[cycle], index[cycle_inv], index[swap])))
    return FiniteGroup(N, mult, inv, index[tuple(range(n))], gens, name=f"symmetric:{n}")


_SMALL_PRIMES = (3, 5, 7, 11, 13, 17)


def make_sl2(p: int) -> FiniteGroup:
    """SL2 over the field with p elements, p a prime in [3, 17].

    Elements are 2x2 matrices of determinant 1; the marked generators are
    the four elementary matrices with +-1 off the diagonal.  The order is
    p (p^2 - 1).
    """
    if p not in _SMALL_PRIMES:
        raise InputError(f"p must be a prime in {_SMALL_PRIMES}")
    a, b, c, d = np.meshgrid(*(np.arange(p),) * 4, indexing="ij")
    mask = (a * d - b * c) % p == 1
    els = np.stack([a[mask], b[mask], c[mask], d[mask]], axis=1).astype(np.int64)
    N = els.shape[0]
    _check_order(N)
    codes = ((els[:, 0] * p + els[:, 1]) * p + els[:, 2]) * p + els[:, 3]
    lookup = np.full(p ** 4, -1, dtype=np.int32)
    lookup[codes] = np.arange(N, dtype=np.int32)

    mult = np.empty((N, N), dtype=np.int32)
    block = max(1, (2 ** 22) // N)
    for start in range(0, N, block):
        stop = min(start + block, N)
        A1 = els[start:stop, 0, None]
        B1 = els[start:stop, 1, None]
        C1 = els[start:stop, 2, None]
        D1 = els[start:stop, 3, None]
        a2, b2, c2, d2 = els[:, 0], els[:, 1], els[:, 2], els[:, 3]
        ra = (A1 * a2 + B1 * c2) % p
        rb = (A1 * b2 + B1 * d2) % p
        rc = (C1 * a2 + D1 * c2) % p
        rd = (C1 * b2 + D1 * d2) % p
        mult[start:stop] = lookup[((ra * p + rb) * p + rc) * p + rd]

    # inverse of [[a, b], [c, d]] with det 1 is [[d, -b], [-c, a]]
    ia = els[:, 3] % p
    ib = (-els[:, 1]) % p
    ic = (-els[:, 2]) % p
    idd = els[:, 0] % p
    inv = lookup[((ia * p + ib) * p + ic) * p + idd]

    def enc(m):
        return int(((m[0] * p + m[1]) * p + m[2]) * p + m[3])

    gens = tuple(
        int(lookup[enc(m)])
        for m in ((1, 1, 0, 1), (1, p - 1, 0, 1), (1, 0, 1, 1), (1, 0, p - 1, 1))
    )
    identity = int(lookup[enc((1, 0, 0, 1))])
    return FiniteGroup(N, mult, inv, identity, gens, name=f"sl2:{p}")


def make_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Direct product with the marked set S_G x S_H (pairs of generators).

    The pair set need not generate the product; the result's `generates`
    flag records whether it does.
    """
    n = G.order * H.order
    _check_order(n)
    nh = H.order
    mult = (G.mult[:, None, :, None].astype(np.int64) * nh + H.mult[None, :, None, :]).reshape(n, n)
    inv = (G.inv[:, None] * nh + H.inv[None, :]).reshape(n)
    identity = G.identity * nh + H.identity
    gens = tuple(sg * nh + sh for sg in G.gens for sh in H.gens)
    prod = FiniteGroup(
        n,
        mult,
        inv,
        int(identity),
        gens,
        name=f"prod({G.name or 'G'},{H.name or 'H'})",
    )
    reaches = not np.any(_bfs_lengths(prod) < 0)
    return FiniteGroup(n, prod.mult, prod.inv, prod.identity, prod.gens, prod.name, reaches)


@dataclass(frozen=True)
class GroupFamily:
    """A named family: builder kind plus the parameter list."""

    kind: str
    params: tuple

    def build(self) -> list:
        return [_build_one(self.kind, p) for p in self.params]


_BUILDERS = {
    "cyclic": make_cyclic,
    "dihedral": make_dihedral,
    "symmetric": make_symmetric,
    "sl2": make_sl2,
}


def _build_one(kind: str, param) -> FiniteGroup:
    if kind == "trivial":
        return make_trivial()
    if kind not in _BUILDERS:
        raise InputError(f"unknown group kind {kind!r}")
    return _BUILDERS[kind](int(param))


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse a single group spec: "cyclic:6", "sl2:7", "prod:cyclic:3,cyclic:5"."""
    spec = spec.strip()
    if spec == "trivial":
        return make_trivial()
    if spec.startswith("prod:"):
        body = spec[len("prod:"):]
        parts = body.split(",")
        if len(parts) != 2:
            raise InputError("prod takes exactly two comma-separated group specs")
        return make_product(parse_group_spec(parts[0]), parse_group_spec(parts[1]))
    if ":" not in spec:
        raise InputError(f"bad group spec {spec!r}")
    kind, _, arg = spec.partition(":")
    try:
        param = int(arg)
    except ValueError as exc:
        raise InputError(f"bad group parameter in {spec!r}") from exc
    return _build_one(kind, param)


def parse_family_spec(spec: str):
    """Parse a family spec into (GroupFamily, groups).

    "cyclic:10..100:10" is a range (inclusive, with step), "sl2:3,5,7" a
    list, "dihedral:4" a singleton, and "prod:a,b" a one-member product
    family.
    """
    spec = spec.strip()
    if spec.startswith("prod:") or spec == "trivial":
        g = parse_group_spec(spec)
        fam = GroupFamily("explicit", (spec,))
        return fam, [g]
    if ":" not in spec:
        raise InputError(f"bad family spec {spec!r}")
    kind, _, body = spec.partition(":")
    if ".." in body:
        rng, _, step = body.partition(":")
        lo, _, hi = rng.partition("..")
        try:
            lo, hi = int(lo), int(hi)
            step = int(step) if step else 1
        except ValueError as exc:
            raise InputError(f"bad range in family spec {spec!r}") from exc
        if step <= 0 or hi < lo:
            raise InputError(f"empty range in family spec {spec!r}")
        params = tuple(range(lo, hi + 1, step))
    else:
        try:
            params = tuple(int(tok) for tok in body.split(","))
        except ValueError as exc:
            raise InputError(f"bad parameter list in family spec {spec!r}") from exc
    if not params:
        raise InputError(f"empty family spec {spec!r}")
    fam = GroupFamily(kind, params)
    return fam, fam.build()
