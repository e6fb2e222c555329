"""Relative difference sets in Z_4^n with forbidden subgroup 2 Z_4^n.

A set D of 2^n elements is an RDS here when the 2^n (2^n - 1) ordered
differences of distinct elements hit every element outside the subgroup
N = {(0, b)} exactly once and never land in N \\ {0}.  Such a D is a
transversal of the N-cosets, so it is the graph {(d, h(d))} of a vector
function h, and D is an RDS exactly when h is planar.

Equivalence of two RDSs (one is carried to the other by an automorphism
followed by a translation) is decided through the product criterion: D1
and D2 are automorphism-equivalent iff some invertible M satisfies
M(x) *_{h2} M(y) = M(x *_{h1} y), where * is the symmetric product of
the representation.  Translations enter as one loop over the coset part
and one derived constant, and the witness automorphism is rebuilt from
M and re-verified before it is returned.
"""

from __future__ import annotations

from .errors import DomainError, InternalError, ResourceError
from .gf2n import mat_transpose
from .planar import star_table
from .z4group import ZERO, Aut, Z4, aut_apply, make_aut, z4_add, z4_neg, z4_pack

EQUIV_MAX_N = 5


def rds_from_h(h) -> tuple[Z4, ...]:
    q = len(h)
    n = q.bit_length() - 1
    if q != 1 << n:
        raise DomainError("h table length must be a power of 2")
    for v in h:
        if v < 0 or v >= q:
            raise DomainError(f"h value 0x{v:x} out of range")
    return tuple(Z4(d, h[d]) for d in range(q))


def infer_n(D) -> int:
    size = len(D)
    n = size.bit_length() - 1
    if size != 1 << n or size < 2:
        raise DomainError(f"an RDS in Z_4^n has 2^n elements, got {size}")
    return n


def h_from_rds(D) -> list[int]:
    """Read off the transversal function; fails on a non-transversal."""
    n = infer_n(D)
    q = 1 << n
    h = [-1] * q
    for el in D:
        if (el.a | el.b) >> n or el.a < 0 or el.b < 0:
            raise DomainError(f"{el} is not in Z_4^{n}")
        if h[el.a] >= 0:
            raise DomainError(f"duplicate coset representative a=0x{el.a:x}")
        h[el.a] = el.b
    missing = next((a for a in range(q) if h[a] < 0), None)
    if missing is not None:
        raise DomainError(f"no representative for coset a=0x{missing:x}")
    return h


def verify_rds(D) -> bool:
    """Exact multiset check of all ordered differences of distinct elements."""
    elems = sorted(set(D))
    n = infer_n(D)
    if len(elems) != len(D):
        return False
    q = 1 << n
    for el in elems:
        if (el.a | el.b) >> n or el.a < 0 or el.b < 0:
            raise DomainError(f"{el} is not in Z_4^{n}")
    seen = bytearray(q * q)
    for u in elems:
        for v in elems:
            if u is v:
                continue
            d = z4_add(u, z4_neg(v))
            if d.a == 0:
                return False
            w = z4_pack(d, n)
            if seen[w]:
                return False
            seen[w] = 1
    return True


def translate(D, g: Z4) -> tuple[Z4, ...]:
    return tuple(sorted(z4_add(el, g) for el in D))


def apply_aut(phi: Aut, D) -> tuple[Z4, ...]:
    return tuple(sorted(aut_apply(phi, el) for el in D))


# -- equivalence search -----------------------------------------------------


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.nodes = 0

    def spend(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise ResourceError(
                f"equivalence search budget exhausted after {self.nodes - 1} nodes"
            )


def _search_product_map(t1, t2, n, fixed_c, budget):
    """Backtrack over images of e_0..e_{n-1} looking for invertible M with
    M(x *1 y) = M(x) *2 M(y) + c for all x, y.

    Returns (images, c) where images is the full table of M, or None.
    Candidates are tried in increasing word order, so the first witness
    is deterministic.  Partial maps are pruned on every product that is
    already inside the spanned subspace.
    """
    q = 1 << n
    m = [-1] * q
    m[0] = 0
    fail = object()

    def consistent(span, c):
        for x in span:
            row1 = t1[x]
            row2 = t2[m[x]]
            for y in span:
                z = row1[y]
                if m[z] < 0:
                    continue
                val = m[z] ^ row2[m[y]]
                if c is None:
                    c = val
                elif val != c:
                    return fail
        return c

    def rec(k, span, img_span, c):
        budget.spend()
        if k == n:
            return list(m), c
        bk = 1 << k
        for w in range(1, q):
            if w in img_span:
                continue
            new = [s ^ bk for s in span]
            for s, t in zip(span, new):
                m[t] = m[s] ^ w
            c2 = consistent(span + new, c)
            if c2 is not fail:
                got = rec(k + 1, span + new, img_span | {i ^ w for i in img_span}, c2)
                if got is not None:
                    return got
            for t in new:
                m[t] = -1
        return None

    return rec(0, [0], {0}, fixed_c)


def _matrix_from_images(m, n):
    cols = [m[1 << i] for i in range(n)]
    return mat_transpose(cols, n)


def _rebuild_witness(D1, h1, h_target, m, c, n):
    """Recover (U, V) from the product map, following the constructive
    direction of the equivalence criterion, and hand back the automorphism."""
    q = 1 << n
    U = _matrix_from_images(m, n)
    half = apply_aut(make_aut(U, [0] * n), D1)
    hp = h_from_rds(half)
    nprime = [hp[x] ^ h_target[x] ^ c for x in range(q)]
    for x in range(q):
        for y in range(q):
            if nprime[x ^ y] != nprime[x] ^ nprime[y]:
                raise InternalError("correction map is not additive")
    ncols = [nprime[m[1 << i]] for i in range(n)]
    V = mat_transpose(ncols, n)
    return make_aut(U, V)


def _checked_rds(D, name):
    D = tuple(sorted(set(D)))
    if not verify_rds(D):
        raise DomainError(f"{name} is not a relative difference set")
    return D


def are_equivalent(D1, D2, budget: int | None = 2_000_000):
    """Search for (phi, g) with apply_aut(phi, D1) == translate(D2, g).

    Returns the witness pair, re-verified end to end, or None.  The walk
    is exhaustive over coset translations and basis-image matrices, so a
    None answer is a proof of inequivalence.
    """
    D1 = _checked_rds(D1, "D1")
    D2 = _checked_rds(D2, "D2")
    n = infer_n(D1)
    if infer_n(D2) != n:
        raise DomainError("D1 and D2 live in different groups")
    if n > EQUIV_MAX_N:
        raise ResourceError(f"exhaustive equivalence search is capped at n={EQUIV_MAX_N}")
    q = 1 << n
    h1 = h_from_rds(D1)
    t1 = star_table(h1)
    state = _Budget(budget)
    for g1 in range(q):
        shifted = translate(D2, Z4(g1, 0))
        h2 = h_from_rds(shifted)
        got = _search_product_map(t1, star_table(h2), n, None, state)
        if got is None:
            continue
        m, c = got
        if c is None:
            c = 0
        phi = _rebuild_witness(D1, h1, h2, m, c, n)
        g = Z4(g1, c)
        if apply_aut(phi, D1) != translate(D2, g):
            raise InternalError("rebuilt witness failed re-verification")
        return phi, g
    return None


def are_equivalent_semifield(D1, D2, budget: int | None = 2_000_000):
    """Translation-free variant for semifield RDSs containing 0.

    For those inputs an equivalence, if any, can always be realized by an
    automorphism alone, so only the product criterion at zero shift is
    searched.  Returns the automorphism or None.
    """
    from .planar import is_presemifield

    D1 = _checked_rds(D1, "D1")
    D2 = _checked_rds(D2, "D2")
    n = infer_n(D1)
    if infer_n(D2) != n:
        raise DomainError("D1 and D2 live in different groups")
    if n > EQUIV_MAX_N:
        raise ResourceError(f"exhaustive equivalence search is capped at n={EQUIV_MAX_N}")
    if ZERO not in D1 or ZERO not in D2:
        raise DomainError("both sets must contain 0")
    h1 = h_from_rds(D1)
    h2 = h_from_rds(D2)
    if not is_presemifield(h1) or not is_presemifield(h2):
        raise DomainError("both sets must be semifield RDSs")
    got = _search_product_map(star_table(h1), star_table(h2), n, 0, _Budget(budget))
    if got is None:
        return None
    m, c = got
    phi = _rebuild_witness(D1, h1, h2, m, c, n)
    if apply_aut(phi, D1) != D2:
        raise InternalError("rebuilt witness failed re-verification")
    return phi
