"""Planar functions in characteristic 2 and transversal representations.

Two equivalent encodings of the same object live here.  A vector
function h maps F_2^n to F_2^n as a table of 2^n packed words; it is the
second half of the transversal {(d, h(d))} of Z_4^n.  A field function f
maps F_{2^n} to itself, table indexed by field element.  They are linked
through the context basis by

    f(x) = h(x)^2 + mu(x),      mu(x) = sum_{i<j} x_i x_j xi_i xi_j,

and h is planar in the difference sense

    x |-> h(x + a) + h(x) + (x & a)   bijective for every a != 0

exactly when f is planar in the field sense

    x |-> f(x + a) + f(x) + x a       bijective for every a != 0.

The field product of two elements decomposes over the basis as
x y = odot(x, y)^2 + mu(x+y) + mu(x) + mu(y), where odot recombines the
shared coordinates; that identity is what makes the bridge work.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DomainError
from .gf2n import GF2n


def _check_table(t, q: int, what: str = "table") -> None:
    if len(t) != q:
        raise DomainError(f"{what} must have {q} entries, got {len(t)}")
    for v in t:
        if v < 0 or v >= q:
            raise DomainError(f"{what} entry 0x{v:x} out of range")


def is_permutation(vals) -> bool:
    """True when vals hits every index 0..len-1 exactly once."""
    occ = 0
    for v in vals:
        occ |= 1 << v
    return occ == (1 << len(vals)) - 1


# -- vector-side (F_2^n) ----------------------------------------------------


def delta(h, a: int):
    """The difference table x |-> h(x+a) + h(x) + (x & a)."""
    return [h[x ^ a] ^ h[x] ^ (x & a) for x in range(len(h))]


def is_planar_h(h) -> bool:
    q = len(h)
    if q <= 64:
        target = (1 << q) - 1
        for a in range(1, q):
            occ = 0
            for x in range(q):
                occ |= 1 << (h[x ^ a] ^ h[x] ^ (x & a))
            if occ != target:
                return False
        return True
    hv = np.asarray(h, dtype=np.int32)
    xs = np.arange(q, dtype=np.int32)
    seen = np.empty(q, dtype=bool)
    for a in range(1, q):
        vals = hv[xs ^ a] ^ hv ^ (xs & a)
        seen[:] = False
        seen[vals] = True
        if not seen.all():
            return False
    return True


def star_value(h, x: int, y: int) -> int:
    """The symmetric product x * y = h(x+y) + h(x) + h(y) + (x & y)."""
    return h[x ^ y] ^ h[x] ^ h[y] ^ (x & y)


def star_table(h):
    q = len(h)
    return [[h[x ^ y] ^ h[x] ^ h[y] ^ (x & y) for y in range(q)] for x in range(q)]


def _mobius(tt):
    """In-place ANF/truth-table butterfly; it is its own inverse."""
    q = len(tt)
    step = 1
    while step < q:
        for x in range(q):
            if x & step:
                tt[x] ^= tt[x ^ step]
        step <<= 1
    return tt


def coordinate_anf(h, j: int) -> list[int]:
    """ANF coefficient table of coordinate j of h (1 = monomial present)."""
    return _mobius([(h[x] >> j) & 1 for x in range(len(h))])


def normalize_h(h):
    """Strip constant and linear terms from every coordinate of h."""
    q = len(h)
    n = q.bit_length() - 1
    out = [0] * q
    for j in range(n):
        cf = coordinate_anf(h, j)
        for mask in range(q):
            if cf[mask] and mask.bit_count() <= 1:
                cf[mask] = 0
        _mobius(cf)
        for x in range(q):
            out[x] |= cf[x] << j
    return out


def rand_vecfun(n: int, rng):
    return [rng.randrange(1 << n) for _ in range(1 << n)]


def rand_quadratic_h(n: int, rng):
    """A random h whose coordinates all have ANF degree at most 2."""
    q = 1 << n
    out = [0] * q
    for j in range(n):
        cf = [rng.randrange(2) if mask.bit_count() <= 2 else 0 for mask in range(q)]
        _mobius(cf)
        for x in range(q):
            out[x] |= cf[x] << j
    return out


def is_presemifield(h) -> bool:
    """Whether * distributes, i.e. the three-term difference identity

        h(x+y+z) + h(x+y) + h(x+z) + h(y+z) + h(x) + h(y) + h(z) = 0

    holds everywhere.  Triples with a repeated argument reduce to
    h(0) = 0, so only distinct unordered triples are walked.
    """
    q = len(h)
    if h[0] != 0:
        return False
    if q <= 32:
        for x in range(q):
            hx = h[x]
            for y in range(x + 1, q):
                base = hx ^ h[y] ^ h[x ^ y]
                for z in range(y + 1, q):
                    if base ^ h[z] ^ h[x ^ z] ^ h[y ^ z] ^ h[x ^ y ^ z]:
                        return False
        return True
    hv = np.asarray(h, dtype=np.int32)
    zs = np.arange(q, dtype=np.int32)
    for x in range(q):
        hxz = hv[zs ^ x]
        for y in range(x + 1, q):
            base = h[x] ^ h[y] ^ h[x ^ y]
            if ((hv[zs ^ x ^ y] ^ hxz ^ hv[zs ^ y] ^ hv ^ base) != 0).any():
                return False
    return True


def components_quadratic(h) -> bool:
    """Every coordinate (and so every component) has ANF degree <= 2.

    A component's ANF is the XOR of coordinate ANFs, which cannot raise
    the degree, so the per-coordinate check is exact; for n <= 4 all
    2^n - 1 component masks are walked anyway as a cross-check.
    """
    q = len(h)
    n = q.bit_length() - 1
    coord_cfs = [coordinate_anf(h, j) for j in range(n)]
    high = [mask for mask in range(q) if mask.bit_count() > 2]
    for cf in coord_cfs:
        if any(cf[mask] for mask in high):
            return False
    if n <= 4:
        for lam in range(1, q):
            for mask in high:
                acc = 0
                for j in range(n):
                    if (lam >> j) & 1:
                        acc ^= coord_cfs[j][mask]
                if acc:
                    return False
    return True


# -- field-side (F_{2^n}) ---------------------------------------------------


@lru_cache(maxsize=32)
def _basis_cross_products(ctx: GF2n):
    """Products xi_i * xi_j of distinct basis elements, flattened i < j."""
    return tuple(
        ctx.mul(ctx.basis[i], ctx.basis[j])
        for i in range(ctx.n)
        for j in range(i + 1, ctx.n)
    )


def odot(ctx: GF2n, x: int, y: int) -> int:
    """Shared-coordinate product sum x_i y_i xi_i of x and y in the basis."""
    return ctx.from_coords(ctx.coords(x) & ctx.coords(y))


def cross_terms(ctx: GF2n, x: int) -> int:
    """The quadratic form mu(x) = sum_{i<j} x_i x_j xi_i xi_j."""
    cx = ctx.coords(x)
    acc = 0
    k = 0
    for i in range(ctx.n):
        for j in range(i + 1, ctx.n):
            if (cx >> i) & (cx >> j) & 1:
                acc ^= _basis_cross_products(ctx)[k]
            k += 1
    return acc


def nabla(ctx: GF2n, f, a: int):
    """The table x |-> f(x+a) + f(x) + f(a) + x a."""
    q = ctx.q
    return [f[x ^ a] ^ f[x] ^ f[a] ^ ctx.mul(x, a) for x in range(q)]


def is_planar(ctx: GF2n, f) -> bool:
    q = ctx.q
    _check_table(f, q, "f")
    if q <= 16:
        mt = ctx.mul_table()
        target = (1 << q) - 1
        for a in range(1, q):
            occ = 0
            row = mt[a]
            for x in range(q):
                occ |= 1 << (f[x ^ a] ^ f[x] ^ row[x])
            if occ != target:
                return False
        return True
    nexp, nlog = ctx.np_tables()
    fv = np.asarray(f, dtype=np.int32)
    xs = np.arange(q, dtype=np.int32)
    lx = nlog[xs[1:]]
    prod = np.zeros(q, dtype=np.int32)
    seen = np.empty(q, dtype=bool)
    for a in range(1, q):
        prod[1:] = nexp[lx + nlog[a]]
        vals = fv[xs ^ a] ^ fv ^ prod
        seen[:] = False
        seen[vals] = True
        if not seen.all():
            return False
    return True


# -- the bridge ---------------------------------------------------------------


def h_to_f(ctx: GF2n, h):
    q = ctx.q
    _check_table(h, q, "h")
    out = [0] * q
    for x in range(q):
        hb = ctx.from_coords(h[ctx.coords(x)])
        out[x] = ctx.mul(hb, hb) ^ cross_terms(ctx, x)
    return out


def f_to_h(ctx: GF2n, f):
    """Inverse of h_to_f; uses that squaring is bijective in char 2."""
    q = ctx.q
    _check_table(f, q, "f")
    out = [0] * q
    for v in range(q):
        x = ctx.from_coords(v)
        out[v] = ctx.coords(ctx.sqrt(f[x] ^ cross_terms(ctx, x)))
    return out


# -- univariate polynomials ---------------------------------------------------


def poly_reduce(ctx: GF2n, poly) -> dict[int, int]:
    """Canonical exponents: 0 stays 0, others land in 1..2^n-1."""
    out: dict[int, int] = {}
    for e, c in poly.items():
        if c == 0:
            continue
        if e < 0:
            raise DomainError(f"negative exponent {e}")
        if e > 0:
            e = (e - 1) % (ctx.q - 1) + 1
        out[e] = out.get(e, 0) ^ c
    return {e: c for e, c in out.items() if c}


def interpolate(ctx: GF2n, f) -> dict[int, int]:
    """The unique polynomial of degree < 2^n with these values."""
    q = ctx.q
    _check_table(f, q, "f")
    exp, log = ctx.tables()
    coef = [0] * q
    coef[0] = f[0]
    coef[q - 1] = f[0]
    for c in range(1, q):
        fc = f[c]
        if not fc:
            continue
        lf = log[fc]
        lc = log[c]
        for k in range(1, q):
            coef[k] ^= exp[(lf + lc * (q - 1 - k)) % (q - 1)]
    return {e: c for e, c in enumerate(coef) if c}


def evaluate(ctx: GF2n, poly) -> list[int]:
    q = ctx.q
    poly = poly_reduce(ctx, poly)
    exp, log = ctx.tables()
    out = [0] * q
    out[0] = poly.get(0, 0)
    items = [(e, log[c], c) for e, c in poly.items()]
    for x in range(1, q):
        lx = log[x]
        acc = 0
        for e, lc, c in items:
            acc ^= exp[(lx * e + lc) % (q - 1)] if e else c
        out[x] = acc
    return out


def normalize_f(ctx: GF2n, poly) -> dict[int, int]:
    """Strip the affine part: exponent 0 and the Frobenius exponents 2^i."""
    poly = poly_reduce(ctx, poly)
    return {e: c for e, c in poly.items() if e != 0 and e.bit_count() != 1}


def is_dembowski_ostrom(ctx: GF2n, poly) -> bool:
    """After normalization, only exponents 2^i + 2^j with i != j remain."""
    return all(e.bit_count() == 2 for e in normalize_f(ctx, poly))


# -- constructions -------------------------------------------------------------


def construct(ctx: GF2n, kind: str, chain=(), zetas=()) -> list[int]:
    """Build a named planar function table over F_{2^n}.

    zero    the all-zero function (the field plane).
    knuth   (x Tr(x))^2, needs n odd.
    kantor  (x sum_i Tr_{n->m_i}(zeta_i x))^2 for a strict divisor chain
            n > m_1 > ... > m_k with m_{i+1} | m_i, n/m_k odd, zeta_i != 0.
    """
    q = ctx.q
    if kind == "zero":
        return [0] * q
    if kind == "knuth":
        if ctx.n % 2 == 0:
            raise DomainError("the Knuth function needs odd n")
        return [ctx.mul(x, x) if ctx.trace(x) else 0 for x in range(q)]
    if kind == "kantor":
        chain = tuple(chain)
        zetas = tuple(zetas)
        if not chain or len(chain) != len(zetas):
            raise DomainError("kantor needs matching chain and zetas")
        prev = ctx.n
        for m in chain:
            if not 0 < m < prev or prev % m != 0:
                raise DomainError(f"bad subfield chain at degree {m}")
            prev = m
        if (ctx.n // chain[-1]) % 2 == 0:
            raise DomainError("total extension degree over the last subfield must be odd")
        if any(z == 0 or z >= q for z in zetas):
            raise DomainError("zetas must be nonzero field elements")
        out = [0] * q
        for x in range(q):
            s = 0
            for m, z in zip(chain, zetas):
                s ^= ctx.rel_trace(m, ctx.mul(z, x))
            xs = ctx.mul(x, s)
            out[x] = ctx.mul(xs, xs)
        return out
    raise DomainError(f"unknown construction kind {kind!r}")
