"""Shifted-bent (bent_4) Boolean functions on F_2^m.

A function f is shifted-bent with respect to an index set L when

    x |-> f(x+a) + f(x) + sum_{i in L} x_i a_i

is balanced for every a != 0; L empty is the classical bent property.
Truth tables are packed into a single int (bit x is f(x)), so the
derivative at a is an index-XOR shuffle of the packing, the linear term
is a cached packed table, and balancedness is one popcount.

The tie to planarity: h on F_2^n is planar exactly when, for every
nonzero mask lam, the component x |-> <lam, h(x)> is shifted-bent with
respect to the support of lam.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InternalError


@dataclass(frozen=True)
class BoolFun:
    """A Boolean function of m variables as a 2^m-bit packed table."""

    m: int
    bits: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("need at least one variable")
        if self.bits < 0 or self.bits >> (1 << self.m):
            raise DomainError("packed table does not fit 2^m bits")

    def value(self, x: int) -> int:
        return (self.bits >> x) & 1

    def table(self) -> list[int]:
        return [(self.bits >> x) & 1 for x in range(1 << self.m)]


def bf_from_table(tt) -> BoolFun:
    size = len(tt)
    m = size.bit_length() - 1
    if size != 1 << m:
        raise DomainError("table length must be a power of 2")
    bits = 0
    for x, v in enumerate(tt):
        if v not in (0, 1):
            raise DomainError("table entries must be bits")
        bits |= v << x
    return BoolFun(m, bits)


def bf_rand(m: int, rng) -> BoolFun:
    return BoolFun(m, rng.getrandbits(1 << m))


@lru_cache(maxsize=None)
def _low_mask(m: int, i: int) -> int:
    """Positions of 0..2^m-1 whose index bit i is clear."""
    block = (1 << (1 << i)) - 1
    return ((1 << (1 << m)) - 1) // ((1 << (1 << (i + 1))) - 1) * block


def _shuffle(m: int, bits: int, a: int) -> int:
    """Packed table of x |-> f(x ^ a)."""
    i = 0
    while a:
        if a & 1:
            sz = 1 << i
            mask = _low_mask(m, i)
            bits = ((bits & mask) << sz) | ((bits >> sz) & mask)
        a >>= 1
        i += 1
    return bits


@lru_cache(maxsize=None)
def _linear_bits(m: int, c: int) -> int:
    """Packed table of x |-> parity(c & x)."""
    t = 0
    size = 1
    for j in range(m):
        half = t
        if (c >> j) & 1:
            half ^= (1 << size) - 1
        t |= half << size
        size <<= 1
    return t


def derivative(f: BoolFun, a: int) -> BoolFun:
    return BoolFun(f.m, _shuffle(f.m, f.bits, a) ^ f.bits)


def is_balanced(f: BoolFun) -> bool:
    return f.bits.bit_count() == 1 << (f.m - 1)


def lam_mask(m: int, lam) -> int:
    if isinstance(lam, int):
        mask = lam
    else:
        mask = 0
        for i in lam:
            mask |= 1 << i
    if mask < 0 or mask >> m:
        raise DomainError("shift indices out of range")
    return mask


def is_shifted_bent(f: BoolFun, lam) -> bool:
    """Whether every shifted derivative of f is balanced."""
    m = f.m
    mask = lam_mask(m, lam)
    half = 1 << (m - 1)
    bits = f.bits
    for a in range(1, 1 << m):
        d = _shuffle(m, bits, a) ^ bits ^ _linear_bits(m, a & mask)
        if d.bit_count() != half:
            return False
    return True


# -- ANF ----------------------------------------------------------------------


@dataclass(frozen=True)
class Anf:
    """Algebraic normal form: the set of monomials, as variable masks."""

    m: int
    monomials: frozenset[int]


def anf_of(f: BoolFun) -> Anf:
    m = f.m
    t = f.bits
    for i in range(m):
        t ^= (t & _low_mask(m, i)) << (1 << i)
    mono = frozenset(x for x in range(1 << m) if (t >> x) & 1)
    return Anf(m, mono)


def anf_eval(a: Anf) -> BoolFun:
    t = 0
    for mask in a.monomials:
        t |= 1 << mask
    for i in range(a.m):
        t ^= (t & _low_mask(a.m, i)) << (1 << i)
    return BoolFun(a.m, t)


def degree(f: BoolFun) -> int:
    mono = anf_of(f).monomials
    return max((mask.bit_count() for mask in mono), default=0)


# -- constructions -------------------------------------------------------------


def mm_construct(pi, g: BoolFun) -> BoolFun:
    """f(x, y) = <x, pi(y)> + g(y) on 2n variables (x in the low block).

    Shifted-bent with respect to every subset of the y indices exactly
    when pi is a permutation; pi is an arbitrary table here so both
    directions of that statement can be exercised.
    """
    size = len(pi)
    n = size.bit_length() - 1
    if size != 1 << n:
        raise DomainError("pi table length must be a power of 2")
    if any(v < 0 or v >= size for v in pi):
        raise DomainError("pi values out of range")
    if g.m != n:
        raise DomainError("g must have as many variables as pi")
    ones = (1 << size) - 1
    bits = 0
    for y in range(size):
        block = _linear_bits(n, pi[y])
        if g.value(y):
            block ^= ones
        bits |= block << (y << n)
    return BoolFun(2 * n, bits)


def y_indices(n: int) -> tuple[int, ...]:
    return tuple(range(n, 2 * n))


def mm_vectorial(ctx, pi, g) -> list[int]:
    """F(x, y) = x pi(y) + g(y) as a vector function on F_2^{2n}."""
    q = ctx.q
    if len(pi) != q or len(g) != q:
        raise DomainError("pi and g must be full tables")
    # packed index is x | (y << n), so x sits in the low block
    out = []
    for y in range(q):
        py = pi[y]
        gy = g[y]
        for x in range(q):
            out.append(ctx.mul(x, py) ^ gy)
    return out


def direct_sum(f1: BoolFun, lam1, f2: BoolFun, lam2):
    """(f1 + f2)(x, y) on m1 + m2 variables, shift set the disjoint union.

    Both summands must already be shifted-bent for their own sets; the
    sum is then shifted-bent for the union, which is re-verified.
    """
    mask1 = lam_mask(f1.m, lam1)
    mask2 = lam_mask(f2.m, lam2)
    if not is_shifted_bent(f1, mask1) or not is_shifted_bent(f2, mask2):
        raise DomainError("both summands must be shifted-bent")
    size1 = 1 << f1.m
    ones = (1 << size1) - 1
    bits = 0
    for y in range(1 << f2.m):
        block = f1.bits
        if f2.value(y):
            block ^= ones
        bits |= block << (y << f1.m)
    out = BoolFun(f1.m + f2.m, bits)
    mask = mask1 | (mask2 << f1.m)
    if not is_shifted_bent(out, mask):
        raise InternalError("direct sum failed to be shifted-bent")
    return out, mask


# -- components of vector functions --------------------------------------------


def component(table, lam: int) -> BoolFun:
    """The Boolean component x |-> <lam, table(x)>."""
    bits = 0
    for x, v in enumerate(table):
        bits |= ((v & lam).bit_count() & 1) << x
    size = len(table)
    return BoolFun(size.bit_length() - 1, bits)


def components_criterion(h) -> bool:
    """Planarity of h via its components: every nonzero mask lam must give
    a component shifted-bent with respect to the support of lam."""
    q = len(h)
    for lam in range(1, q):
        if not is_shifted_bent(component(h, lam), lam):
            return False
    return True
