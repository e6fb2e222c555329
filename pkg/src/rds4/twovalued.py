"""Planar functions with a two-element image, and when they are additive.

For f : F_{2^n} -> F_{2^n} the set A_f collects the pairs (a, b) whose
mixed difference vanishes identically:

    f(x+a) + f(x) + f(x+a+b) + f(x+b) = 0   for all x.

It always contains {0} x F, F x {0} and the diagonal, and it is closed
under two partial operations: (a,b), (a+b,c) |-> (a+b, b+c) and, on
pairs with equal first entry, (a,b), (a,c) |-> (a, b+c).  A function
with image inside {0, xi} is planar exactly when (a, xi/a) lies in A_f
for every a != 0, and chasing those pairs through the closure leads to
the sequence a_0 = a, a_1 = a + xi/a, a_{i+1} = a_{i-1} + xi/a_i and to
the spanning set P_n = {1/(1+alpha) : alpha primitive} + {1}.  When P_n
spans F_2^n (checked here for n <= 18, known beyond via character-sum
estimates), a two-valued planar f fixing 0 must be additive; the n <= 4
cases are also settled by raw enumeration in thm41_bruteforce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ResourceError
from .gf2n import GF2n


def af_member(f, a: int, b: int) -> bool:
    q = len(f)
    ab = a ^ b
    for x in range(q):
        if f[x ^ a] ^ f[x] ^ f[x ^ ab] ^ f[x ^ b]:
            return False
    return True


def af_build(f) -> list[int]:
    """Row a has bit b set when (a, b) is in A_f."""
    q = len(f)
    rows = []
    for a in range(q):
        r = 0
        for b in range(q):
            if af_member(f, a, b):
                r |= 1 << b
        rows.append(r)
    return rows


def af_wedge(p, s):
    """(a, b) and (a+b, c) combine to (a+b, b+c)."""
    a, b = p
    c, d = s
    if c != a ^ b:
        raise DomainError("second pair must start at a+b")
    return (a ^ b, b ^ d)


def af_vee(p, s):
    """(a, b) and (a, c) combine to (a, b+c)."""
    a, b = p
    c, d = s
    if a != c:
        raise DomainError("pairs must share the first entry")
    return (a, b ^ d)


def planar_twoimage_check(ctx: GF2n, f, xi: int) -> bool:
    """Planarity test for f with image inside {0, xi}, through A_f."""
    if xi == 0 or xi >= ctx.q:
        raise DomainError("xi must be a nonzero field element")
    if any(v != 0 and v != xi for v in f):
        raise DomainError("f must take values in {0, xi}")
    for a in range(1, ctx.q):
        if not af_member(f, a, ctx.div(xi, a)):
            return False
    return True


def is_additive(f) -> bool:
    q = len(f)
    if f[0]:
        return False
    for x in range(1, q):
        fx = f[x]
        for y in range(1, x):
            if f[x ^ y] != fx ^ f[y]:
                return False
    return True


# -- the recurrence ---------------------------------------------------------


@dataclass
class SeqSa:
    xi: int
    a0: int
    period: int
    terms: list[int]


def sequence_sa(ctx: GF2n, a: int, xi: int, count: int | None = None) -> SeqSa:
    """Terms of a_0 = a, a_1 = a + xi/a, a_{i+1} = a_{i-1} + xi/a_i.

    Needs xi != 0 and a outside {0, sqrt(xi)}; then no term vanishes
    and the sequence is periodic with period 2 ord(1 + xi/a^2).  The
    division falls back to xi/0 := 0 so the recurrence is total, but
    hitting that case would break the period claim and is reported as
    a bug rather than smoothed over.
    """
    if xi == 0 or xi >= ctx.q:
        raise DomainError("xi must be a nonzero field element")
    if a == 0 or a == ctx.sqrt(xi) or a >= ctx.q:
        raise DomainError("a must avoid 0 and sqrt(xi)")
    beta = 1 ^ ctx.div(xi, ctx.mul(a, a))
    period = 2 * ctx.order(beta)
    if count is None:
        count = period
    terms = []
    prev, cur = a, a ^ ctx.div(xi, a)
    for _ in range(count):
        terms.append(prev)
        prev, cur = cur, prev ^ (ctx.div(xi, cur) if cur else 0)
    if any(t == 0 for t in terms):
        raise DomainError("sequence hit 0; preconditions violated")
    return SeqSa(xi=xi, a0=a, period=period, terms=terms)


def sequence_closed_form(ctx: GF2n, a: int, xi: int, count: int) -> list[int]:
    """a_{2i} = a (a^2/(a^2+xi))^i and a_{2i+1} = a ((a^2+xi)/a^2)^(i+1)."""
    a2 = ctx.mul(a, a)
    beta = ctx.div(a2 ^ xi, a2)
    r = ctx.inv(beta)
    out = []
    for k in range(count):
        i = k >> 1
        if k & 1:
            out.append(ctx.mul(a, ctx.pow(beta, i + 1)))
        else:
            out.append(ctx.mul(a, ctx.pow(r, i)))
    return out


# -- the spanning set --------------------------------------------------------


def pn_iter(ctx: GF2n):
    """1 followed by 1/(1+alpha) over all primitive alpha, in log order."""
    yield 1
    if ctx.n == 1:
        return
    exp, log = ctx.tables()
    q1 = ctx.q - 1
    for i in range(1, q1):
        if math.gcd(i, q1) == 1:
            yield exp[q1 - log[1 ^ exp[i]]]


def pn_set(ctx: GF2n) -> set[int]:
    return set(pn_iter(ctx))


def _insert_pivot(basis: list[int], v: int) -> bool:
    for p in basis:
        v = min(v, v ^ p)
    if v:
        basis.append(v)
        basis.sort(reverse=True)
        return True
    return False


def pn_basis(ctx: GF2n) -> list[int]:
    """Elements of P_n accepted as pivots; short of n when it fails to span."""
    basis: list[int] = []
    chosen: list[int] = []
    for v in pn_iter(ctx):
        if _insert_pivot(basis, v):
            chosen.append(v)
            if len(chosen) == ctx.n:
                break
    return chosen


def pn_spans(ctx: GF2n) -> bool:
    return len(pn_basis(ctx)) == ctx.n


# -- raw enumeration of the two-valued planar world ---------------------------


THM41_MAX_N = 4


def thm41_bruteforce(ctx: GF2n, xi: int) -> dict:
    """Walk every f with f(0) = 0 and image in {0, xi}; compare planarity
    with additivity.  Returns counts and the list of counterexample
    tables (expected empty)."""
    n = ctx.n
    if n > THM41_MAX_N:
        raise ResourceError(f"brute force is capped at n={THM41_MAX_N}")
    if xi == 0 or xi >= ctx.q:
        raise DomainError("xi must be a nonzero field element")
    q = ctx.q
    mt = ctx.mul_table()
    candidates = 1 << (q - 1)
    n_planar = n_additive = n_surj_planar = 0
    counterexamples = []
    f = [0] * q
    for s in range(candidates):
        for x in range(1, q):
            f[x] = xi if (s >> (x - 1)) & 1 else 0
        planar = True
        for a in range(1, q):
            row = mt[a]
            occ = 0
            for x in range(q):
                bit = 1 << (f[x ^ a] ^ f[x] ^ row[x])
                if occ & bit:
                    planar = False
                    break
                occ |= bit
            if not planar:
                break
        additive = is_additive(f)
        if planar:
            n_planar += 1
            if s:
                n_surj_planar += 1
        if additive:
            n_additive += 1
        if planar != additive:
            counterexamples.append(list(f))
    return {
        "n": n,
        "xi": xi,
        "candidates": candidates,
        "planar": n_planar,
        "additive": n_additive,
        "surjective_planar": n_surj_planar,
        "counterexamples": counterexamples,
    }
