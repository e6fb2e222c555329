"""Arithmetic in F_{2^n} and linear algebra over F_2.

A field element is a plain int whose bit i is the coefficient of x^i in
the residue polynomial, so it is simultaneously the coordinate vector in
the polynomial basis 1, alpha, ..., alpha^(n-1).  Bit vectors in F_2^n
use the same packing and binary matrices are lists of row masks (bit i
of row k is the entry in row k, column i).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, ResourceError

MAX_N = 20

# Minimal (as an integer mask) irreducible polynomial of each degree.
IRREDUCIBLE = {
    1: 0x2,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
    17: 0x20009,
    18: 0x40009,
    19: 0x80027,
    20: 0x100009,
}

# Distinct prime factors of 2^n - 1, used for element-order computations.
MERSENNE_PRIMES = {
    1: (),
    2: (3,),
    3: (7,),
    4: (3, 5),
    5: (31,),
    6: (3, 7),
    7: (127,),
    8: (3, 5, 17),
    9: (7, 73),
    10: (3, 11, 31),
    11: (23, 89),
    12: (3, 5, 7, 13),
    13: (8191,),
    14: (3, 43, 127),
    15: (7, 31, 151),
    16: (3, 5, 17, 257),
    17: (131071,),
    18: (3, 7, 19, 73),
    19: (524287,),
    20: (3, 5, 11, 31, 41),
}


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two binary polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    """Remainder of the binary polynomial a modulo m."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree up to deg(p)/2."""
    d = p.bit_length() - 1
    if d < 1:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if q.bit_length() - 1 >= 1 and poly_mod(p, q) == 0:
            return False
    return True


class GF2n:
    """Context for F_{2^n} with a fixed modulus and enumeration basis.

    Multiplication runs on lazily built log/exp tables over a generator
    of the multiplicative group; everything else reduces to them.
    """

    def __init__(self, n: int, modulus: int | None = None, basis=None):
        if not 1 <= n <= MAX_N:
            raise DomainError(f"n must be in 1..{MAX_N}, got {n}")
        self.n = n
        self.q = 1 << n
        if modulus is None:
            modulus = IRREDUCIBLE[n]
        if modulus.bit_length() - 1 != n:
            raise DomainError(f"modulus 0x{modulus:x} does not have degree {n}")
        if not poly_is_irreducible(modulus):
            raise DomainError(f"modulus 0x{modulus:x} is reducible")
        self.modulus = modulus
        if basis is None:
            basis = tuple(1 << i for i in range(n))
        else:
            basis = tuple(basis)
        if len(basis) != n or any(not 0 < b < self.q for b in basis):
            raise DomainError("basis must list n field elements")
        self.basis = basis
        self._poly_basis = basis == tuple(1 << i for i in range(n))
        if self._poly_basis:
            self._from_coords_mat = self._coords_mat = None
        else:
            mat = mat_transpose(list(basis), n)
            self._from_coords_mat = mat
            self._coords_mat = mat_inverse(mat)  # raises if dependent
        self._exp = None
        self._log = None
        self._nexp = None
        self._nlog = None
        self._mul_table = None
        self.generator = None

    # -- raw arithmetic (used only to bootstrap the tables) ------------

    def _raw_mul(self, a: int, b: int) -> int:
        r = 0
        n, m = self.n, self.modulus
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            if a >> n:
                a ^= m
            b >>= 1
        return r

    def _raw_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            k >>= 1
        return r

    def _build_tables(self) -> None:
        q = self.q
        primes = MERSENNE_PRIMES[self.n]
        g = None
        for cand in range(2, q) if q > 2 else (1,):
            if all(self._raw_pow(cand, (q - 1) // p) != 1 for p in primes):
                g = cand
                break
        assert g is not None
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        v = 1
        for i in range(q - 1):
            exp[i] = v
            exp[i + q - 1] = v
            log[v] = i
            v = self._raw_mul(v, g)
        assert v == 1
        self.generator = g
        self._exp = exp
        self._log = log

    def tables(self):
        """The (exp, log) tables; exp is doubled so exp[i+j] needs no mod."""
        if self._exp is None:
            self._build_tables()
        return self._exp, self._log

    def np_tables(self):
        """numpy int32 views of (exp, log) for vectorized callers."""
        if self._nexp is None:
            exp, log = self.tables()
            self._nexp = np.array(exp, dtype=np.int32)
            self._nlog = np.array(log, dtype=np.int32)
        return self._nexp, self._nlog

    def mul_table(self):
        """Cached full q x q product table, for small fields only."""
        if self.n > 8:
            raise ResourceError(f"mul_table is capped at n=8, got n={self.n}")
        if self._mul_table is None:
            exp, log = self.tables()
            q = self.q
            tab = [[0] * q]
            for x in range(1, q):
                lx = log[x]
                tab.append([0] + [exp[lx + log[y]] for y in range(1, q)])
            self._mul_table = tab
        return self._mul_table

    # -- element operations --------------------------------------------

    def _check(self, *xs) -> None:
        for x in xs:
            if x >> self.n or x < 0:
                raise DomainError(f"0x{x:x} is not an element of F_2^{self.n}")

    def mul(self, x: int, y: int) -> int:
        if (x | y) >> self.n:
            self._check(x, y)
        if x == 0 or y == 0:
            return 0
        if self._exp is None:
            self._build_tables()
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise DomainError("0 has no inverse")
        exp, log = self.tables()
        return exp[self.q - 1 - log[x]]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        self._check(x)
        if x == 0:
            if k == 0:
                return 1
            if k < 0:
                raise DomainError("0 has no negative powers")
            return 0
        exp, log = self.tables()
        return exp[(log[x] * k) % (self.q - 1)]

    def sqrt(self, x: int) -> int:
        """The unique square root: squaring is a bijection in char 2."""
        return self.pow(x, 1 << (self.n - 1))

    def trace(self, x: int) -> int:
        """Absolute trace to F_2, returned as 0 or 1."""
        self._check(x)
        acc = v = x
        for _ in range(self.n - 1):
            v = self.mul(v, v)
            acc ^= v
        return acc

    def rel_trace(self, m: int, x: int) -> int:
        """Trace onto the subfield F_{2^m}; m must divide n."""
        if m < 1 or self.n % m != 0:
            raise DomainError(f"{m} does not divide {self.n}")
        self._check(x)
        acc = v = x
        for _ in range(self.n // m - 1):
            for _ in range(m):
                v = self.mul(v, v)
            acc ^= v
        return acc

    def order(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise DomainError("0 has no multiplicative order")
        k = self.q - 1
        for p in MERSENNE_PRIMES[self.n]:
            while k % p == 0 and self.pow(x, k // p) == 1:
                k //= p
        return k

    def is_primitive(self, x: int) -> bool:
        return x != 0 and self.order(x) == self.q - 1

    # -- basis coordinates ----------------------------------------------

    def coords(self, x: int) -> int:
        """Coordinates of x in the context basis, packed into one word."""
        self._check(x)
        if self._poly_basis:
            return x
        return mat_apply(self._coords_mat, x)

    def from_coords(self, v: int) -> int:
        self._check(v)
        if self._poly_basis:
            return v
        return mat_apply(self._from_coords_mat, v)

    def elements(self):
        return range(self.q)

    # -- serialization ----------------------------------------------------

    def header(self) -> str:
        basis = ",".join(f"0x{b:x}" for b in self.basis)
        return f"n={self.n} modulus=0x{self.modulus:x} basis={basis}"

    def __repr__(self):
        return f"GF2n(n={self.n}, modulus=0x{self.modulus:x})"

    def __eq__(self, other):
        return (
            isinstance(other, GF2n)
            and (self.n, self.modulus, self.basis)
            == (other.n, other.modulus, other.basis)
        )

    def __hash__(self):
        return hash((self.n, self.modulus, self.basis))


# -- binary matrices ------------------------------------------------------


def mat_identity(n: int) -> list[int]:
    return [1 << k for k in range(n)]


def mat_apply(rows, v: int) -> int:
    """Multiply the matrix by the column vector v."""
    out = 0
    for k, r in enumerate(rows):
        out |= ((r & v).bit_count() & 1) << k
    return out


def mat_transpose(rows, ncols: int) -> list[int]:
    out = [0] * ncols
    for k, r in enumerate(rows):
        for i in range(ncols):
            out[i] |= ((r >> i) & 1) << k
    return out


def mat_mul(a, b) -> list[int]:
    """Product of two square matrices acting as column maps."""
    n = len(b)
    bt = mat_transpose(b, n)
    cols = [mat_apply(a, bt[j]) for j in range(n)]
    return mat_transpose(cols, len(a))


def mat_rank(rows) -> int:
    basis = []
    for r in rows:
        for p in basis:
            r = min(r, r ^ p)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def mat_invertible(rows) -> bool:
    return mat_rank(rows) == len(rows)


def mat_inverse(rows) -> list[int]:
    n = len(rows)
    work = list(rows)
    aug = mat_identity(n)
    for col in range(n):
        piv = next(
            (r for r in range(col, n) if (work[r] >> col) & 1),
            None,
        )
        if piv is None:
            raise DomainError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and (work[r] >> col) & 1:
                work[r] ^= work[col]
                aug[r] ^= aug[col]
    return aug


def mat_rand(n: int, rng) -> list[int]:
    """A uniformly random invertible matrix, by rejection."""
    while True:
        rows = [rng.randrange(1 << n) for _ in range(n)]
        if mat_invertible(rows):
            return rows


def gl_enumerate(n: int, stream_large: bool = False):
    """Yield every invertible n x n matrix exactly once, in row order.

    The full group is only reasonable to walk for n <= 5; pass
    stream_large=True to stream larger groups anyway.
    """
    if n > 5 and not stream_large:
        raise ResourceError(f"GL({n},2) has too many elements; set stream_large")

    def rec(rows, span):
        if len(rows) == n:
            yield tuple(rows)
            return
        for v in range(1, 1 << n):
            if v in span:
                continue
            rows.append(v)
            yield from rec(rows, span | {s ^ v for s in span})
            rows.pop()

    yield from rec([], {0})


def gl_order(n: int) -> int:
    return math.prod((1 << n) - (1 << i) for i in range(n))
