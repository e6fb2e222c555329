"""The group Z_4^n in split form, and its automorphism group.

An element is stored as a pair of bit vectors (a, b) standing for the
vector a + 2b with a, b in {0,1}^n lifted coordinatewise.  In this form
addition picks up a carry term a AND c:

    (a, b) + (c, d) = (a + c, b + d + (a & c))

and the forbidden-subgroup story of the rest of the package is simply
"a == 0".  An automorphism is a pair of binary matrices (U, V), U
invertible, acting by

    (a, b) |-> (U a, U b + V a + Q(U, a))

where bit k of the correction Q(U, a) is the parity of the number of
unordered pairs of common set bits of row k of U and a; it is the carry
produced when an integer-lifted row is applied to an integer-lifted
vector modulo 4.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DomainError
from .gf2n import mat_apply, mat_identity, mat_inverse, mat_invertible, mat_rand, mat_transpose


class Z4(NamedTuple):
    a: int
    b: int


ZERO = Z4(0, 0)


def z4_check(n: int, u: Z4) -> None:
    if (u.a | u.b) >> n or u.a < 0 or u.b < 0:
        raise DomainError(f"{u} is not an element of Z_4^{n}")


def z4_add(u: Z4, v: Z4) -> Z4:
    return Z4(u.a ^ v.a, u.b ^ v.b ^ (u.a & v.a))


def z4_neg(u: Z4) -> Z4:
    return Z4(u.a, u.a ^ u.b)


def z4_sub(u: Z4, v: Z4) -> Z4:
    return z4_add(u, z4_neg(v))


def z4_order(u: Z4) -> int:
    if u.a:
        return 4
    return 2 if u.b else 1


def z4_elements(n: int):
    """All 4^n elements, ordered by the packed word (a << n) | b."""
    for a in range(1 << n):
        for b in range(1 << n):
            yield Z4(a, b)


def z4_pack(u: Z4, n: int) -> int:
    return (u.a << n) | u.b


def z4_unpack(w: int, n: int) -> Z4:
    return Z4(w >> n, w & ((1 << n) - 1))


# -- automorphisms ---------------------------------------------------------


class Aut(NamedTuple):
    """An automorphism (U, V) of Z_4^n; rows are int bitmasks."""

    U: tuple[int, ...]
    V: tuple[int, ...]


def make_aut(U, V) -> Aut:
    U, V = list(U), list(V)
    n = len(U)
    if len(V) != n:
        raise DomainError("U and V must have the same shape")
    if any(r >> n or r < 0 for r in U + V):
        raise DomainError("matrix rows out of range")
    if not mat_invertible(U):
        raise DomainError("U must be invertible mod 2")
    return Aut(tuple(U), tuple(V))


def aut_identity(n: int) -> Aut:
    return Aut(tuple(mat_identity(n)), (0,) * n)


def quad_correction(U, a: int) -> int:
    """The carry vector Q(U, a); bit k is C(|row_k & a|, 2) mod 2."""
    out = 0
    for k, row in enumerate(U):
        w = (row & a).bit_count()
        out |= ((w * (w - 1) >> 1) & 1) << k
    return out


def aut_apply(phi: Aut, u: Z4) -> Z4:
    U, V = phi.U, phi.V
    return Z4(
        mat_apply(U, u.a),
        mat_apply(U, u.b) ^ mat_apply(V, u.a) ^ quad_correction(U, u.a),
    )


def _from_generator_images(images: list[Z4]) -> Aut:
    n = len(images)
    ucols = [im.a for im in images]
    vcols = [im.b for im in images]
    return Aut(tuple(mat_transpose(ucols, n)), tuple(mat_transpose(vcols, n)))


def aut_compose(phi: Aut, psi: Aut) -> Aut:
    """The automorphism applying psi first, then phi.

    An automorphism of this shape is determined by the images of the
    generators (e_i, 0), where the correction term vanishes, so the
    composite is read off from those images.
    """
    n = len(phi.U)
    images = [aut_apply(phi, aut_apply(psi, Z4(1 << i, 0))) for i in range(n)]
    return _from_generator_images(images)


def aut_inverse(phi: Aut) -> Aut:
    U, V = list(phi.U), list(phi.V)
    n = len(U)
    uinv = mat_inverse(U)
    images = []
    for i in range(n):
        c = mat_apply(uinv, 1 << i)
        # solve U v + V c + Q(U, c) = 0 for v
        v = mat_apply(uinv, mat_apply(V, c) ^ quad_correction(U, c))
        images.append(Z4(c, v))
    return _from_generator_images(images)


def aut_rand(n: int, rng) -> Aut:
    U = mat_rand(n, rng)
    V = [rng.randrange(1 << n) for _ in range(n)]
    return make_aut(U, V)
