"""Plain-text file formats.

Every field-valued file starts with one context line

    n=<n> modulus=<hex> basis=<hex,hex,...>

followed by the payload: truth tables are one hex word per line in
input order, polynomials are `exponent hex_coefficient` lines, RDS
files are `a_hex:b_hex` lines, automorphisms are two labeled blocks of
hex matrix rows.  Boolean functions carry `m=<m>` and one hex-packed
table line instead.  Parsing failures raise ParseError with the file
and line of the offense.
"""

from __future__ import annotations

from pathlib import Path

from .bent4 import BoolFun
from .errors import DomainError, ParseError
from .gf2n import GF2n
from .plane import Incidence
from .z4group import Aut, Z4, make_aut


def _hex(v: int) -> str:
    return f"{v:x}"


def _parse_hex(tok: str, path, lineno) -> int:
    try:
        return int(tok, 16)
    except ValueError:
        raise ParseError(f"bad hex value {tok!r}", path, lineno) from None


def field_header(ctx: GF2n) -> str:
    return ctx.header()


def parse_field_header(line: str, path=None, lineno: int = 1) -> GF2n:
    parts = dict(
        tok.split("=", 1) for tok in line.split() if "=" in tok
    )
    if not {"n", "modulus"} <= parts.keys():
        raise ParseError("header needs n= and modulus=", path, lineno)
    try:
        n = int(parts["n"])
    except ValueError:
        raise ParseError(f"bad n {parts['n']!r}", path, lineno) from None
    modulus = _parse_hex(parts["modulus"], path, lineno)
    basis = None
    if "basis" in parts:
        basis = [_parse_hex(tok, path, lineno) for tok in parts["basis"].split(",")]
    try:
        return GF2n(n, modulus, basis)
    except DomainError as e:
        raise ParseError(str(e), path, lineno) from None


def _read_lines(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(str(e), path) from None
    lines = []
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((i, s))
    if not lines:
        raise ParseError("empty file", path)
    return lines


# -- truth tables -------------------------------------------------------------


def save_table(path, ctx: GF2n, table) -> None:
    lines = [field_header(ctx)]
    lines += [_hex(v) for v in table]
    Path(path).write_text("\n".join(lines) + "\n")


def load_table(path):
    lines = _read_lines(path)
    ctx = parse_field_header(lines[0][1], path, lines[0][0])
    body = lines[1:]
    if len(body) != ctx.q:
        raise ParseError(f"expected {ctx.q} table lines, got {len(body)}", path)
    table = []
    for lineno, s in body:
        v = _parse_hex(s, path, lineno)
        if v >> ctx.n:
            raise ParseError(f"value {s} out of range", path, lineno)
        table.append(v)
    return ctx, table


# -- univariate polynomials ----------------------------------------------------


def save_poly(path, ctx: GF2n, poly) -> None:
    lines = [field_header(ctx)]
    for e in sorted(poly):
        if poly[e]:
            lines.append(f"{e} {_hex(poly[e])}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_poly(path):
    lines = _read_lines(path)
    ctx = parse_field_header(lines[0][1], path, lines[0][0])
    poly = {}
    for lineno, s in lines[1:]:
        toks = s.split()
        if len(toks) != 2:
            raise ParseError("polynomial lines are `exponent hex_coefficient`", path, lineno)
        try:
            e = int(toks[0])
        except ValueError:
            raise ParseError(f"bad exponent {toks[0]!r}", path, lineno) from None
        c = _parse_hex(toks[1], path, lineno)
        if c >> ctx.n:
            raise ParseError(f"coefficient {toks[1]} out of range", path, lineno)
        if e in poly:
            raise ParseError(f"repeated exponent {e}", path, lineno)
        poly[e] = c
    return ctx, {e: c for e, c in poly.items() if c}


# -- relative difference sets ----------------------------------------------------


def save_rds(path, ctx: GF2n, D) -> None:
    lines = [field_header(ctx)]
    lines += [f"{_hex(el.a)}:{_hex(el.b)}" for el in sorted(D)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_rds(path):
    lines = _read_lines(path)
    ctx = parse_field_header(lines[0][1], path, lines[0][0])
    elems = []
    for lineno, s in lines[1:]:
        if ":" not in s:
            raise ParseError("set lines are `a_hex:b_hex`", path, lineno)
        sa, sb = s.split(":", 1)
        a = _parse_hex(sa, path, lineno)
        b = _parse_hex(sb, path, lineno)
        if (a | b) >> ctx.n:
            raise ParseError(f"element {s} out of range", path, lineno)
        elems.append(Z4(a, b))
    if len(set(elems)) != len(elems):
        raise ParseError("repeated element", path)
    return ctx, tuple(sorted(elems))


# -- automorphisms ----------------------------------------------------------------


def save_aut(path, ctx: GF2n, phi: Aut) -> None:
    lines = [field_header(ctx), "U"]
    lines += [_hex(r) for r in phi.U]
    lines.append("V")
    lines += [_hex(r) for r in phi.V]
    Path(path).write_text("\n".join(lines) + "\n")


def load_aut(path):
    lines = _read_lines(path)
    ctx = parse_field_header(lines[0][1], path, lines[0][0])
    blocks = {"U": [], "V": []}
    cur = None
    for lineno, s in lines[1:]:
        if s in ("U", "V"):
            cur = s
            continue
        if cur is None:
            raise ParseError("expected a U or V block label", path, lineno)
        r = _parse_hex(s, path, lineno)
        if r >> ctx.n:
            raise ParseError(f"matrix row {s} out of range", path, lineno)
        blocks[cur].append(r)
    if len(blocks["U"]) != ctx.n or len(blocks["V"]) != ctx.n:
        raise ParseError(f"U and V blocks must each have {ctx.n} rows", path)
    try:
        return ctx, make_aut(blocks["U"], blocks["V"])
    except DomainError as e:
        raise ParseError(str(e), path) from None


# -- Boolean functions ---------------------------------------------------------------


def save_boolfun(path, f: BoolFun) -> None:
    width = max(1, (1 << f.m) // 4)
    Path(path).write_text(f"m={f.m}\n{f.bits:0{width}x}\n")


def load_boolfun(path) -> BoolFun:
    lines = _read_lines(path)
    lineno, header = lines[0]
    if not header.startswith("m="):
        raise ParseError("Boolean function files start with m=<m>", path, lineno)
    try:
        m = int(header[2:])
    except ValueError:
        raise ParseError(f"bad m {header[2:]!r}", path, lineno) from None
    if len(lines) != 2:
        raise ParseError("expected exactly one packed table line", path)
    lineno, s = lines[1]
    bits = _parse_hex(s, path, lineno)
    try:
        return BoolFun(m, bits)
    except DomainError as e:
        raise ParseError(str(e), path, lineno) from None


# -- incidence structures --------------------------------------------------------------


def save_incidence(path, P: Incidence, matrix: bool = False) -> None:
    lines = [f"points={P.num_points} lines={P.num_lines}"]
    if matrix:
        for r in P.matrix_rows():
            lines.append("".join(str((r >> p) & 1) for p in range(P.num_points)))
    else:
        for pts in P.line_points:
            lines.append(" ".join(str(p) for p in pts))
    Path(path).write_text("\n".join(lines) + "\n")
