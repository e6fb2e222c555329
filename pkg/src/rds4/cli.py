"""Command line front end.

Exit codes: 0 when the checked property holds (or the run completed),
1 when it fails, 2 for malformed input or domain errors, 3 when a size
or budget cap was hit.  JSON reports carry schema version 1, the tool
version and the field context.  Randomized choices are fully driven by
--seed; --threads is accepted for interface stability but execution is
serial either way, so reports never depend on it.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import __version__
from .bent4 import anf_of, bf_from_table, degree, is_shifted_bent, lam_mask
from .errors import DomainError, ParseError, ResourceError
from .fileio import (
    load_boolfun,
    load_poly,
    load_rds,
    load_table,
    parse_field_header,
    save_incidence,
    save_poly,
    save_rds,
    save_table,
    save_witness,
)
from .gf2n import GF2n
from .planar import (
    construct,
    evaluate,
    f_to_h,
    h_to_f,
    interpolate,
    is_dembowski_ostrom,
    is_planar,
    is_planar_h,
    normalize_f,
    normalize_h,
)
from .plane import build_plane, coordinatize, nuclei, semifield_report, verify_plane
from .rds import are_equivalent, are_equivalent_semifield, rds_from_h, verify_rds
from .twovalued import pn_basis, sequence_sa, thm41_bruteforce


@dataclass
class RunConfig:
    n: int | None
    modulus: int | None
    seed: int
    threads: int
    fmt: str
    budget: int | None

    @classmethod
    def from_args(cls, args):
        threads = getattr(args, "threads", 1)
        if threads < 1:
            raise DomainError("--threads must be at least 1")
        return cls(
            n=getattr(args, "n", None),
            modulus=getattr(args, "modulus", None),
            seed=getattr(args, "seed", 0),
            threads=threads,
            fmt=getattr(args, "format", "text"),
            budget=getattr(args, "budget", None),
        )


def _hexint(s: str) -> int:
    return int(s, 16)


def _ctx(cfg: RunConfig) -> GF2n:
    if cfg.n is None:
        raise DomainError("--n is required here")
    return GF2n(cfg.n, cfg.modulus)


def _field_json(ctx: GF2n) -> dict:
    return {
        "n": ctx.n,
        "modulus": f"0x{ctx.modulus:x}",
        "basis": [f"0x{b:x}" for b in ctx.basis],
    }


def _report(command: str, ctx: GF2n | None, payload: dict) -> dict:
    doc = {"schema": 1, "tool": "rds4", "version": __version__, "command": command}
    if ctx is not None:
        doc["field"] = _field_json(ctx)
    doc.update(payload)
    return doc


def _emit(cfg: RunConfig, doc: dict, text_lines) -> None:
    if cfg.fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# -- subcommands -------------------------------------------------------------


def cmd_verify(args) -> int:
    cfg = RunConfig.from_args(args)
    kind = args.kind
    if kind == "planar":
        ctx, f = load_table(args.input)
        ok = is_planar(ctx, f)
        doc = _report("verify", ctx, {"kind": kind, "holds": ok})
        _emit(cfg, doc, [f"planar: {'yes' if ok else 'no'}"])
        return 0 if ok else 1
    if kind == "rds":
        ctx, D = load_rds(args.input)
        ok = verify_rds(D)
        doc = _report("verify", ctx, {"kind": kind, "holds": ok})
        _emit(cfg, doc, [f"relative difference set: {'yes' if ok else 'no'}"])
        return 0 if ok else 1
    if kind == "plane":
        ctx, D = load_rds(args.input)
        P = build_plane(D, check=False)
        ok = verify_plane(P, rng=random.Random(cfg.seed))
        doc = _report(
            "verify",
            ctx,
            {"kind": kind, "holds": ok, "points": P.num_points, "lines": P.num_lines},
        )
        _emit(cfg, doc, [f"projective plane: {'yes' if ok else 'no'}"])
        return 0 if ok else 1
    if kind == "semifield":
        ctx, D = load_rds(args.input)
        rep = semifield_report(D, GF2n(ctx.n, ctx.modulus, ctx.basis))
        doc = _report("verify", ctx, {"kind": kind, "holds": rep.is_semifield})
        _emit(cfg, doc, [f"semifield: {'yes' if rep.is_semifield else 'no'}"])
        return 0 if rep.is_semifield else 1
    raise DomainError(f"unknown verify kind {kind!r}")


def cmd_generate(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx = _ctx(cfg)
    chain = [int(t) for t in args.chain.split(",")] if args.chain else ()
    zetas = [_hexint(t) for t in args.zetas.split(",")] if args.zetas else ()
    f = construct(ctx, args.kind, chain=chain, zetas=zetas)
    if args.as_form == "f":
        save_table(args.output, ctx, f)
    elif args.as_form == "h":
        save_table(args.output, ctx, f_to_h(ctx, f))
    else:
        save_rds(args.output, ctx, rds_from_h(f_to_h(ctx, f)))
    doc = _report("generate", ctx, {"kind": args.kind, "as": args.as_form, "output": args.output})
    _emit(cfg, doc, [f"wrote {args.as_form} for {args.kind} to {args.output}"])
    return 0


def cmd_convert(args) -> int:
    cfg = RunConfig.from_args(args)
    d = args.direction
    if d == "h2f":
        ctx, h = load_table(args.input)
        save_table(args.output, ctx, h_to_f(ctx, h))
    elif d == "f2h":
        ctx, f = load_table(args.input)
        save_table(args.output, ctx, f_to_h(ctx, f))
    elif d == "tt2poly":
        ctx, f = load_table(args.input)
        save_poly(args.output, ctx, interpolate(ctx, f))
    elif d == "poly2tt":
        ctx, poly = load_poly(args.input)
        save_table(args.output, ctx, evaluate(ctx, poly))
    elif d == "normalize":
        ctx, kind, data = _sniff(args.input)
        if kind == "poly":
            save_poly(args.output, ctx, normalize_f(ctx, data))
        else:
            save_table(args.output, ctx, normalize_h(data))
    else:
        raise DomainError(f"unknown direction {d!r}")
    doc = _report("convert", None, {"direction": d, "output": args.output})
    _emit(cfg, doc, [f"converted {args.input} -> {args.output} ({d})"])
    return 0


def _sniff(path):
    """Tell a polynomial file from a truth-table file by its line shape."""
    from .fileio import _read_lines

    lines = _read_lines(path)
    if any(len(s.split()) == 2 for _, s in lines[1:]):
        ctx, poly = load_poly(path)
        return ctx, "poly", poly
    ctx, table = load_table(path)
    return ctx, "table", table


def cmd_build_plane(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx, D = load_rds(args.input)
    P = build_plane(D)
    save_incidence(args.output, P, matrix=args.matrix)
    doc = _report(
        "build-plane",
        ctx,
        {"points": P.num_points, "lines": P.num_lines, "output": args.output},
    )
    _emit(cfg, doc, [f"{P.num_points} points, {P.num_lines} lines -> {args.output}"])
    return 0


def cmd_check_semifield(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx, D = load_rds(args.input)
    rep = semifield_report(D, GF2n(ctx.n, ctx.modulus, ctx.basis))
    names = (
        "star_distributive",
        "product_distributive",
        "presemifield_identity",
        "quadratic_components",
        "dembowski_ostrom",
    )
    payload = {name: getattr(rep, name) for name in names}
    payload["is_semifield"] = rep.is_semifield
    payload["timings"] = rep.timings
    doc = _report("check-semifield", ctx, payload)
    text = [f"{name}: {'yes' if getattr(rep, name) else 'no'}" for name in names]
    text.append(f"semifield: {'yes' if rep.is_semifield else 'no'}")
    _emit(cfg, doc, text)
    return 0 if rep.is_semifield else 1


def cmd_nuclei(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx, D = load_rds(args.input)
    ptr = coordinatize(D)
    left, middle, right = nuclei(ptr.star)
    doc = _report(
        "nuclei",
        ctx,
        {
            "left": [f"0x{v:x}" for v in left],
            "middle": [f"0x{v:x}" for v in middle],
            "right": [f"0x{v:x}" for v in right],
            "sizes": [len(left), len(middle), len(right)],
        },
    )
    _emit(
        cfg,
        doc,
        [
            f"left nucleus ({len(left)}): {' '.join(f'0x{v:x}' for v in left)}",
            f"middle nucleus ({len(middle)}): {' '.join(f'0x{v:x}' for v in middle)}",
            f"right nucleus ({len(right)}): {' '.join(f'0x{v:x}' for v in right)}",
        ],
    )
    return 0


def cmd_equivalence(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx, D1 = load_rds(args.left)
    ctx2, D2 = load_rds(args.right)
    if (ctx.n, ctx.modulus) != (ctx2.n, ctx2.modulus):
        raise DomainError("the two files use different field contexts")
    budget = cfg.budget if cfg.budget is not None else 2_000_000
    if args.semifield:
        phi = are_equivalent_semifield(D1, D2, budget=budget)
        witness = None if phi is None else (phi, None)
    else:
        witness = are_equivalent(D1, D2, budget=budget)
    if witness is None:
        doc = _report("equivalence", ctx, {"equivalent": False})
        _emit(cfg, doc, ["equivalent: no"])
        return 1
    phi, g = witness
    if args.output:
        save_witness(args.output, ctx, phi, g)
    payload = {
        "equivalent": True,
        "U": [f"{r:x}" for r in phi.U],
        "V": [f"{r:x}" for r in phi.V],
    }
    if g is not None:
        payload["translation"] = f"{g.a:x}:{g.b:x}"
    doc = _report("equivalence", ctx, payload)
    text = ["equivalent: yes", f"U rows: {' '.join(f'{r:x}' for r in phi.U)}",
            f"V rows: {' '.join(f'{r:x}' for r in phi.V)}"]
    if g is not None:
        text.append(f"translation: {g.a:x}:{g.b:x}")
    _emit(cfg, doc, text)
    return 0


def cmd_thm41(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx = _ctx(cfg)
    rep = thm41_bruteforce(ctx, args.xi)
    payload = {
        "candidates": rep["candidates"],
        "planar": rep["planar"],
        "additive": rep["additive"],
        "surjective_planar": rep["surjective_planar"],
        "counterexamples": [
            [f"{v:x}" for v in f] for f in rep["counterexamples"]
        ],
    }
    doc = _report("thm41", ctx, payload)
    _emit(
        cfg,
        doc,
        [
            f"candidates: {rep['candidates']}",
            f"planar: {rep['planar']}",
            f"additive: {rep['additive']}",
            f"counterexamples: {len(rep['counterexamples'])}",
        ],
    )
    return 0 if not rep["counterexamples"] else 1


def cmd_pn_span(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx = _ctx(cfg)
    basis = pn_basis(ctx)
    spans = len(basis) == ctx.n
    payload = {
        "spans": spans,
        "rank": len(basis),
        "basis": [f"0x{v:x}" for v in basis],
    }
    doc = _report("pn-span", ctx, payload)
    if spans:
        _emit(cfg, doc, [f"spans: yes, basis {' '.join(f'0x{v:x}' for v in basis)}"])
        return 0
    _emit(cfg, doc, [f"spans: no, rank {len(basis)} out of {ctx.n}"])
    return 1


def cmd_bent4_check(args) -> int:
    cfg = RunConfig.from_args(args)
    f = load_boolfun(args.input)
    lam = [int(t) for t in args.lam.split(",")] if args.lam else []
    ok = is_shifted_bent(f, lam_mask(f.m, lam))
    doc = _report(
        "bent4-check",
        None,
        {"m": f.m, "lambda": sorted(lam), "shifted_bent": ok},
    )
    _emit(cfg, doc, [f"shifted-bent for {{{','.join(map(str, sorted(lam)))}}}: "
                     f"{'yes' if ok else 'no'}"])
    return 0 if ok else 1


def cmd_seq_sa(args) -> int:
    cfg = RunConfig.from_args(args)
    ctx = _ctx(cfg)
    seq = sequence_sa(ctx, args.a, args.xi, count=args.count)
    doc = _report(
        "seq-sa",
        ctx,
        {
            "a": f"0x{seq.a0:x}",
            "xi": f"0x{seq.xi:x}",
            "period": seq.period,
            "terms": [f"0x{t:x}" for t in seq.terms],
        },
    )
    _emit(
        cfg,
        doc,
        [f"period: {seq.period}", "terms: " + " ".join(f"0x{t:x}" for t in seq.terms)],
    )
    return 0


# -- search -------------------------------------------------------------------


def _anf_candidates(n: int, masks, index: int):
    """Decode one candidate h from the per-coordinate coefficient index."""
    q = 1 << n
    k = len(masks)
    h = [0] * q
    for j in range(n):
        cf = [0] * q
        sel = (index >> (j * k)) & ((1 << k) - 1)
        for t, mask in enumerate(masks):
            if (sel >> t) & 1:
                cf[mask] = 1
        step = 1
        while step < q:
            for x in range(q):
                if x & step:
                    cf[x] ^= cf[x ^ step]
            step <<= 1
        for x in range(q):
            h[x] |= cf[x] << j
    return h


def _search_nondo(ctx: GF2n, cfg: RunConfig, mode: str):
    """Planar h whose field polynomial is not Dembowski-Ostrom.

    Affine terms change neither planarity nor the normalized polynomial,
    so candidates run over coordinate ANFs built from monomials of
    degree >= 2 only.
    """
    n = ctx.n
    q = ctx.q
    masks = [m for m in range(q) if m.bit_count() >= 2]
    k = len(masks)
    budget = cfg.budget if cfg.budget is not None else 200_000
    findings = []
    examined = 0
    complete = True
    if mode == "exhaustive":
        total = 1 << (n * k)
        space = range(total)
    else:
        rng = random.Random(cfg.seed)
        total = budget
        space = (rng.getrandbits(n * k) for _ in range(budget))
    for index in space:
        if examined >= budget:
            complete = False
            break
        examined += 1
        h = _anf_candidates(n, masks, index)
        if not is_planar_h(h):
            continue
        poly = interpolate(ctx, h_to_f(ctx, h))
        if not is_dembowski_ostrom(ctx, poly):
            findings.append([f"{v:x}" for v in h])
    if mode == "random":
        complete = False
    return {
        "kind": "nondo-planar",
        "mode": mode,
        "examined": examined,
        "space": total if mode == "exhaustive" else None,
        "complete": complete and mode == "exhaustive",
        "findings": findings,
    }


def _search_sbs(n: int, cfg: RunConfig, mode: str):
    """Non-quadratic f shifted-bent for some subset of the coordinates."""
    q = 1 << n
    masks = [m for m in range(q) if m.bit_count() >= 2]
    k = len(masks)
    budget = cfg.budget if cfg.budget is not None else 200_000
    findings = []
    examined = 0
    complete = True
    if mode == "exhaustive":
        space = range(1 << k)
    else:
        rng = random.Random(cfg.seed)
        space = (rng.getrandbits(k) for _ in range(budget))
    for sel in space:
        if examined >= budget:
            complete = False
            break
        examined += 1
        bits = 0
        for t, mask in enumerate(masks):
            if (sel >> t) & 1:
                bits |= 1 << mask
        f = bf_from_table([0] * q)
        f = type(f)(n, _anf_bits_to_table(n, bits))
        if degree(f) < 3:
            continue
        for lam in range(1 << n):
            if is_shifted_bent(f, lam):
                findings.append({"table": f"{f.bits:x}", "lambda": lam})
                break
    if mode == "random":
        complete = False
    return {
        "kind": "shifted-bent-system",
        "mode": mode,
        "examined": examined,
        "space": (1 << k) if mode == "exhaustive" else None,
        "complete": complete and mode == "exhaustive",
        "findings": findings,
    }


def _anf_bits_to_table(m: int, coeff_bits: int) -> int:
    from .bent4 import _low_mask

    t = coeff_bits
    for i in range(m):
        t ^= (t & _low_mask(m, i)) << (1 << i)
    return t


def cmd_search(args) -> int:
    cfg = RunConfig.from_args(args)
    if args.kind == "nondo-planar":
        ctx = _ctx(cfg)
        if args.mode == "exhaustive" and ctx.n > 4:
            raise ResourceError("exhaustive search is capped at n=4")
        result = _search_nondo(ctx, cfg, args.mode)
        doc = _report("search", ctx, result)
    elif args.kind == "shifted-bent-system":
        if cfg.n is None:
            raise DomainError("--n is required here")
        if args.mode == "exhaustive" and cfg.n > 4:
            raise ResourceError("exhaustive search is capped at n=4")
        result = _search_sbs(cfg.n, cfg, args.mode)
        doc = _report("search", None, result)
    else:
        raise DomainError(f"unknown search kind {args.kind!r}")
    if args.output:
        from pathlib import Path

        Path(args.output).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _emit(
        cfg,
        doc,
        [
            f"examined: {result['examined']}",
            f"complete: {'yes' if result['complete'] else 'no'}",
            f"findings: {len(result['findings'])}",
        ],
    )
    return 0


# -- wiring ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--modulus", type=_hexint, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None)

    p = argparse.ArgumentParser(prog="rds4", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("--kind", required=True, choices=("planar", "rds", "plane", "semifield"))
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("generate", parents=[common])
    sp.add_argument("--kind", required=True, choices=("zero", "knuth", "kantor"))
    sp.add_argument("--chain", default="")
    sp.add_argument("--zetas", default="")
    sp.add_argument("--as", dest="as_form", choices=("f", "h", "rds"), default="f")
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("convert", parents=[common])
    sp.add_argument(
        "--direction",
        required=True,
        choices=("h2f", "f2h", "tt2poly", "poly2tt", "normalize"),
    )
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("build-plane", parents=[common])
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--matrix", action="store_true")
    sp.set_defaults(func=cmd_build_plane)

    sp = sub.add_parser("check-semifield", parents=[common])
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_check_semifield)

    sp = sub.add_parser("nuclei", parents=[common])
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_nuclei)

    sp = sub.add_parser("equivalence", parents=[common])
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--semifield", action="store_true")
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_equivalence)

    sp = sub.add_parser("thm41", parents=[common])
    sp.add_argument("--xi", type=_hexint, required=True)
    sp.set_defaults(func=cmd_thm41)

    sp = sub.add_parser("pn-span", parents=[common])
    sp.set_defaults(func=cmd_pn_span)

    sp = sub.add_parser("bent4-check", parents=[common])
    sp.add_argument("--input", required=True)
    sp.add_argument("--lambda", dest="lam", default="")
    sp.set_defaults(func=cmd_bent4_check)

    sp = sub.add_parser("search", parents=[common])
    sp.add_argument("--kind", required=True, choices=("nondo-planar", "shifted-bent-system"))
    sp.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("seq-sa", parents=[common])
    sp.add_argument("--a", type=_hexint, required=True)
    sp.add_argument("--xi", type=_hexint, required=True)
    sp.add_argument("--count", type=int, default=None)
    sp.set_defaults(func=cmd_seq_sa)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return 2
    except ResourceError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
