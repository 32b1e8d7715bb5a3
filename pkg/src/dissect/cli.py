"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 input error,
3 precondition failure (cap exceeded, non-cellular input, negative count).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import arrangement as arr
from .builders import BuildError, CapExceeded, NotCellular2D
from .closedforms import f_buck_projective, f_simple_hyperplane, f_simple_sphere, f_simple_toric
from .exactmath import format_polynomial, format_rational
from .fileformat import ParseError, ValidationError, parse
from .oracle import OracleError
from .verification import verify_model

COMMANDS = ("describe", "charpoly", "chambers", "faces", "fiber", "verify", "closedform", "poset")

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class UnknownCommand(ValueError):
    pass


def _load(path: str, cap=None) -> arr.ArrangementModel:
    data = Path(path).read_bytes()
    return parse(data).build(cap)


def _emit(payload: dict, text: str, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _flat_json(m: arr.ArrangementModel, y: str) -> dict:
    node = m.flats[y]
    entry = {"id": y, "dim": node.dim, "rank": m.poset.rank_of[y], "poin_c": node.poin_c.to_list(),
             "kappa": node.kappa}
    handle = node.handle
    point = getattr(handle, "point", None) or getattr(handle, "witness", None)
    if point is not None:
        entry["witness"] = [format_rational(c) for c in point]
    return entry


def cmd_describe(m, args, out):
    rep = arr.report(m)
    rep.update(family=m.family, ambient_dim=m.ambient_dim, asserted_cellular=m.asserted_cellular,
               flats=[_flat_json(m, y) for y in m.ordered()])
    lines = [
        f"family: {m.family}  (ambient dim {m.ambient_dim})",
        f"flats: {len(m.flats)}",
        f"char_poly: {format_polynomial(arr.generalized_char_poly(m))}",
        f"chambers: {rep['chambers']}",
        f"f_vector: {' '.join(map(str, rep['f_vector']))}",
    ]
    if m.asserted_cellular:
        lines.append("note: cellularity asserted, not checked")
    _emit(rep, "\n".join(lines), args.format, out)
    return EXIT_OK


def cmd_charpoly(m, args, out):
    p = arr.generalized_char_poly(m)
    _emit({"char_poly": p.to_list()}, format_polynomial(p), args.format, out)
    return EXIT_OK


def cmd_chambers(m, args, out):
    n = arr.chamber_count(m)
    _emit({"chambers": n}, str(n), args.format, out)
    return EXIT_OK


def cmd_faces(m, args, out):
    f = arr.f_vector(m)
    _emit({"f_vector": f}, " ".join(map(str, f)), args.format, out)
    return EXIT_OK


def cmd_fiber(m, args, out):
    if not args.chain:
        raise ValidationError("fiber needs --chain id,id,...")
    chain = [c.strip() for c in args.chain.split(",") if c.strip()]
    if len(chain) == 1:
        # single flat: chambers of the induced arrangement on it
        if chain[0] not in m.flats:
            raise ValidationError(f"unknown flat {chain[0]!r}")
        n = arr.restriction_chambers(m, chain[0])
    else:
        n = arr.bayer_sturmfels_fiber(m, chain)
    _emit({"fibers": {",".join(chain): n}}, str(n), args.format, out)
    return EXIT_OK


def cmd_verify(m, args, out):
    checks = verify_model(m)
    ok = all(c.ok for c in checks)
    width = max(len(c.quantity) for c in checks)
    lines = [f"{'quantity'.ljust(width)}  formula | oracle | status"]
    for c in checks:
        lines.append(f"{c.quantity.ljust(width)}  {c.formula} | {c.oracle} | {'PASS' if c.ok else 'FAIL'}")
    lines.append("verified" if ok else "MISMATCH")
    _emit({"verification": [c.row() for c in checks], "ok": ok}, "\n".join(lines), args.format, out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_poset(m, args, out):
    text = m.poset.hasse_text()
    payload = {"elements": [
        {"id": y, "rank": m.poset.rank_of[y], "covers": [a for a, b in m.poset.covers if b == y]}
        for y in m.ordered()]}
    _emit(payload, text, args.format, out)
    return EXIT_OK


def cmd_closedform(args, out):
    fam, l = args.family, args.l
    if l is None:
        raise ValidationError("closedform needs --l")
    if fam == "projective":
        if args.n is None:
            raise ValidationError("projective closed form needs --n")
        f = [f_buck_projective(args.n, l, k) for k in range(l + 1)]
    elif fam == "toric":
        if args.a0 is None:
            raise ValidationError("toric closed form needs --a0")
        f = [f_simple_toric(args.a0, l, k) for k in range(l + 1)]
    elif fam in ("hyperplane", "sphere"):
        if args.census:
            census = [int(x) for x in args.census.split(",")]
        elif fam == "hyperplane" and args.n is not None:
            from math import comb
            census = [comb(args.n, l - j) for j in range(l + 1)]
        else:
            raise ValidationError(f"{fam} closed form needs --census a0,a1,... (or --n for hyperplanes)")
        fn = f_simple_hyperplane if fam == "hyperplane" else f_simple_sphere
        f = [fn(census, l, k) for k in range(l + 1)]
    else:
        raise ValidationError(f"no closed form for family {fam!r}")
    text = "\n".join(f"f_{k} = {v}" for k, v in enumerate(f))
    _emit({"family": fam, "f_vector": f}, text, args.format, out)
    return EXIT_OK


HANDLERS = {
    "describe": cmd_describe,
    "charpoly": cmd_charpoly,
    "chambers": cmd_chambers,
    "faces": cmd_faces,
    "fiber": cmd_fiber,
    "verify": cmd_verify,
    "poset": cmd_poset,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dissect", description=__doc__.splitlines()[0])
    parser.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("target", nargs="?", help="arrangement file, or family name for closedform")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--chain", help="comma-separated flat ids for `fiber`")
    parser.add_argument("--cap", type=int, help="maximum number of hypersurfaces for builders")
    parser.add_argument("--n", type=int, help="closedform: number of hyperplanes")
    parser.add_argument("--l", type=int, help="closedform: ambient dimension")
    parser.add_argument("--a0", type=int, help="closedform toric: number of vertices")
    parser.add_argument("--census", help="closedform: a_0,a_1,... counts of j-dimensional flats")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = make_parser().parse_args(argv)
    try:
        if args.command not in COMMANDS:
            raise UnknownCommand(f"unknown command {args.command!r}; expected one of {', '.join(COMMANDS)}")
        if args.target is None:
            raise ValidationError(f"{args.command} needs a {'family' if args.command == 'closedform' else 'file'}")
        if args.command == "closedform":
            args.family = args.target
            return cmd_closedform(args, out)
        m = _load(args.target, args.cap)
        return HANDLERS[args.command](m, args, out)
    except (UnknownCommand, ParseError, ValidationError, OSError, arr.NotAChain) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CapExceeded as exc:
        err.write(f"error: {exc}\n(raise the limit with --cap or DISSECT_CAP, or split the arrangement)\n")
        return EXIT_PRECONDITION
    except (NotCellular2D, BuildError, OracleError, arr.NegativeCount, arr.PreconditionFailed) as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
