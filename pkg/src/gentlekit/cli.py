"""Command-line front end; every command prints one JSON report.

Exit codes: 0 success, 1 invalid input, 2 internal mismatch between the
matrix and combinatorial computations, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .applications import (
    NakayamaFailure,
    ReductionError,
    band_hl,
    nakayama_witness,
    no_gaps_census,
    reduce_band_hl,
    reduce_hl,
)
from .complexes import ComplexError, assemble, cohomology_oracle, cohomology_truncation, compare_reports
from .draw import to_dot, to_svg, zigzag_of_homotopy, zigzag_of_string
from .goldens import FIXTURES, load_fixture, run_selftest
from .homotopy import HomotopyError, Jordan, homotopy_to_json, parse_homotopy
from .linalg import parse_rational
from .modules import dim_vector, string_to_module
from .properties import fuzz
from .quiver import GentleQuiver, QuiverError, parse_quiver
from .resolution import projective_dimension, resolve_to_complex, rotate
from .strings import StringError, enumerate_bands, enumerate_strings, parse_band, parse_string

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3


class Mismatch(Exception):
    """Two computations of the same quantity disagree."""

    def __init__(self, report: dict):
        super().__init__("computations disagree")
        self.report = report


# inputs -------------------------------------------------------------------------


def _read(arg: str) -> str:
    """``@path`` reads a file, anything else is taken literally."""
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def load_algebra(arg: str) -> tuple[str, GentleQuiver]:
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return os.path.basename(arg), parse_quiver(fh.read())
    if arg in FIXTURES:
        return arg, load_fixture(arg)
    raise FileNotFoundError(f"no algebra file {arg!r} and no bundled algebra of that name")


def _jordan(args) -> Jordan:
    return Jordan(args.n, parse_rational(args.lam))


def _object(q: GentleQuiver, args):
    """The string, homotopy string or (band, Jordan) named on the command line."""
    if getattr(args, "complex", None):
        return "complex", parse_homotopy(q, _read(args.complex))
    if getattr(args, "string", None):
        return "string", parse_string(q, _read(args.string))
    if getattr(args, "band", None):
        return "band", (parse_band(q, _read(args.band)), _jordan(args))
    return None, None


def _add_object(p, string=True, complex_=True, band=True):
    if string:
        p.add_argument("--string", help="string, e.g. ~a9.a1 or e(3); @file reads it from a file")
    if complex_:
        p.add_argument("--complex", help="homotopy string, e.g. '[0] a [-1] ~b [0]' or JSON; @file reads a file")
    if band:
        p.add_argument("--band", help="band, e.g. band[a.~b]")
        p.add_argument("--n", type=int, default=1, help="Jordan block size for a band (default 1)")
        p.add_argument("--lam", default="1", help="Jordan eigenvalue as an exact rational (default 1)")


# commands -----------------------------------------------------------------------


def cmd_validate(args) -> dict:
    name, q = load_algebra(args.algebra)
    report = {"algebra": name, "quiver": q.to_json(), "dimension": q.dimension}
    kind, obj = _object(q, args)
    if kind == "string":
        report["string"] = str(obj)
        report["dim_vector"] = dict(sorted(dim_vector(string_to_module(q, obj)).items()))
    elif kind == "complex":
        report["complex"] = homotopy_to_json(obj)
    elif kind == "band":
        b, j = obj
        report["band"] = str(b)
        report["jordan"] = j.to_json()
    report["valid"] = True
    return report


def cmd_resolve(args) -> dict:
    name, q = load_algebra(args.algebra)
    c = parse_string(q, _read(args.string))
    rot = rotate(q, c, args.window)
    window = -min(rot.string.degrees)
    pc = resolve_to_complex(q, c, window)
    report = cohomology_oracle(q, pc)
    want = {k: v for k, v in sorted(dim_vector(string_to_module(q, c)).items()) if v}
    interior = {d.n: d.dims for d in report.degrees if d.n != 0 and d.total and (rot.finite or d.n > -window)}
    out = {
        "algebra": name,
        "string": str(c),
        "rotation": str(rot.string),
        "finite": rot.finite,
        "projective_dimension": projective_dimension(q, c),
        "window": window,
        "shape": pc.shape_text(),
        "component_dims": {str(n): sum(len(q.paths_from(v)) for v in vs) for n, vs in sorted(pc.summands.items())},
        "tails": {side: None if t is None else {"preperiod": t.preperiod, "period": t.period, "cycle": list(t.cycle)}
                  for side, t in zip(("left", "right"), rot.tails)},
        "cohomology": report.to_json(),
    }
    if dict(sorted(report.at(0).dims.items())) != want or interior:
        out["expected_h0"] = want
        raise Mismatch(out)
    return out


def cmd_cohomology(args) -> dict:
    name, q = load_algebra(args.algebra)
    kind, obj = _object(q, args)
    if kind is None:
        raise ValueError("give --complex or --string")
    h = rotate(q, obj, args.window).string if kind == "string" else obj
    oracle = cohomology_oracle(q, assemble(q, h))
    comb = cohomology_truncation(q, h)
    diffs = compare_reports(oracle, comb)
    out = {
        "algebra": name,
        "complex": str(h),
        "oracle": oracle.to_json(),
        "truncation": comb.to_json(),
        "curves": {str(d.n): [str(t) for t in d.curves or []] for d in comb.degrees},
        "hl": oracle.hl,
        "diff": diffs,
    }
    if diffs:
        raise Mismatch(out)
    return out


def cmd_hl(args) -> dict:
    name, q = load_algebra(args.algebra)
    kind, obj = _object(q, args)
    if kind == "band":
        b, j = obj
        return {"algebra": name, "band": str(b), "jordan": j.to_json(), "hl": band_hl(q, b, j)}
    if kind != "complex":
        raise ValueError("give --complex or --band")
    oracle = cohomology_oracle(q, assemble(q, obj)).hl
    comb = cohomology_truncation(q, obj, decompose=False).hl
    out = {"algebra": name, "complex": str(obj), "hl": oracle, "hl_truncation": comb}
    if oracle != comb:
        raise Mismatch(out)
    return out


def _needs_length(value: int) -> None:
    if value < 2:
        raise ValueError(f"cohomological length is {value}; reduction needs at least 2")


def cmd_reduce_hl(args) -> dict:
    name, q = load_algebra(args.algebra)
    kind, obj = _object(q, args)
    if kind == "band":
        b, j = obj
        before = band_hl(q, b, j)
        _needs_length(before)
        y = reduce_band_hl(q, b, j)
        source = {"band": str(b), "jordan": j.to_json()}
    elif kind == "complex":
        before = cohomology_oracle(q, assemble(q, obj)).hl
        _needs_length(before)
        y = reduce_hl(q, obj)
        source = {"complex": str(obj)}
    else:
        raise ValueError("give --complex or --band")
    after = cohomology_oracle(q, y)
    out = {
        "algebra": name,
        **source,
        "hl_before": before,
        "hl_after": after.hl,
        "result_shape": y.shape_text(),
        "result_string": None if y.origin is None else str(y.origin),
        "result_cohomology": after.to_json(),
    }
    if after.hl != before - 1:
        raise Mismatch(out)
    return out


def cmd_nogaps(args) -> dict:
    name, q = load_algebra(args.algebra)
    cert = no_gaps_census(q, args.max_len, name, parse_rational(args.lam))
    return cert.to_json()


def cmd_nakayama(args) -> dict:
    name, q = load_algebra(args.algebra)
    if args.all:
        items = list(enumerate_strings(q, args.max_len))
        lams = [Fraction(1), Fraction(2)]
        items += [(b, Jordan(n, lam)) for b in enumerate_bands(q, args.max_len) for n in (1, 2) for lam in lams]
    else:
        kind, obj = _object(q, args)
        if kind not in ("string", "band"):
            raise ValueError("give --all, --string or --band")
        items = [obj]
    witnesses = [nakayama_witness(q, m).to_json() for m in items]
    return {"algebra": name, "max_len": args.max_len if args.all else None, "witnesses": witnesses,
            "max_d": max((w["d"] for w in witnesses), default=None)}


def cmd_draw(args) -> str:
    _, q = load_algebra(args.algebra)
    kind, obj = _object(q, args)
    if kind == "string":
        z = zigzag_of_string(obj)
    elif kind == "complex":
        z = zigzag_of_homotopy(obj)
    else:
        raise ValueError("give --string or --complex")
    return to_svg(z) if args.format == "svg" else to_dot(z)


def cmd_selftest(args) -> dict:
    checks = run_selftest()
    out = {"checks": [c.to_json() for c in checks], "passed": all(c.passed for c in checks)}
    if not out["passed"]:
        raise Mismatch(out)
    return out


def cmd_fuzz(args) -> dict:
    report = fuzz(args.seed, args.count, args.max_len, args.homotopy_len, args.random_strings)
    if not report["passed"]:
        raise Mismatch(report)
    return report


# driver -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gentlekit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help_, algebra=True):
        p = sub.add_parser(name, help=help_)
        if algebra:
            p.add_argument("--algebra", required=True, help="quiver file, or a bundled name: " + ", ".join(FIXTURES))
        p.add_argument("--out", help="write the report here instead of standard output")
        p.set_defaults(fn=fn)
        return p

    _add_object(command("validate", cmd_validate, "check an algebra and optionally a string, band or complex"))
    p = command("resolve", cmd_resolve, "projective resolution of a string module")
    p.add_argument("--string", required=True)
    p.add_argument("--window", type=int, help="lowest degree kept for an infinite resolution")
    p = command("cohomology", cmd_cohomology, "cohomology by matrices and by truncations, with their diff")
    _add_object(p, band=False)
    p.add_argument("--window", type=int, help="window when resolving a --string")
    _add_object(command("hl", cmd_hl, "cohomological length"), string=False)
    _add_object(command("reduce-hl", cmd_reduce_hl, "complex with cohomological length one lower"), string=False)
    p = command("nogaps", cmd_nogaps, "census of cohomological lengths")
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--lam", default="1", help="eigenvalue for band complexes (default 1)")
    p = command("nakayama", cmd_nakayama, "smallest d with Ext^d(M, A) nonzero")
    p.add_argument("--all", action="store_true", help="every string and band up to --max-len")
    p.add_argument("--max-len", type=int, default=5)
    _add_object(p, complex_=False)
    p = command("draw", cmd_draw, "zigzag diagram of a string or homotopy string")
    _add_object(p, band=False)
    p.add_argument("--format", choices=("svg", "dot"), default="svg")
    command("selftest", cmd_selftest, "reproduce the bundled worked examples", algebra=False)
    p = command("fuzz", cmd_fuzz, "property checks over seeded random algebras", algebra=False)
    p.add_argument("--seed", type=int, required=True, help="64-bit seed, recorded in the report")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-len", type=int, default=5)
    p.add_argument("--homotopy-len", type=int, default=4)
    p.add_argument("--random-strings", type=int, default=10)
    return parser


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, exc: Exception) -> dict:
    err = {"kind": kind, "type": type(exc).__name__, "message": str(exc)}
    clause = getattr(exc, "clause", None)
    if clause:
        err["clause"] = clause
    return {"error": err}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2 ** 64:
        _emit(_error("validation", ValueError("seed must fit in 64 bits")), None)
        return EXIT_INVALID
    try:
        payload = args.fn(args)
    except Mismatch as exc:
        _emit({"mismatch": True, **exc.report}, args.out)
        return EXIT_MISMATCH
    except (ReductionError, NakayamaFailure, ComplexError) as exc:
        _emit(_error("internal", exc), None)
        return EXIT_MISMATCH
    except OSError as exc:
        _emit(_error("io", exc), None)
        return EXIT_IO
    except (QuiverError, StringError, HomotopyError, ValueError, KeyError) as exc:
        _emit(_error("validation", exc), None)
        return EXIT_INVALID
    try:
        _emit(payload, args.out)
    except OSError as exc:
        _emit(_error("io", exc), None)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
