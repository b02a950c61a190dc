"""Bundled fixture algebras and the worked examples they reproduce."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .applications import band_big_hl, band_hl, ext_dim, reduce_hl, reduction_chain
from .complexes import assemble, cohomology_oracle, cohomology_truncation, compare_reports
from .homotopy import Jordan, parse_homotopy
from .quiver import GentleQuiver, parse_quiver
from .resolution import resolve_to_complex, rotate
from .strings import parse_band, parse_string

FIXTURES = ("nine_vertex", "kronecker")

# nine-vertex algebra: curve through all nine vertices, top degree 0
NINE_VERTEX_CURVE = "[-1] ~a1 [0] a9 [-1] a8 [-2] a7.a6 [-3] ~a5 [-2] ~a4 [-1] a3 [-2] ~a2 [-1] ~a1 [0]"
NINE_VERTEX_TABLE = {
    -3: {},
    -2: {"6": 1, "7": 1},
    -1: {"3": 2, "4": 1},
    0: {"1": 2, "9": 1},
}
NINE_VERTEX_STRINGS = {-1: ["e(3)", "a3"], 0: ["e(1)", "a9"]}
NINE_VERTEX_ROTATION_DIMS = (2, 4, 4, 3)
NINE_VERTEX_REDUCED = {-2: 2, -1: 2, 0: 2}
KRONECKER_BAND = "band[a.~b]"
KRONECKER_CHAIN = ["P(2)^3 -> P(1)^2", "P(2) -> P(1)", "P(2)"]


def load_fixture(name: str) -> GentleQuiver:
    if name not in FIXTURES:
        raise KeyError(f"no bundled algebra named {name!r}; known: {', '.join(FIXTURES)}")
    text = resources.files("gentlekit").joinpath("fixtures", f"{name}.quiver").read_text()
    return parse_quiver(text)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _table(report) -> dict[int, dict[str, int]]:
    return {n: dict(sorted(d.items())) for n, d in report.dims_by_degree().items()}


def check_nine_vertex_cohomology() -> Check:
    q = load_fixture("nine_vertex")
    h = parse_homotopy(q, NINE_VERTEX_CURVE)
    oracle = cohomology_oracle(q, assemble(q, h))
    comb = cohomology_truncation(q, h)
    problems = compare_reports(oracle, comb)
    for n, want in NINE_VERTEX_TABLE.items():
        if oracle.at(n).dims != want:
            problems.append(f"H^{n} is {oracle.at(n).dims}, expected {want}")
    for n, want in NINE_VERTEX_STRINGS.items():
        got = sorted(str(s) for s in comb.at(n).strings)
        if got != sorted(want):
            problems.append(f"H^{n} decomposes as {got}, expected {want}")
    if oracle.hl != 3 or comb.hl != 3:
        problems.append(f"hl is {oracle.hl}/{comb.hl}, expected 3")
    return Check("cohomology of the nine-vertex curve", not problems, "; ".join(problems) or "table and decomposition match")


def check_nine_vertex_rotation() -> Check:
    q = load_fixture("nine_vertex")
    c = parse_string(q, "e(1)")
    rot = rotate(q, c)
    pc = resolve_to_complex(q, c, -min(rot.string.degrees))
    dims = tuple(sum(len(q.paths_from(v)) for v in pc.summands[n]) for n in sorted(pc.summands))
    report = cohomology_oracle(q, pc)
    table = {n: d for n, d in _table(report).items() if d}
    problems = []
    if dims != NINE_VERTEX_ROTATION_DIMS:
        problems.append(f"component dims {dims}, expected {NINE_VERTEX_ROTATION_DIMS}")
    if table != {0: {"1": 1}}:
        problems.append(f"cohomology {table}, expected only H^0 = S(1)")
    return Check("resolution of S(1)", not problems, "; ".join(problems) or f"{pc.shape_text()}, dims {dims}")


def check_nine_vertex_reduction() -> Check:
    q = load_fixture("nine_vertex")
    y = reduce_hl(q, parse_homotopy(q, NINE_VERTEX_CURVE))
    report = cohomology_oracle(q, y)
    totals = {d.n: d.total for d in report.degrees if d.total}
    ok = totals == NINE_VERTEX_REDUCED and report.hl == 2
    return Check("hl reduction of the nine-vertex curve", ok, f"{y.origin}: per-degree dims {totals}")


def check_kronecker() -> Check:
    q = load_fixture("kronecker")
    b = parse_band(q, KRONECKER_BAND)
    problems = []
    for lam in (Fraction(1), Fraction(2)):
        j = Jordan(2, lam)
        if band_hl(q, b, j) != 4:
            problems.append(f"hl of B(2,{lam}) is {band_hl(q, b, j)}, expected 4")
        big = band_big_hl(q, b, 4, j)
        h0 = cohomology_oracle(q, assemble(q, big)).at(0)
        if h0.total != 6:
            problems.append(f"winding {big} has dim H^0 {h0.total}, expected 6")
        chain = reduction_chain(q, b, j)
        shapes = [y.shape_text() for y in chain]
        hls = [cohomology_oracle(q, y).hl for y in chain]
        if shapes != KRONECKER_CHAIN or hls != [3, 2, 1]:
            problems.append(f"chain {shapes} with hl {hls}")
        if ext_dim(q, (b, j), 1) == 0:
            problems.append(f"Ext^1(B(2,{lam}), A) vanishes")
    return Check("Kronecker band complexes", not problems, "; ".join(problems) or "hl 4, winding H^0 6, chain 3 2 1, Ext^1 nonzero")


CHECKS = (check_nine_vertex_cohomology, check_nine_vertex_rotation, check_nine_vertex_reduction, check_kronecker)


def run_selftest() -> list[Check]:
    return [check() for check in CHECKS]
