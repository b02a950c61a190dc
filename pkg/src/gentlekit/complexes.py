"""Projective complexes from homotopy strings and bands, and their cohomology.

Two independent cohomology computations live here: an exact matrix
oracle on vertex-graded blocks, and the combinatorial method that reads
each summand's contribution off its projective string as a truncation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .homotopy import HomotopyBand, HomotopyString, Jordan
from .linalg import Matrix, identity, is_zero, jordan_block, matmul, rank
from .quiver import GentleQuiver, Path
from .strings import (
    StringWord,
    Truncation,
    branch_position,
    projective_string,
    projective_top,
    supplemental_union,
    truncation_of_span,
)


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Entry:
    """Differential component ``P(tgt vertex) <- P(src vertex)``: ``x -> scalar * path * x``."""

    degree: int
    src: int
    tgt: int
    path: Path
    scalar: Fraction = Fraction(1)


def _shape_text(components: dict[int, list[str]]) -> str:
    parts = []
    for n in sorted(components):
        counts: dict[str, int] = {}
        for label in components[n]:
            counts[label] = counts.get(label, 0) + 1
        parts.append(" + ".join(k + (f"^{c}" if c > 1 else "") for k, c in counts.items()) or "0")
    return " -> ".join(parts)


@dataclass
class ProjectiveComplex:
    """Summand vertices per degree and path-labelled differential entries.

    An entry at ``degree`` maps summand ``src`` of that degree to summand
    ``tgt`` of ``degree + 1``.
    """

    summands: dict[int, list[str]]
    entries: list[Entry] = field(default_factory=list)

    def shape(self) -> dict[int, list[str]]:
        return {n: list(vs) for n, vs in sorted(self.summands.items()) if vs}

    def shape_text(self) -> str:
        """E.g. ``P(2)^3 -> P(1)^2``, lowest degree first."""
        return _shape_text({n: [f"P({v})" for v in vs] for n, vs in self.summands.items()})


def assemble(q: GentleQuiver, h: Union[HomotopyString, tuple[HomotopyBand, Jordan]]) -> ProjectiveComplex:
    """The complex of a homotopy string, or of a band with its Jordan block."""
    if isinstance(h, HomotopyString):
        return _assemble_string(h)
    band, jordan = h
    return _assemble_band(band, jordan)


def _assemble_string(h: HomotopyString) -> ProjectiveComplex:
    summands: dict[int, list[str]] = {}
    index = []
    for v, d in zip(h.vertices, h.degrees):
        summands.setdefault(d, []).append(v)
        index.append(len(summands[d]) - 1)
    entries = []
    for i, x in enumerate(h.letters):
        lo, hi = (i + 1, i) if not x.inverse else (i, i + 1)
        entries.append(Entry(h.degrees[lo], index[lo], index[hi], x.path))
    return ProjectiveComplex(dict(sorted(summands.items())), entries)


def _assemble_band(b: HomotopyBand, j: Jordan) -> ProjectiveComplex:
    n = j.n
    summands: dict[int, list[str]] = {}
    base = []
    for v, d in zip(b.vertices, b.degrees):
        lst = summands.setdefault(d, [])
        base.append(len(lst))
        lst.extend([v] * n)
    k = len(b.letters)
    entries = []
    for i, x in enumerate(b.letters):
        a, c = i, (i + 1) % k
        lo, hi = (c, a) if not x.inverse else (a, c)
        block = jordan_block(n, j.lam) if i == b.jordan else identity(n)
        for r in range(n):
            for s in range(n):
                if block[r][s]:
                    entries.append(Entry(b.degrees[lo], base[lo] + r, base[hi] + s, x.path, block[r][s]))
    return ProjectiveComplex(dict(sorted(summands.items())), entries)


# matrix realisation ------------------------------------------------------------


@dataclass
class MatrixComplex:
    """Vertex-graded spaces with exact differentials.

    ``spaces[n]`` lists ``(vertex, label)`` basis elements of degree ``n``;
    ``blocks[n][v]`` is the matrix (rows: degree ``n`` basis at ``v``,
    columns: degree ``n + 1`` basis at ``v``) of the differential.
    ``components`` describes the summands per degree for reports and
    ``origin`` keeps the homotopy string the complex came from, if any.
    """

    spaces: dict[int, list[tuple[str, str]]]
    blocks: dict[int, dict[str, Matrix]]
    components: dict[int, list[str]] = field(default_factory=dict)
    origin: HomotopyString | None = None

    def grade(self, n: int, v: str) -> list[int]:
        return [i for i, (w, _) in enumerate(self.spaces.get(n, [])) if w == v]

    def vertices(self) -> list[str]:
        seen: dict[str, None] = {}
        for n in sorted(self.spaces):
            for v, _ in self.spaces[n]:
                seen.setdefault(v, None)
        return list(seen)

    def block(self, n: int, v: str) -> Matrix:
        rows = len(self.grade(n, v))
        cols = len(self.grade(n + 1, v))
        m = self.blocks.get(n, {}).get(v)
        if m is None:
            return [[Fraction(0)] * cols for _ in range(rows)]
        return m

    def dims(self) -> dict[int, int]:
        return {n: len(s) for n, s in sorted(self.spaces.items())}

    def shape_text(self) -> str:
        return _shape_text(self.components)


def to_matrix_complex(q: GentleQuiver, pc: ProjectiveComplex, origin: HomotopyString | None = None) -> MatrixComplex:
    """Expand each ``P(v)`` in its path basis; paths are graded by their end vertex."""
    spaces: dict[int, list[tuple[str, str]]] = {}
    where: dict[int, dict[tuple[int, tuple[str, ...]], tuple[str, int]]] = {}
    for n, vs in pc.summands.items():
        basis: list[tuple[str, str]] = []
        lookup = {}
        counter: dict[str, int] = {}
        for k, v in enumerate(vs):
            for p in q.paths_from(v):
                lookup[(k, p.arrows)] = (p.target, counter.get(p.target, 0))
                counter[p.target] = counter.get(p.target, 0) + 1
                basis.append((p.target, f"{k}:{p}"))
        spaces[n] = basis
        where[n] = lookup
    blocks: dict[int, dict[str, Matrix]] = {}
    counts = {n: _grade_counts(s) for n, s in spaces.items()}
    for e in pc.entries:
        n = e.degree
        if n + 1 not in pc.summands:
            raise ComplexError(f"entry leaves degree {n} into an empty degree")
        src_v = pc.summands[n][e.src]
        tgt_v = pc.summands[n + 1][e.tgt]
        if e.path.source != tgt_v or e.path.target != src_v:
            raise ComplexError(f"path {e.path} does not run from {tgt_v} to {src_v}")
        for p in q.paths_from(src_v):
            image = q.compose(e.path, p)
            if image is None:
                continue
            v, row = where[n][(e.src, p.arrows)]
            _, col = where[n + 1][(e.tgt, image.arrows)]
            mats = blocks.setdefault(n, {})
            if v not in mats:
                mats[v] = [[Fraction(0)] * counts[n + 1].get(v, 0) for _ in range(counts[n].get(v, 0))]
            mats[v][row][col] += e.scalar
    components = {n: [f"P({v})" for v in vs] for n, vs in pc.summands.items()}
    return MatrixComplex(spaces, blocks, components, origin)


def _grade_counts(basis: list[tuple[str, str]]) -> dict[str, int]:
    out: dict[str, int] = {}
    for v, _ in basis:
        out[v] = out.get(v, 0) + 1
    return out


def check_complex(mc: MatrixComplex) -> None:
    """Raise unless every composite of consecutive differentials vanishes."""
    for n in mc.blocks:
        if n + 1 not in mc.blocks:
            continue
        for v, m in mc.blocks[n].items():
            nxt = mc.blocks[n + 1].get(v)
            if nxt is None or not m:
                continue
            if not is_zero(matmul(m, nxt)):
                raise ComplexError(f"d o d is nonzero at degree {n}, vertex {v}")


# reports ----------------------------------------------------------------------


@dataclass
class DegreeCohomology:
    n: int
    dims: dict[str, int]
    strings: list[StringWord] | None = None
    curves: list[Truncation] | None = None

    @property
    def total(self) -> int:
        return sum(self.dims.values())


@dataclass
class CohomologyReport:
    degrees: list[DegreeCohomology]
    method: str = "oracle"

    @property
    def hl(self) -> int:
        return max((d.total for d in self.degrees), default=0)

    def at(self, n: int) -> DegreeCohomology:
        for d in self.degrees:
            if d.n == n:
                return d
        return DegreeCohomology(n, {})

    def dims_by_degree(self) -> dict[int, dict[str, int]]:
        return {d.n: dict(d.dims) for d in self.degrees}

    def to_json(self) -> dict:
        out = []
        for d in self.degrees:
            item = {"n": d.n, "dims": dict(sorted(d.dims.items())), "dim": d.total}
            if d.strings is not None:
                item["strings"] = [str(s) for s in d.strings]
            out.append(item)
        return {"method": self.method, "degrees": out, "hl": self.hl}


def _span_degrees(ns) -> list[int]:
    ns = list(ns)
    return list(range(min(ns), max(ns) + 1)) if ns else []


def cohomology_oracle(q: GentleQuiver, x: Union[ProjectiveComplex, MatrixComplex]) -> CohomologyReport:
    """Vertex-graded cohomology by exact ranks of the differential blocks."""
    mc = to_matrix_complex(q, x) if isinstance(x, ProjectiveComplex) else x
    check_complex(mc)
    counts = {n: _grade_counts(s) for n, s in mc.spaces.items()}
    ranks: dict[tuple[int, str], int] = {}
    for n, per_v in mc.blocks.items():
        for v, m in per_v.items():
            ranks[(n, v)] = rank(m) if m and m[0] else 0
    degrees = []
    for n in _span_degrees([k for k, s in mc.spaces.items() if s]):
        dims = {}
        for v, c in counts.get(n, {}).items():
            d = c - ranks.get((n, v), 0) - ranks.get((n - 1, v), 0)
            if d < 0:
                raise ComplexError("negative cohomology dimension; differential is not a complex")
            if d:
                dims[v] = d
        degrees.append(DegreeCohomology(n, dims))
    return CohomologyReport(degrees, "oracle")


# combinatorial method ---------------------------------------------------------------


@dataclass(frozen=True)
class _Site:
    """Kept positions of one summand's projective string, plus the string itself."""

    base: StringWord
    lo: int
    hi: int


def _local_cut(q: GentleQuiver, h: HomotopyString, i: int) -> _Site:
    v = h.vertices[i]
    p = projective_string(q, v)
    m = len(p.vertices)
    top = projective_top(p)
    mu = h.degrees[i]
    nbrs = [k for k in (i - 1, i + 1) if 0 <= k < h.n]
    higher = [k for k in nbrs if h.degrees[k] == mu + 1]
    lower = [k for k in nbrs if h.degrees[k] == mu - 1]
    # kernel of the outgoing differential
    if not higher:
        lo, hi = 0, m - 1
    elif len(higher) == 2:
        return _Site(p, 1, 0)
    else:
        gamma = h.path_between(higher[0], i).last
        beta = q.successor(gamma, True)
        if beta is None:
            return _Site(p, 1, 0)
        pos = branch_position(p, top, (beta,))
        lo, hi = (top + 1, m - 1) if pos > top else (0, top - 1)
    # quotient by the images of the lower neighbours
    for j in lower:
        g = branch_position(p, top, h.path_between(i, j).arrows)
        glued = _two_higher(h, j)
        keep = glued and j == i - 1
        if g > top:
            hi = min(hi, g if keep else g - 1)
        else:
            lo = max(lo, g if keep else g + 1)
    return _Site(p, lo, hi)


def _two_higher(h: HomotopyString, j: int) -> bool:
    return 0 < j < h.n - 1 and h.degrees[j - 1] == h.degrees[j] + 1 == h.degrees[j + 1]


def cohomology_curves(q: GentleQuiver, h: HomotopyString) -> dict[int, list[Truncation]]:
    """Per degree, the cohomological truncation of every walk site in walk order."""
    out: dict[int, list[Truncation]] = {}
    for i in range(h.n):
        s = _local_cut(q, h, i)
        out.setdefault(h.degrees[i], []).append(truncation_of_span(s.base, s.lo, s.hi, site=i))
    return dict(sorted(out.items()))


def cohomology_truncation(q: GentleQuiver, h: HomotopyString, decompose: bool = True) -> CohomologyReport:
    """Cohomology of a string complex from truncations of projective strings."""
    curves = cohomology_curves(q, h)
    degrees = []
    for n in _span_degrees(curves):
        parts = curves.get(n, [])
        dims: dict[str, int] = {}
        for t in parts:
            span = t.span
            if span is None:
                continue
            for v in t.base.vertices[span[0]:span[1] + 1]:
                dims[v] = dims.get(v, 0) + 1
        strings = supplemental_union(q, parts, h) if decompose else None
        degrees.append(DegreeCohomology(n, dims, strings, parts))
    return CohomologyReport(degrees, "truncation")


def hl(q: GentleQuiver, x) -> int:
    """Cohomological length of a homotopy string, band complex, or complex."""
    if isinstance(x, CohomologyReport):
        return x.hl
    if isinstance(x, HomotopyString):
        return cohomology_truncation(q, x, decompose=False).hl
    if isinstance(x, tuple):
        return cohomology_oracle(q, assemble(q, x)).hl
    return cohomology_oracle(q, x).hl


def compare_reports(a: CohomologyReport, b: CohomologyReport) -> list[str]:
    """Human-readable differences between the dimension tables of two reports."""
    diffs = []
    da, db = a.dims_by_degree(), b.dims_by_degree()
    for n in sorted(set(da) | set(db)):
        x, y = da.get(n, {}), db.get(n, {})
        if x != y:
            diffs.append(f"H^{n}: {a.method} {dict(sorted(x.items()))} vs {b.method} {dict(sorted(y.items()))}")
    return diffs


def decomposition_dims(strings: list[StringWord]) -> dict[str, int]:
    dims: dict[str, int] = {}
    for s in strings:
        for v in s.vertices:
            dims[v] = dims.get(v, 0) + 1
    return dims

