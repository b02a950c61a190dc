"""Cohomological length without gaps, and Ext witnesses against A.

``reduce_hl`` lowers the cohomological length of a string complex by
exactly one.  It first looks for a sub-walk of the homotopy string
(whose end letters may be shortened) with the right length.  When there
is none it peels the complex one basis vector at a time from an end;
each peeled vector spans a one-dimensional subcomplex or quotient
complex, so the length moves by at most one per step and must pass
through ``hl - 1`` on its way down to zero.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .complexes import MatrixComplex, assemble, cohomology_oracle, cohomology_truncation, to_matrix_complex
from .homotopy import (
    HLetter,
    HomotopyBand,
    HomotopyString,
    Jordan,
    enumerate_homotopy_bands,
    enumerate_homotopy_strings,
    make_homotopy_string,
)
from .linalg import Matrix
from .modules import band_to_module, direct_sum, hom_dim, projective_module, string_to_module
from .quiver import GentleQuiver, Path
from .resolution import band_resolution, resolve_to_complex, rotate
from .strings import BandWord, StringWord

Descriptor = Union[StringWord, tuple[BandWord, Jordan]]


class ReductionError(ValueError):
    pass


class NakayamaFailure(RuntimeError):
    pass


def _hl(q: GentleQuiver, h: HomotopyString) -> int:
    return cohomology_truncation(q, h, decompose=False).hl


# sub-walks -----------------------------------------------------------------------


def _left_options(q: GentleQuiver, h: HomotopyString, i: int) -> list[HLetter]:
    """Shortened copies of the letter before site ``i``, keeping the end at ``i``."""
    if i == 0:
        return []
    x = h.letters[i - 1]
    arrows = x.path.arrows
    parts = [arrows[k:] if not x.inverse else arrows[:len(arrows) - k] for k in range(1, len(arrows))]
    return [HLetter(q.path(part), x.inverse) for part in parts]


def _right_options(q: GentleQuiver, h: HomotopyString, j: int) -> list[HLetter]:
    """Shortened copies of the letter after site ``j``, keeping the end at ``j``."""
    if j == h.n - 1:
        return []
    x = h.letters[j]
    arrows = x.path.arrows
    parts = [arrows[:len(arrows) - k] if not x.inverse else arrows[k:] for k in range(1, len(arrows))]
    return [HLetter(q.path(part), x.inverse) for part in parts]


def sub_homotopy_strings(q: GentleQuiver, h: HomotopyString) -> list[HomotopyString]:
    """Proper sub-walks of ``h``, optionally with partly kept end letters.

    Ordered by number of sites (largest first), then by position.
    """
    out = []
    n = h.n
    for i in range(n):
        for j in range(i, n):
            core = h.sub(i, j)
            for a in [None] + _left_options(q, h, i):
                for b in [None] + _right_options(q, h, j):
                    if a is None and b is None and i == 0 and j == n - 1:
                        continue
                    letters = ([a] if a else []) + list(core.letters) + ([b] if b else [])
                    start_deg = core.degrees[0] - (a.step if a else 0)
                    cand = make_homotopy_string(q, letters, None if letters else core.vertices[0], start_deg)
                    out.append((-cand.n, i, j, 0 if a is None else len(a.path), 0 if b is None else len(b.path), cand))
    out.sort(key=lambda t: t[:5])
    return [t[5] for t in out]


# reduction ------------------------------------------------------------------------


def reduce_hl(q: GentleQuiver, h: HomotopyString) -> MatrixComplex:
    """A complex whose cohomological length is exactly one less than that of ``h``."""
    target = _hl(q, h) - 1
    if target < 1:
        raise ReductionError("cohomological length must be at least 2")
    return _reduce_to(q, h, target)


def _reduce_to(q: GentleQuiver, h: HomotopyString, target: int) -> MatrixComplex:
    # among sub-walks of the right length keep the one carrying the most cohomology
    best, best_total = None, -1
    for cand in sub_homotopy_strings(q, h):
        report = cohomology_truncation(q, cand, decompose=False)
        total = sum(d.total for d in report.degrees)
        if report.hl == target and total > best_total:
            best, best_total = cand, total
    if best is None:
        return _peel(q, h, target)
    mc = to_matrix_complex(q, assemble(q, best), origin=best)
    if cohomology_oracle(q, mc).hl != target:
        raise ReductionError("matrix check disagrees with the combinatorial length")
    return mc


@dataclass
class _Peeled:
    """Summand ``P(v)`` of a site with only some basis paths kept."""

    vertex: str
    degree: int
    kept: list[tuple[str, ...]]


def _peel(q: GentleQuiver, h: HomotopyString, target: int) -> MatrixComplex:
    sites = [_Peeled(v, d, [p.arrows for p in q.paths_from(v)]) for v, d in zip(h.vertices, h.degrees)]
    while any(s.kept for s in sites):
        e = next(k for k, s in enumerate(sites) if s.kept)
        b = _removable(q, h, sites, e)
        sites[e].kept.remove(b)
        mc = _peeled_complex(q, h, sites)
        if cohomology_oracle(q, mc).hl == target:
            return mc
    raise ReductionError("peeling never reached the target length")


def _links(h: HomotopyString, e: int) -> list[tuple[int, Path, bool]]:
    """Neighbours of site ``e``: (site, path, neighbour is higher)."""
    out = []
    for k in (e - 1, e + 1):
        if 0 <= k < h.n:
            out.append((k, h.path_between(e, k), h.degrees[k] > h.degrees[e]))
    return out


def _removable(q: GentleQuiver, h: HomotopyString, sites: list[_Peeled], e: int) -> tuple[str, ...]:
    s = sites[e]
    kept = set(s.kept)
    links = [(k, p, up) for k, p, up in _links(h, e) if sites[k].kept]

    def image(path: Path, x: tuple[str, ...], v: str) -> tuple[str, ...] | None:
        y = q.compose(path, q.path(x, v))
        return y.arrows if y is not None else None

    def socle(x):
        return all(q.compose(q.path(x, s.vertex), q.path((a,))) is None or
                   q.compose(q.path(x, s.vertex), q.path((a,))).arrows not in kept
                   for a in q.out_arrows(q.path(x, s.vertex).target))

    def top(x):
        return not x or x[:-1] not in kept

    def cycle(x):
        # x is killed by the differential (only higher neighbours receive it)
        for k, p, up in links:
            if up:
                y = image(p, x, s.vertex)
                if y is not None and y in sites[k].kept:
                    return False
        return True

    def hit(x):
        # x lies in the image of a kept element of a lower neighbour
        for k, p, up in links:
            if not up:
                for y in sites[k].kept:
                    if image(p, y, sites[k].vertex) == x:
                        return True
        return False

    order = sorted(s.kept, key=len, reverse=True)
    for x in order:
        if socle(x) and cycle(x):
            return x
    for x in sorted(s.kept, key=len):
        if top(x) and not hit(x):
            return x
    raise ReductionError("no basis vector can be peeled")


def _peeled_complex(q: GentleQuiver, h: HomotopyString, sites: list[_Peeled]) -> MatrixComplex:
    spaces: dict[int, list[tuple[str, str]]] = {}
    where: dict[tuple[int, tuple[str, ...]], tuple[int, str, int]] = {}
    counts: dict[tuple[int, str], int] = {}
    for i, s in enumerate(sites):
        lst = spaces.setdefault(s.degree, [])
        for x in sorted(s.kept, key=lambda a: (len(a), a)):
            p = q.path(x, s.vertex)
            key = (s.degree, p.target)
            where[(i, x)] = (s.degree, p.target, counts.get(key, 0))
            counts[key] = counts.get(key, 0) + 1
            lst.append((p.target, f"{i}:{p}"))
    blocks: dict[int, dict[str, Matrix]] = {}
    for i, x in enumerate(h.letters):
        lo, hi = (i + 1, i) if not x.inverse else (i, i + 1)
        for y in sites[lo].kept:
            img = q.compose(x.path, q.path(y, sites[lo].vertex))
            if img is None or (hi, img.arrows) not in where:
                continue
            n, v, row = where[(lo, y)]
            _, _, col = where[(hi, img.arrows)]
            mats = blocks.setdefault(n, {})
            if v not in mats:
                mats[v] = [[Fraction(0)] * counts.get((n + 1, v), 0) for _ in range(counts[(n, v)])]
            mats[v][row][col] += 1
    components: dict[int, list[str]] = {}
    for i, s in enumerate(sites):
        if not s.kept:
            continue
        full = len(s.kept) == len(q.paths_from(s.vertex))
        label = f"P({s.vertex})" if full else f"P({s.vertex})[" + ",".join(str(q.path(x, s.vertex)) for x in sorted(s.kept, key=lambda a: (len(a), a))) + "]"
        components.setdefault(s.degree, []).append(label)
    for n in spaces:
        components.setdefault(n, [])
    return MatrixComplex({n: spaces[n] for n in sorted(spaces)}, blocks, dict(sorted(components.items())))


# bands -------------------------------------------------------------------------


def band_big_hl(q: GentleQuiver, b: BandWord, target: int, j: Jordan | None = None) -> HomotopyString:
    """A string complex winding around a band often enough to reach ``target``.

    One winding starting at a lowest-degree vertex contributes ``m``
    dimensions; ``floor(target / m) + 1`` windings are used.
    """
    if target < 1:
        raise ValueError("target must be positive")
    hb = band_resolution(q, b, j or Jordan())
    offset = min(range(len(hb.vertices)), key=lambda k: (hb.degrees[k], k))
    m = max(1, _hl(q, hb.unroll(1, offset)))
    turns = target // m + 1
    h = hb.unroll(turns, offset)
    while _hl(q, h) < target:
        turns += 1
        h = hb.unroll(turns, offset)
    return h


def band_hl(q: GentleQuiver, b: BandWord, j: Jordan) -> int:
    return cohomology_oracle(q, assemble(q, (band_resolution(q, b, j), j))).hl


def reduce_band_hl(q: GentleQuiver, b: BandWord, j: Jordan) -> MatrixComplex:
    """String complex with cohomological length one less than the band complex."""
    target = band_hl(q, b, j) - 1
    if target < 1:
        raise ReductionError("cohomological length must be at least 2")
    h = band_big_hl(q, b, target + 1, j)
    return _reduce_to(q, h, target)


def reduction_chain(q: GentleQuiver, b: BandWord, j: Jordan) -> list[MatrixComplex]:
    """Repeated reductions from the band complex down to cohomological length 1."""
    chain = [reduce_band_hl(q, b, j)]
    while cohomology_oracle(q, chain[-1]).hl > 1:
        origin = chain[-1].origin
        if origin is None:
            raise ReductionError("reduction left the class of string complexes")
        chain.append(reduce_hl(q, origin))
    return chain


# census -------------------------------------------------------------------------


@dataclass
class HlCertificate:
    """hl values met by enumeration, with cutoff gaps closed by verified reductions."""

    algebra: str
    bound: int
    enumerated: list[int]
    filled: dict[int, str]
    gaps: list[int]
    strings: int
    bands: int
    witnesses: dict[int, str] = field(default_factory=dict)
    lam: Fraction = Fraction(1)

    @property
    def achieved(self) -> list[int]:
        return sorted(set(self.enumerated) | set(self.filled))

    @property
    def gap_free(self) -> bool:
        return not self.gaps

    def to_json(self) -> dict:
        top = max(self.enumerated, default=0)
        return {
            "algebra": self.algebra,
            "max_len": self.bound,
            "achieved": self.achieved,
            "enumerated": self.enumerated,
            "enumeration_gaps": [k for k in range(1, top + 1) if k not in self.enumerated],
            "filled_by_reduction": {str(k): v for k, v in sorted(self.filled.items())},
            "gaps": self.gaps,
            "gap_free": self.gap_free,
            "strings_checked": self.strings,
            "bands_checked": self.bands,
            "band_lambda": f"{self.lam.numerator}/{self.lam.denominator}",
            "witnesses": {str(k): v for k, v in sorted(self.witnesses.items())},
        }


def _workers() -> int:
    """Census worker count: the CPU count, capped by ``GENTLEKIT_THREADS``."""
    workers = os.cpu_count() or 1
    cap = os.environ.get("GENTLEKIT_THREADS")
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            pass
    return workers


def _hl_batch(args) -> list[int]:
    q, hs = args
    return [_hl(q, h) for h in hs]


def _band_batch(args) -> list[int]:
    q, bands, lam = args
    return [cohomology_oracle(q, assemble(q, (hb, Jordan(1, lam)))).hl for hb in bands]


def _fan_out(fn, q, items, extra=()):
    workers = _workers()
    if workers == 1 or len(items) < 64:
        return fn((q, items) + tuple(extra))
    size = (len(items) + workers - 1) // workers
    chunks = [items[k:k + size] for k in range(0, len(items), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(fn, [(q, c) + tuple(extra) for c in chunks]))
    return [x for part in parts for x in part]


def no_gaps_census(q: GentleQuiver, max_len: int, name: str = "algebra", lam: Fraction = Fraction(1)) -> HlCertificate:
    """Collect hl over all homotopy strings and bands up to ``max_len`` letters.

    A value missed by the enumeration but lying below a string witness is
    filled by reducing that witness, the result checked by the matrix oracle.
    """
    if max_len < 1:
        raise ValueError("length bound must be at least 1")
    strings = enumerate_homotopy_strings(q, max_len)
    bands = enumerate_homotopy_bands(q, max_len)
    sources: dict[int, HomotopyString] = {}
    witnesses: dict[int, str] = {}
    for h, v in zip(strings, _fan_out(_hl_batch, q, strings)):
        sources.setdefault(v, h)
        witnesses.setdefault(v, str(h))
    for b, v in zip(bands, _fan_out(_band_batch, q, bands, (lam,))):
        witnesses.setdefault(v, str(b))
    enumerated = sorted(k for k in witnesses if k > 0)
    top = max(enumerated, default=0)
    filled: dict[int, str] = {}
    gaps = []
    for k in range(1, top + 1):
        if k in witnesses:
            continue
        above = [v for v in sorted(sources) if v > k]
        if not above:
            gaps.append(k)
            continue
        mc = _reduce_to(q, sources[above[0]], k)
        if cohomology_oracle(q, mc).hl != k:
            gaps.append(k)
            continue
        filled[k] = f"reduced from {sources[above[0]]}: {mc.shape_text()}"
    return HlCertificate(name, max_len, enumerated, filled, gaps, len(strings), len(bands),
                         {k: witnesses[k] for k in enumerated}, lam)


# Ext against the regular module ---------------------------------------------------------


def dual_complex(q: GentleQuiver, pc) -> MatrixComplex:
    """``Hom_A(P, A)`` with ``Hom(P(v), A)`` spanned by the paths ending at ``v``.

    Degree ``n`` of ``P`` becomes degree ``-n``; a differential entry with
    path ``p`` turns into right multiplication by ``p``.  Spaces are graded
    by the start vertex of the paths.
    """
    spaces: dict[int, list[tuple[str, str]]] = {}
    where: dict[tuple[int, int, tuple[str, ...]], tuple[str, int]] = {}
    counts: dict[tuple[int, str], int] = {}
    for n, vs in pc.summands.items():
        k = -n
        lst = spaces.setdefault(k, [])
        for idx, v in enumerate(vs):
            for p in q.paths_to(v):
                key = (k, p.source)
                where[(k, idx, p.arrows or (v,))] = (p.source, counts.get(key, 0))
                counts[key] = counts.get(key, 0) + 1
                lst.append((p.source, f"{idx}:{p}"))
    blocks: dict[int, dict[str, Matrix]] = {}
    for e in pc.entries:
        k = -(e.degree + 1)
        tgt_v = pc.summands[e.degree + 1][e.tgt]
        for a in q.paths_to(tgt_v):
            img = q.compose(a, e.path)
            if img is None:
                continue
            v, row = where[(k, e.tgt, a.arrows or (tgt_v,))]
            src_v = pc.summands[e.degree][e.src]
            _, col = where[(k + 1, e.src, img.arrows or (src_v,))]
            mats = blocks.setdefault(k, {})
            if v not in mats:
                mats[v] = [[Fraction(0)] * counts.get((k + 1, v), 0) for _ in range(counts[(k, v)])]
            mats[v][row][col] += e.scalar
    return MatrixComplex(dict(sorted(spaces.items())), blocks)


def _resolution(q: GentleQuiver, m: Descriptor, d: int):
    if isinstance(m, StringWord):
        return resolve_to_complex(q, m, d + 1)
    b, j = m
    return assemble(q, (band_resolution(q, b, j), j))


def ext_dim(q: GentleQuiver, m: Descriptor, d: int) -> int:
    """``dim Ext^d_A(M, A)`` from the dual of a long enough resolution."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    pc = _resolution(q, m, d)
    return sum(cohomology_oracle(q, dual_complex(q, pc)).at(d).dims.values())


def hom_to_regular(q: GentleQuiver, m: Descriptor) -> int:
    """``dim Hom_A(M, A)`` computed directly on representations."""
    rep = string_to_module(q, m) if isinstance(m, StringWord) else band_to_module(q, *m)
    regular = direct_sum(q, [projective_module(q, v) for v in q.vertices])
    return hom_dim(q, rep, regular)


@dataclass
class ExtWitness:
    module: str
    d: int
    dim: int
    window: int

    def to_json(self) -> dict:
        return {"module": self.module, "d": self.d, "dim": self.dim, "window": self.window}


def describe(m: Descriptor) -> str:
    if isinstance(m, StringWord):
        return str(m)
    b, j = m
    return f"{b} J_{j.n}({j.lam})"


def search_window(q: GentleQuiver, m: Descriptor) -> int:
    """Degrees to search: the whole resolution, or preperiod plus two periods."""
    if not isinstance(m, StringWord):
        return 1
    rot = rotate(q, m)
    if rot.finite:
        return -min(rot.string.degrees)
    window = 0
    for tail in (rot.left, rot.right):
        if tail.periodic:
            window = max(window, tail.periodic.preperiod + 2 * tail.periodic.period)
        elif tail.head is not None:
            window = max(window, len(tail.arrows))
    return window + 1


def nakayama_witness(q: GentleQuiver, m: Descriptor) -> ExtWitness:
    """Smallest ``d`` with ``Ext^d(M, A) != 0``."""
    window = search_window(q, m)
    for d in range(window + 1):
        dim = ext_dim(q, m, d)
        if dim:
            return ExtWitness(describe(m), d, dim, window)
    raise NakayamaFailure(f"no nonzero Ext^d(M, A) for d <= {window} with M = {describe(m)}")
