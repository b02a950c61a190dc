"""Per-object property checks; each returns a list of problems, empty when it holds."""
from __future__ import annotations

import random
from fractions import Fraction

from .complexes import assemble, check_complex, cohomology_oracle, cohomology_truncation, compare_reports, to_matrix_complex
from .generate import algebra_pool, random_homotopy_string
from .homotopy import HomotopyString, Jordan, enumerate_homotopy_strings
from .modules import band_to_module, cover_map, dim_vector, kernel_dims, projective_cover, soc_dims, string_to_module, top_dims
from .quiver import GentleQuiver
from .resolution import rotate
from .strings import BandWord, StringWord, canonical, enumerate_bands, enumerate_strings, soc_positions, top_positions


def _nonzero(d: dict[str, int]) -> dict[str, int]:
    return {k: v for k, v in sorted(d.items()) if v}


def resolution_problems(q: GentleQuiver, c: StringWord) -> list[str]:
    """The resolution has ``H^0 = M(c)`` and no cohomology away from degree 0 and the cut."""
    rot = rotate(q, c)
    report = cohomology_oracle(q, assemble(q, rot.string))
    problems = []
    want = _nonzero(dim_vector(string_to_module(q, c)))
    got = _nonzero(report.at(0).dims)
    if got != want:
        problems.append(f"{c}: H^0 {got} differs from dim vector {want}")
    bottom = min(rot.string.degrees)
    for d in report.degrees:
        if d.n == 0 or not d.total:
            continue
        if rot.finite or d.n > bottom:
            problems.append(f"{c}: H^{d.n} = {d.dims} inside the resolution")
    return problems


def round_trip_problems(q: GentleQuiver, c: StringWord) -> list[str]:
    """The degree-0 cohomology strings of the resolution give back ``c``."""
    strings = cohomology_truncation(q, rotate(q, c).string).at(0).strings or []
    if len(strings) != 1 or canonical(q, strings[0]) != canonical(q, c):
        return [f"{c}: degree-0 union is {[str(s) for s in strings]}"]
    return []


def equivalence_problems(q: GentleQuiver, h: HomotopyString) -> list[str]:
    """Matrix and truncation cohomology agree degree by degree and vertex by vertex."""
    mc = to_matrix_complex(q, assemble(q, h))
    check_complex(mc)
    diffs = compare_reports(cohomology_oracle(q, mc), cohomology_truncation(q, h, decompose=False))
    return [f"{h}: {d}" for d in diffs]


def cover_problems(q: GentleQuiver, c: StringWord) -> list[str]:
    """Kernel of the cover map has the dims of the predicted kernel strings; top and socle match."""
    m = string_to_module(q, c)
    cover, kernel = projective_cover(q, c)
    got = _nonzero(kernel_dims(cover_map(q, c), m.dims))
    want: dict[str, int] = {}
    for s in kernel:
        for v in s.vertices:
            want[v] = want.get(v, 0) + 1
    problems = []
    if got != _nonzero(want):
        problems.append(f"{c}: cover kernel dims {got}, strings give {_nonzero(want)}")
    tops: dict[str, int] = {}
    for i in top_positions(c):
        tops[c.vertices[i]] = tops.get(c.vertices[i], 0) + 1
    socs: dict[str, int] = {}
    for i in soc_positions(c):
        socs[c.vertices[i]] = socs.get(c.vertices[i], 0) + 1
    if _nonzero(top_dims(q, m)) != _nonzero(tops):
        problems.append(f"{c}: top {_nonzero(top_dims(q, m))} but top positions give {_nonzero(tops)}")
    if _nonzero(soc_dims(q, m)) != _nonzero(socs):
        problems.append(f"{c}: socle {_nonzero(soc_dims(q, m))} but socle positions give {_nonzero(socs)}")
    if sorted(cover) != sorted(v for v, k in tops.items() for _ in range(k)):
        problems.append(f"{c}: cover {cover} is not the top")
    return problems


def band_sequence_problems(q: GentleQuiver, b: BandWord, n: int, lam: Fraction) -> list[str]:
    """``0 -> B(n-1) -> B(n) -> B(1) -> 0`` is additive on dimension vectors."""
    whole = dim_vector(band_to_module(q, b, Jordan(n, lam)))
    sub = dim_vector(band_to_module(q, b, Jordan(n - 1, lam))) if n > 1 else {}
    quo = dim_vector(band_to_module(q, b, Jordan(1, lam)))
    total = {v: sub.get(v, 0) + quo.get(v, 0) for v in q.vertices}
    if _nonzero(whole) != _nonzero(total):
        return [f"{b} J_{n}({lam}): {_nonzero(whole)} vs {_nonzero(total)}"]
    return []


def fuzz(seed: int, count: int, max_len: int = 5, homotopy_len: int = 4, random_strings: int = 10) -> dict:
    """Run every property over a seeded pool; the seed is part of the report."""
    pool = algebra_pool(seed, count)
    rng = random.Random(seed)
    problems: list[str] = []
    tally = {"algebras": len(pool), "strings": 0, "homotopy_strings": 0, "bands": 0}
    for k, q in enumerate(pool):
        for c in enumerate_strings(q, max_len):
            tally["strings"] += 1
            for p in resolution_problems(q, c) + round_trip_problems(q, c) + cover_problems(q, c):
                problems.append(f"algebra {k}: {p}")
        hs = enumerate_homotopy_strings(q, homotopy_len)
        for _ in range(random_strings):
            h = random_homotopy_string(q, rng, rng.randint(homotopy_len + 1, 2 * homotopy_len + 1))
            if h is not None:
                hs.append(h)
        for h in hs:
            tally["homotopy_strings"] += 1
            problems.extend(f"algebra {k}: {p}" for p in equivalence_problems(q, h))
        for b in enumerate_bands(q, max_len):
            tally["bands"] += 1
            for n in (1, 2):
                problems.extend(f"algebra {k}: {p}" for p in band_sequence_problems(q, b, n, Fraction(2)))
    return {"seed": seed, "count": count, "max_len": max_len, "homotopy_len": homotopy_len,
            "checked": tally, "problems": problems, "passed": not problems}
