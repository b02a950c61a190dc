"""Acceptance suite: one test per primary criterion.

The random pool is shared (see conftest): 100 gentle quivers with at most
8 vertices and 10 arrows drawn from a fixed 64-bit seed.
"""
import random
import time
from fractions import Fraction

from gentlekit.applications import (
    band_big_hl,
    band_hl,
    nakayama_witness,
    no_gaps_census,
    reduce_hl,
    reduction_chain,
)
from gentlekit.complexes import (
    assemble,
    check_complex,
    cohomology_oracle,
    cohomology_truncation,
    compare_reports,
    hl,
    to_matrix_complex,
)
from gentlekit.generate import random_homotopy_string
from gentlekit.goldens import NINE_VERTEX_CURVE
from gentlekit.homotopy import Jordan, enumerate_homotopy_bands, enumerate_homotopy_strings, parse_homotopy
from gentlekit.properties import band_sequence_problems, cover_problems, resolution_problems, round_trip_problems
from gentlekit.resolution import band_resolution, resolve_to_complex, rotate
from gentlekit.strings import enumerate_bands, enumerate_strings, parse_band, parse_string

RANDOM_PER_ALGEBRA = 15
LONGER = 5


def _longer_walks(q, rng, count, attempts=300):
    """Random homotopy strings with at least ``LONGER`` letters."""
    out = []
    for _ in range(attempts):
        h = random_homotopy_string(q, rng, rng.randint(LONGER, 2 * LONGER))
        if h is not None and len(h.letters) >= LONGER:
            out.append(h)
            if len(out) == count:
                break
    return out
LAMBDAS = (Fraction(1), Fraction(2))


def _table(report):
    return {n: d for n, d in report.dims_by_degree().items() if d}


def test_golden_nine_vertex_curve_cohomology(nine):
    start = time.perf_counter()
    h = parse_homotopy(nine, NINE_VERTEX_CURVE)
    assert h.n == 10 and max(h.degrees) == 0
    oracle = cohomology_oracle(nine, assemble(nine, h))
    comb = cohomology_truncation(nine, h)
    for report in (oracle, comb):
        assert report.at(-3).dims == {}
        assert report.at(-2).dims == {"7": 1, "6": 1}
        assert report.at(-1).dims == {"3": 2, "4": 1}
        assert report.at(0).dims == {"1": 2, "9": 1}
        assert report.hl == 3
    assert sorted(map(str, comb.at(-1).strings)) == ["a3", "e(3)"]
    assert sorted(map(str, comb.at(0).strings)) == ["a9", "e(1)"]
    assert time.perf_counter() - start < 1


def test_golden_resolution_of_simple_top(nine):
    start = time.perf_counter()
    c = parse_string(nine, "e(1)")
    pc = resolve_to_complex(nine, c, 3)
    dims = tuple(sum(len(nine.paths_from(v)) for v in pc.summands[n]) for n in range(-3, 1))
    assert dims == (2, 4, 4, 3)
    assert _table(cohomology_oracle(nine, pc)) == {0: {"1": 1}}
    assert time.perf_counter() - start < 1


def test_golden_kronecker_band_lengths(kronecker):
    start = time.perf_counter()
    b = parse_band(kronecker, "band[a.~b]")
    for lam in LAMBDAS:
        j = Jordan(2, lam)
        assert band_hl(kronecker, b, j) == 4
        big = band_big_hl(kronecker, b, 4, j)
        assert cohomology_oracle(kronecker, assemble(kronecker, big)).at(0).total == 6
        chain = reduction_chain(kronecker, b, j)
        assert [cohomology_oracle(kronecker, y).hl for y in chain] == [3, 2, 1]
        assert [y.shape_text() for y in chain] == ["P(2)^3 -> P(1)^2", "P(2) -> P(1)", "P(2)"]
    assert time.perf_counter() - start < 1


def test_rotation_exactness_over_random_pool(pool):
    assert len(pool) >= 100
    assert all(len(q.vertices) <= 8 and len(q.arrows) <= 10 for q in pool)
    count = 0
    problems = []
    for q in pool:
        for c in enumerate_strings(q, 5):
            count += 1
            problems += resolution_problems(q, c)
    assert count > 1000
    assert problems == []


def test_oracle_and_truncation_agree_over_random_pool(pool):
    exhaustive = random_count = 0
    problems = []
    for k, q in enumerate(pool):
        rng = random.Random(k)
        hs = enumerate_homotopy_strings(q, 4)
        exhaustive += len(hs)
        longer = _longer_walks(q, rng, RANDOM_PER_ALGEBRA)
        random_count += len(longer)
        for h in hs + longer:
            oracle = cohomology_oracle(q, assemble(q, h))
            problems += compare_reports(oracle, cohomology_truncation(q, h, decompose=False))
    assert exhaustive > 10000
    assert random_count >= 1000
    assert problems == []


def test_round_trip_through_supplemental_union(pool):
    problems = []
    for q in pool:
        for c in enumerate_strings(q, 5):
            problems += round_trip_problems(q, c)
    assert problems == []


def test_no_gaps_census_and_exact_reduction(pool, nine, kronecker):
    gaps = {}
    drops = []
    sampled = 0
    for k, q in enumerate([nine, kronecker] + pool):
        cert = no_gaps_census(q, 5)
        enumerated = cert.to_json()["enumeration_gaps"]
        if not cert.gap_free or enumerated:
            gaps[k] = cert.to_json()
        rng = random.Random(k)
        candidates = [h for h in enumerate_homotopy_strings(q, 4) if hl(q, h) >= 2]
        candidates = rng.sample(candidates, min(4, len(candidates)))
        candidates += [h for h in _longer_walks(q, rng, 3) if hl(q, h) >= 2]
        for h in candidates:
            sampled += 1
            before = hl(q, h)
            after = cohomology_oracle(q, reduce_hl(q, h)).hl
            if after != before - 1:
                drops.append((k, str(h), before, after))
    assert sampled > 300
    assert gaps == {}
    assert drops == []


def test_strong_nakayama_witnesses(pool, kronecker):
    failures = []
    bands = 0
    for q in [kronecker] + pool:
        for c in enumerate_strings(q, 5):
            try:
                nakayama_witness(q, c)
            except Exception as exc:
                failures.append(f"{c}: {exc}")
        for b in enumerate_bands(q, 6):
            for n in (1, 2):
                for lam in LAMBDAS:
                    bands += 1
                    w = nakayama_witness(q, (b, Jordan(n, lam)))
                    if w.d > 1:
                        failures.append(f"{b} J_{n}({lam}) needs d = {w.d}")
    assert bands >= 20
    assert failures == []


def test_structural_invariants(pool, nine, kronecker):
    problems = []
    complexes = 0
    for q in [nine, kronecker] + pool:
        for h in enumerate_homotopy_strings(q, 4):
            check_complex(to_matrix_complex(q, assemble(q, h)))
            complexes += 1
        for c in enumerate_strings(q, 5):
            check_complex(to_matrix_complex(q, assemble(q, rotate(q, c).string)))
            problems += cover_problems(q, c)
        for b in enumerate_bands(q, 6):
            for n in (1, 2):
                j = Jordan(n, Fraction(2))
                check_complex(to_matrix_complex(q, assemble(q, (band_resolution(q, b, j), j))))
                problems += band_sequence_problems(q, b, n, Fraction(2))
        for hb in enumerate_homotopy_bands(q, 4):
            check_complex(to_matrix_complex(q, assemble(q, (hb, Jordan(2, Fraction(1))))))
    assert complexes > 10000
    assert problems == []
