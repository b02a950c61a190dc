import random
from fractions import Fraction

import pytest

from gentlekit.applications import (
    NakayamaFailure,
    ReductionError,
    band_big_hl,
    band_hl,
    ext_dim,
    hom_to_regular,
    nakayama_witness,
    no_gaps_census,
    reduce_hl,
    reduction_chain,
    sub_homotopy_strings,
)
from gentlekit.complexes import assemble, cohomology_oracle, hl
from gentlekit.generate import random_gentle_quiver
from gentlekit.goldens import NINE_VERTEX_CURVE
from gentlekit.homotopy import Jordan, parse_homotopy
from gentlekit.quiver import make_quiver
from gentlekit.strings import enumerate_bands, enumerate_strings, parse_band, parse_string, projective_string


def test_reduction_of_the_nine_vertex_curve(nine):
    y = reduce_hl(nine, parse_homotopy(nine, NINE_VERTEX_CURVE))
    report = cohomology_oracle(nine, y)
    assert {d.n: d.total for d in report.degrees if d.total} == {-2: 2, -1: 2, 0: 2}
    assert report.at(-1).dims == {"3": 1, "4": 1}
    assert report.at(0).dims == {"1": 1, "9": 1}
    assert str(y.origin) == "[-2] a6 [-3] ~a5 [-2] ~a4 [-1] a3 [-2] ~a2 [-1] ~a1 [0]"


def test_reduction_needs_length_two(kronecker):
    with pytest.raises(ReductionError):
        reduce_hl(kronecker, parse_homotopy(kronecker, "[0] e(2)"))


def test_reduction_can_leave_projective_components(kronecker):
    y = reduce_hl(kronecker, parse_homotopy(kronecker, "[0] e(1)"))
    assert cohomology_oracle(kronecker, y).hl == 2
    assert y.origin is None


def test_sub_walks_are_proper_and_largest_first(nine):
    h = parse_homotopy(nine, NINE_VERTEX_CURVE)
    subs = sub_homotopy_strings(nine, h)
    assert h not in subs
    assert [s.n for s in subs] == sorted((s.n for s in subs), reverse=True)
    assert any(str(s).startswith("[-2] a6 [-3]") for s in subs)


def test_kronecker_band_length_and_windings(kronecker):
    b = parse_band(kronecker, "band[a.~b]")
    for lam in (Fraction(1), Fraction(2)):
        j = Jordan(2, lam)
        assert band_hl(kronecker, b, j) == 4
        big = band_big_hl(kronecker, b, 4, j)
        assert str(big) == "[-1] ~b [0] a [-1] ~b [0] a [-1] ~b [0]"
        assert cohomology_oracle(kronecker, assemble(kronecker, big)).at(0).total == 6
        chain = reduction_chain(kronecker, b, j)
        assert [y.shape_text() for y in chain] == ["P(2)^3 -> P(1)^2", "P(2) -> P(1)", "P(2)"]
        assert [cohomology_oracle(kronecker, y).hl for y in chain] == [3, 2, 1]
    assert hl(kronecker, band_big_hl(kronecker, b, 1)) >= 1


def test_band_windings_reach_their_target():
    rng = random.Random(11)
    found = 0
    while found < 3:
        q = random_gentle_quiver(rng.getrandbits(64))
        bands = enumerate_bands(q, 6)
        if not bands:
            continue
        found += 1
        h = band_big_hl(q, bands[0], 5)
        assert cohomology_oracle(q, assemble(q, h)).hl >= 5


def test_census_small_cases(kronecker, nine):
    single = make_quiver(["1"], [])
    assert no_gaps_census(single, 3).achieved == [1]
    cert = no_gaps_census(nine, 5)
    assert cert.gap_free and cert.achieved == [1, 2, 3, 4]
    cert = no_gaps_census(kronecker, 6)
    assert cert.gap_free
    assert cert.achieved == list(range(1, 10))
    # 9 comes from a six-letter string while 8 first appears at seven letters
    assert cert.to_json()["enumeration_gaps"] == [8]
    assert "8" in cert.to_json()["filled_by_reduction"]
    with pytest.raises(ValueError):
        no_gaps_census(kronecker, 0)


def test_ext_against_the_regular_module(nine, kronecker):
    for d in range(1, 4):
        assert ext_dim(nine, projective_string(nine, "1"), d) == 0
    s1 = parse_string(nine, "e(1)")
    assert any(ext_dim(nine, s1, d) for d in range(4))
    b = parse_band(kronecker, "band[a.~b]")
    assert ext_dim(kronecker, (b, Jordan(2, Fraction(1))), 1) > 0
    with pytest.raises(ValueError):
        ext_dim(nine, s1, -1)


def test_hom_into_the_regular_module_matches_degree_zero(nine, kronecker):
    for q in (nine, kronecker):
        for c in enumerate_strings(q, 3):
            assert ext_dim(q, c, 0) == hom_to_regular(q, c)
    b = parse_band(kronecker, "band[a.~b]")
    j = Jordan(1, Fraction(2))
    assert ext_dim(kronecker, (b, j), 0) == hom_to_regular(kronecker, (b, j))


def test_nakayama_witnesses(nine, kronecker):
    w = nakayama_witness(nine, parse_string(nine, "e(3)"))
    assert w.d == 0 and w.dim > 0
    w = nakayama_witness(nine, parse_string(nine, "e(1)"))
    assert w.d == 1
    w = nakayama_witness(kronecker, (parse_band(kronecker, "band[a.~b]"), Jordan(2, Fraction(2))))
    assert w.d <= 1 and w.to_json()["dim"] > 0
    assert issubclass(NakayamaFailure, RuntimeError)
