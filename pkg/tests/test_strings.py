import pytest

from gentlekit.complexes import cohomology_truncation
from gentlekit.goldens import NINE_VERTEX_CURVE
from gentlekit.homotopy import parse_homotopy
from gentlekit.strings import (
    StringError,
    canonical,
    completion,
    concat,
    enumerate_bands,
    enumerate_strings,
    parse_band,
    parse_string,
    projective_string,
    soc_positions,
    substring,
    supplemental_union,
    top_positions,
    truncate,
    truncation_of_span,
)


def test_string_validation(nine):
    p1 = parse_string(nine, "~a1.a9")
    assert p1.vertices == ("2", "1", "9")
    with pytest.raises(StringError, match="relation"):
        parse_string(nine, "a1.a2")
    with pytest.raises(StringError, match="reduced"):
        parse_string(nine, "a1.~a1")
    with pytest.raises(StringError):
        parse_string(nine, "a1.a3")
    assert parse_string(nine, "e(3)").vertices == ("3",)
    # inverse run through a relation: ~a2.~a1 reverses a1.a2
    with pytest.raises(StringError):
        parse_string(nine, "~a2.~a1")


def test_canonical_form_identifies_inverse_walks(nine):
    w = parse_string(nine, "~a1.a9")
    assert canonical(nine, w.inverse()) == canonical(nine, w)
    assert w.inverse().inverse() == w


def test_projective_strings(nine, kronecker):
    assert projective_string(nine, "1").vertices == ("2", "1", "9")
    assert projective_string(nine, "4").vertices == ("3", "4", "5")
    assert str(projective_string(kronecker, "2")) == "e(2)"
    assert sorted(projective_string(kronecker, "1").vertices) == ["1", "2", "2"]
    for v in nine.vertices:
        assert len(projective_string(nine, v).vertices) == len(nine.paths_from(v))


def test_top_and_socle_positions(nine):
    p1 = parse_string(nine, "~a1.a9")
    assert top_positions(p1) == [1] and soc_positions(p1) == [0, 2]
    a3 = parse_string(nine, "a3")
    assert top_positions(a3) == [0] and soc_positions(a3) == [1]
    e = parse_string(nine, "e(5)")
    assert top_positions(e) == soc_positions(e) == [0]


def test_truncations(nine):
    p2 = projective_string(nine, "2")
    t = truncate(p2, 2, 3)
    assert t.span == (1, 1)
    assert str(completion(nine, t)) == "e(3)"
    assert truncate(p2, 3, 2).is_trivial
    p4 = projective_string(nine, "4")
    full = truncation_of_span(p4, 0, len(p4.vertices) - 1)
    assert (full.r, full.s) == (0, len(p4.vertices) + 1)
    assert completion(nine, full) == p4
    with pytest.raises(StringError):
        truncate(p2, 0, 9)


def test_substring_and_concat(nine):
    p4 = projective_string(nine, "4")
    left, right = substring(p4, 0, 1), substring(p4, 1, 2)
    assert concat(left, right) == p4
    assert substring(p4, 2, 0) == p4.inverse()


def test_supplemental_union_in_degree_minus_one(nine):
    h = parse_homotopy(nine, NINE_VERTEX_CURVE)
    parts = cohomology_truncation(nine, h).at(-1).curves
    assert len(parts) == 4 and sum(t.is_trivial for t in parts) == 1
    strings = supplemental_union(nine, parts, h)
    assert sorted(str(s) for s in strings) == ["a3", "e(3)"]
    trivial = [t for t in parts if t.is_trivial]
    assert supplemental_union(nine, trivial, h) == []
    single = [t for t in parts if not t.is_trivial][:1]
    assert supplemental_union(nine, single, h) == [completion(nine, single[0])]


def test_enumeration(kronecker, nine):
    assert sorted(str(s) for s in enumerate_strings(kronecker, 1)) == ["a", "b", "e(1)", "e(2)"]
    assert [str(b) for b in enumerate_bands(kronecker, 2)] == ["band[a.~b]"]
    assert len(enumerate_strings(nine, 0)) == 9
    assert enumerate_bands(nine, 8) == []
    strings = enumerate_strings(nine, 4)
    assert len(strings) == len({canonical(nine, s) for s in strings})


def test_band_validation(kronecker):
    b = parse_band(kronecker, "band[~b.a]")
    assert str(b) == "band[a.~b]"
    with pytest.raises(StringError, match="power"):
        parse_band(kronecker, "band[a.~b.a.~b]")
    with pytest.raises(StringError):
        parse_band(kronecker, "band[a]")
