from fractions import Fraction

import pytest

from gentlekit.homotopy import Jordan
from gentlekit.modules import (
    band_to_module,
    check_representation,
    cover_map,
    dim_vector,
    direct_sum,
    hom_dim,
    kernel_dims,
    projective_cover,
    projective_module,
    representation_from_json,
    soc_dims,
    string_to_module,
    top_dims,
)
from gentlekit.strings import parse_band, parse_string, projective_string


def nz(d):
    return {k: v for k, v in d.items() if v}


def test_string_modules(nine):
    m = string_to_module(nine, parse_string(nine, "~a1.a9"))
    assert nz(dim_vector(m)) == {"1": 1, "2": 1, "9": 1}
    assert m.mats["a1"] == [[1]] and m.mats["a9"] == [[1]]
    m = string_to_module(nine, parse_string(nine, "a6"))
    assert nz(dim_vector(m)) == {"7": 1, "6": 1} and m.mats["a6"] == [[1]]
    s = string_to_module(nine, parse_string(nine, "e(4)"))
    assert nz(dim_vector(s)) == {"4": 1}
    check_representation(nine, m)


def test_direct_sum_dims(nine):
    m = direct_sum(nine, [string_to_module(nine, parse_string(nine, w)) for w in ("a3", "e(3)")])
    assert nz(dim_vector(m)) == {"4": 1, "3": 2}
    assert nz(dim_vector(direct_sum(nine, []))) == {}


def test_band_modules(kronecker):
    b = parse_band(kronecker, "band[a.~b]")
    m = band_to_module(kronecker, b, Jordan(1, Fraction(3)))
    assert m.dims == {"1": 1, "2": 1}
    assert m.mats == {"a": [[1]], "b": [[3]]}
    m2 = band_to_module(kronecker, b, Jordan(2, Fraction(3)))
    assert m2.mats["b"] == [[3, 1], [0, 3]]
    assert representation_from_json(kronecker, m2.to_json()).mats == m2.mats
    with pytest.raises(ValueError):
        Jordan(2, Fraction(0))


def test_top_and_socle(nine):
    p1 = projective_module(nine, "1")
    assert nz(top_dims(nine, p1)) == {"1": 1}
    assert nz(soc_dims(nine, p1)) == {"2": 1, "9": 1}


def test_projective_cover(nine):
    cover, kernel = projective_cover(nine, parse_string(nine, "e(1)"))
    assert cover == ["1"] and sorted(str(s) for s in kernel) == ["e(2)", "e(9)"]
    cover, kernel = projective_cover(nine, parse_string(nine, "a3"))
    assert cover == ["4"] and [str(s) for s in kernel] == ["e(5)"]
    cover, kernel = projective_cover(nine, projective_string(nine, "4"))
    assert cover == ["4"] and kernel == []
    c = parse_string(nine, "e(1)")
    blocks = cover_map(nine, c)
    assert sum(kernel_dims(blocks, dim_vector(string_to_module(nine, c))).values()) == 2


def test_hom_dimensions(nine, kronecker):
    s3 = string_to_module(nine, parse_string(nine, "e(3)"))
    p2 = projective_module(nine, "2")
    assert hom_dim(nine, s3, p2) == 1
    assert hom_dim(nine, p2, s3) == 0
    p1 = projective_module(kronecker, "1")
    assert hom_dim(kronecker, p1, p1) == 1
    assert hom_dim(kronecker, projective_module(kronecker, "2"), p1) == 2
