import json

import pytest

from gentlekit.goldens import NINE_VERTEX_CURVE
from gentlekit.homotopy import (
    HomotopyError,
    Jordan,
    canonical_homotopy,
    enumerate_homotopy_bands,
    enumerate_homotopy_strings,
    format_homotopy,
    homotopy_to_json,
    parse_homotopy,
)


def test_nine_vertex_curve_parses(nine):
    h = parse_homotopy(nine, NINE_VERTEX_CURVE)
    assert h.n == 10
    assert h.vertices == ("2", "1", "9", "8", "6", "5", "4", "3", "2", "1")
    assert h.degrees == (-1, 0, -1, -2, -3, -2, -1, -2, -1, 0)
    assert format_homotopy(h) == NINE_VERTEX_CURVE
    assert parse_homotopy(nine, json.dumps(homotopy_to_json(h))) == h


def test_degree_steps(nine):
    # a direct letter lowers the degree by one, an inverse letter raises it
    assert parse_homotopy(nine, "[0] a3 [-1]").degrees == (0, -1)
    assert parse_homotopy(nine, "[0] ~a3 [1] a4 [0]").degrees == (0, 1, 0)
    with pytest.raises(HomotopyError, match="degrees"):
        parse_homotopy(nine, "[0] a3 [1]")


@pytest.mark.parametrize(
    "text",
    [
        "[0] a7 [-1] a6 [-2]",  # consecutive direct letters compose to a nonzero path
        "[-1] a7.a6 [-2] ~a6 [-1]",  # turn with equal last arrows
        "[1] ~a1 [2] a1 [1]",  # turn with equal first arrows
        "[0] a1.a2 [-1]",  # letter meets a relation
        "[0] a3 [-1] a1 [-2]",  # letters do not meet
    ],
)
def test_invalid_walks(nine, text):
    with pytest.raises(HomotopyError):
        parse_homotopy(nine, text)


def test_valid_turns(nine):
    parse_homotopy(nine, "[0] a1 [-1] a2 [-2]")
    parse_homotopy(nine, "[-1] a7.a6 [-2] ~a5 [-1]")
    parse_homotopy(nine, "[1] ~a1 [2] a9 [1]")
    assert parse_homotopy(nine, "[4] e(7)").vertices == ("7",)


def test_canonical_representative(nine):
    h = parse_homotopy(nine, "[3] a3 [2]")
    c = canonical_homotopy(nine, h)
    assert max(c.degrees) == 0
    assert canonical_homotopy(nine, h.inverse()) == c


def test_enumeration(kronecker, nine):
    strings = enumerate_homotopy_strings(kronecker, 2)
    assert {format_homotopy(h) for h in strings} >= {"[0] e(1)", "[0] e(2)", "[0] a [-1]", "[0] a [-1] ~b [0]"}
    assert all(max(h.degrees) == 0 for h in strings)
    assert len(strings) == len(set(strings))
    bands = enumerate_homotopy_bands(kronecker, 2)
    assert len(bands) == 1 and len(bands[0].letters) == 2
    assert enumerate_homotopy_bands(nine, 6) == []


def test_jordan_data():
    assert Jordan(2, "3/2").lam.denominator == 2
    with pytest.raises(ValueError):
        Jordan(1, 0)
    with pytest.raises(ValueError):
        Jordan(0, 1)
