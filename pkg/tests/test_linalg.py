from fractions import Fraction

import pytest

from gentlekit.linalg import format_rational, identity, is_zero, jordan_block, matmul, parse_rational, rank


def F(x):
    return Fraction(x)


def test_parse_and_format_rationals():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(2) == 2
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_rank_is_exact():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(1), F(0), F(1)]]
    assert rank(m) == 2
    assert rank([]) == 0
    assert rank([[F(0), F(0)]]) == 0
    assert rank(identity(4)) == 4
    # a nearly singular matrix that floating point would misjudge
    eps = Fraction(1, 10 ** 30)
    assert rank([[F(1), F(1)], [F(1), 1 + eps]]) == 2


def test_jordan_block_and_products():
    j = jordan_block(3, Fraction(2))
    assert j == [[2, 1, 0], [0, 2, 1], [0, 0, 2]]
    assert matmul(identity(3), j) == j
    assert is_zero(matmul([[F(1), F(0)]], [[F(0)], [F(0)]]))
    n = [[F(0), F(1)], [F(0), F(0)]]
    assert is_zero(matmul(n, n))
