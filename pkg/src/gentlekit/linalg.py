"""Exact rational linear algebra on small dense matrices.

Matrices are lists of rows of ``Fraction``.  Vectors act on the left
(row convention), so a map ``V -> W`` is a ``dim V x dim W`` matrix and
composition ``V -> W -> U`` is the product ``A @ B``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def jordan_block(n: int, lam: Fraction) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(lam)
        if i + 1 < n:
            m[i][i + 1] = Fraction(1)
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Product of an ``r x k`` and a ``k x c`` matrix."""
    rows = len(a)
    cols = len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i, row in enumerate(a):
        acc = out[i]
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
    return out


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    """Rank by Gaussian elimination over the rationals (rows as sparse dicts)."""
    pivots: dict[int, dict[int, Fraction]] = {}
    r = 0
    for row in m:
        vec = {j: Fraction(x) for j, x in enumerate(row) if x}
        while vec:
            j = min(vec)
            piv = pivots.get(j)
            if piv is None:
                inv = 1 / vec[j]
                pivots[j] = {k: x * inv for k, x in vec.items()}
                r += 1
                break
            c = vec[j]
            for k, x in piv.items():
                y = vec.get(k, 0) - c * x
                if y:
                    vec[k] = y
                else:
                    vec.pop(k, None)
    return r
