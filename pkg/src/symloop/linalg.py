"""Exact rational vectors and small dense matrices.

Coordinates live in ``fractions.Fraction`` tuples. Anything beyond elementwise
arithmetic (determinants, inverses, kernels, definiteness) goes through sympy
and comes back as fractions.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

import sympy

Rational = Fraction
RatVec = tuple[Fraction, ...]
RatMatrix = tuple[RatVec, ...]


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are refused: every quantity in this package is exact.

    Raises:
        ValueError: If the value is not an exact rational.
    """
    if isinstance(value, bool):
        raise ValueError(f"expected a rational, got {value!r}")
    if isinstance(value, Fraction | int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"expected a rational, got {value!r}")
    text = value.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"expected a rational like '3/4', got {value!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"expected a rational like '3/4', got {value!r}") from err


def parse_ratvec(text: str) -> RatVec:
    """Parse a comma-separated vector such as ``"2,1"`` or ``"1/2,-1/2"``."""
    parts = text.replace(" ", "").split(",")
    if any(not p for p in parts):
        raise ValueError(f"expected comma-separated rationals, got {text!r}")
    return tuple(parse_rational(p) for p in parts)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_ratvec(v: Iterable[Fraction]) -> str:
    return ",".join(format_rational(x) for x in v)


# ---------------------------------------------------------------------------
# Vector arithmetic
# ---------------------------------------------------------------------------


def vec(values: Iterable[Fraction | int | str]) -> RatVec:
    return tuple(parse_rational(x) for x in values)


def zero(r: int) -> RatVec:
    return (Fraction(0),) * r


def add(u: RatVec, v: RatVec) -> RatVec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: RatVec, v: RatVec) -> RatVec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(c: Fraction | int, v: RatVec) -> RatVec:
    return tuple(c * a for a in v)


def is_zero(v: RatVec) -> bool:
    return all(a == 0 for a in v)


def is_integral(v: Iterable[Fraction]) -> bool:
    return all(Fraction(a).denominator == 1 for a in v)


def mat_vec(m: RatMatrix, v: RatVec) -> RatVec:
    return tuple(sum((a * b for a, b in zip(row, v, strict=True)), Fraction(0)) for row in m)


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    cols = list(zip(*b, strict=True))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col, strict=True)), Fraction(0)) for col in cols)
        for row in a
    )


def identity(r: int) -> RatMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r))


def transpose(m: RatMatrix) -> RatMatrix:
    return tuple(tuple(col) for col in zip(*m, strict=True))


def bilinear(gram: RatMatrix, u: RatVec, v: RatVec) -> Fraction:
    """Return uᵀ·G·v."""
    return sum((a * b for a, b in zip(u, mat_vec(gram, v), strict=True)), Fraction(0))


def integer_gcd(values: Iterable[int]) -> int:
    return math.gcd(*values)


def block_diagonal(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    ra, rb = len(a), len(b)
    top = tuple(row + zero(rb) for row in a)
    bottom = tuple(zero(ra) + row for row in b)
    return top + bottom


# ---------------------------------------------------------------------------
# sympy bridge
# ---------------------------------------------------------------------------


def _to_sympy(m: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m]
    )


def _from_sympy_scalar(x: sympy.Expr) -> Fraction:
    q = sympy.Rational(x)
    return Fraction(int(q.p), int(q.q))


def _from_sympy(m: sympy.Matrix) -> RatMatrix:
    return tuple(
        tuple(_from_sympy_scalar(m[i, j]) for j in range(m.cols)) for i in range(m.rows)
    )


def det(m: RatMatrix) -> Fraction:
    return _from_sympy_scalar(_to_sympy(m).det())


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse.

    Raises:
        ValueError: If the matrix is singular.
    """
    sm = _to_sympy(m)
    if sm.det() == 0:
        raise ValueError("matrix is singular")
    return _from_sympy(sm.inv())


def is_symmetric(m: RatMatrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))


def is_positive_definite(m: RatMatrix) -> bool:
    return bool(_to_sympy(m).is_positive_definite)


def kernel(covector: RatVec) -> tuple[RatVec, ...]:
    """Basis of {x : covector·x = 0}, scaled to integer entries."""
    basis = _to_sympy((covector,)).nullspace()
    out = []
    for col in basis:
        entries = [_from_sympy_scalar(x) for x in col]
        denom = math.lcm(*(e.denominator for e in entries))
        out.append(tuple(e * denom for e in entries))
    return tuple(out)


def columns_to_matrix(columns: Sequence[RatVec]) -> RatMatrix:
    """Matrix whose j-th column is ``columns[j]``."""
    return transpose(tuple(columns))
