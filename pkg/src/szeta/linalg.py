"""Small exact linear algebra over Fractions and integers."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def det(rows) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = to_matrix(rows)
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def solve(rows, rhs) -> list[Fraction] | None:
    """Solve a square system exactly; None when singular."""
    n = len(rows)
    a = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def rank(rows) -> int:
    a = to_matrix(rows)
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            f = a[i][col] / a[r][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == m:
            break
    return r


def inverse(rows) -> Matrix:
    n = len(rows)
    cols = [solve(rows, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    if any(c is None for c in cols):
        raise ZeroDivisionError("singular matrix")
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matvec(rows, x: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, x)), Fraction(0)) for row in rows]


def dot(x: Sequence, y: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(x, y)), Fraction(0))


def integer_det(rows) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def hermite_rows(vectors) -> list[list[int]]:
    """Row-style Hermite normal form (nonzero rows only) of an integer row set."""
    a = [[int(x) for x in v] for v in vectors]
    if not a:
        return []
    n = len(a[0])
    r = 0
    for col in range(n):
        rows = [i for i in range(r, len(a)) if a[i][col] != 0]
        if not rows:
            continue
        # Euclid on the column until a single nonzero entry remains
        while True:
            rows = [i for i in range(r, len(a)) if a[i][col] != 0]
            if len(rows) == 1:
                break
            piv = min(rows, key=lambda i: abs(a[i][col]))
            for i in rows:
                if i != piv:
                    q = a[i][col] // a[piv][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[piv])]
        piv = rows[0]
        a[r], a[piv] = a[piv], a[r]
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][col] // a[r][col]
            a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [row for row in a[:r]]


def generates_full_lattice(vectors, dim: int) -> bool:
    """True when the integer vectors generate all of Z^dim."""
    h = hermite_rows(vectors)
    if len(h) != dim:
        return False
    d = 1
    for i, row in enumerate(h):
        d *= row[i] if i < len(row) else 0
    return abs(d) == 1
