"""Dense matrices over RingPoly.

A matrix is a tuple of row tuples.  A map V -> U between free modules is a
``dim U x dim V`` matrix acting on column vectors; tensor factors are
flattened row-major (first factor is the most significant index).
"""
from __future__ import annotations

from typing import Sequence, Tuple

from .ring import ONE, ZERO, RingPoly

Matrix = Tuple[Tuple[RingPoly, ...], ...]


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n))


def from_rows(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(RingPoly.coerce(x) for x in row) for row in rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """``a @ b``: apply ``b`` first, then ``a``."""
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {ra}x{ca} @ {rb}x{cb}")
    out = []
    for r in range(ra):
        row = a[r]
        nz = [(k, row[k]) for k in range(ca) if row[k]]
        out_row = []
        for c in range(cb):
            acc = ZERO
            for k, x in nz:
                y = b[k][c]
                if y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def compose(*maps: Matrix) -> Matrix:
    """Composite in application order: ``compose(f, g)`` is g after f."""
    result = maps[0]
    for m in maps[1:]:
        result = matmul(m, result)
    return result


def kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = []
    for i in range(ra):
        for k in range(rb):
            out.append(tuple(a[i][j] * b[k][l] for j in range(ca) for l in range(cb)))
    return tuple(out)


def kron_all(*ms: Matrix) -> Matrix:
    result = ((ONE,),)
    for m in ms:
        result = kron(result, m)
    return result


def scale(s, m: Matrix) -> Matrix:
    s = RingPoly.coerce(s)
    return tuple(tuple(s * x for x in row) for row in m)


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError("shape mismatch in matrix sum")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def swap(p: int, q: int) -> Matrix:
    """Braiding V_p (x) V_q -> V_q (x) V_p on basis vectors."""
    n = p * q
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(p):
        for j in range(q):
            rows[j * p + i][i * q + j] = ONE
    return tuple(tuple(r) for r in rows)


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def to_strings(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]
