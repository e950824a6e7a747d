"""Exact rank of sign matrices over the rationals.

Fraction-free (Bareiss) elimination on integer copies of the entries.
Entries are all +-1, so at the supported shapes every intermediate fits
comfortably in 64 bits; the guard below is defensive only.
"""

from __future__ import annotations

from .sign_matrix import SignMatrix

__all__ = ["rank"]

_LIMIT = 1 << 63


def _rank_rows(m: list[list[int]]) -> int:
    """Rank of an integer matrix given as mutable rows; destroys ``m``."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r
        while p < rows and m[p][c] == 0:
            p += 1
        if p == rows:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        pivot = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, cols):
                v = (pivot * row_i[j] - mic * row_r[j]) // prev
                if v >= _LIMIT or v <= -_LIMIT:
                    raise OverflowError("elimination intermediate exceeds 64 bits")
                row_i[j] = v
            row_i[c] = 0
        prev = pivot
        r += 1
    return r


def rank(a: SignMatrix) -> int:
    """Rank of ``a`` over the rationals, computed exactly.

    Raises OverflowError if an intermediate magnitude reaches 2**63
    (unreachable within the shape budget).
    """
    return _rank_rows([list(a.row_signs(i)) for i in range(1, a.rows + 1)])
