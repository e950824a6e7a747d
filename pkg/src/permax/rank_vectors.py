"""Column-submatrix families, their rank vectors, and the prefix-sum order.

A family holds its members as 1-based column index sets of a common
parent, so duplicates-as-matrices stay distinct members and multiplicity
counts are unambiguous.  Rank vectors are indexed by descending rank:
``counts[0]`` is the number of members of full rank k, ``counts[k-1]``
the number of rank-1 members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import RankError, ShapeError
from .exact_rank import rank
from .sign_matrix import SignMatrix, d_matrix, make_matrix, submatrix_select

__all__ = [
    "SubmatrixFamily",
    "k_family",
    "rank_vector",
    "family_rank_vector",
    "replace_family",
    "majorize_leq",
    "majorize_lt",
    "check_min_law",
    "multiplicity_law",
]

RankVector = tuple[int, ...]


@dataclass(frozen=True)
class SubmatrixFamily:
    """Multiset of k-column selections from a k x n parent."""

    parent: SignMatrix
    members: tuple[tuple[int, ...], ...]

    def member(self, i: int) -> SignMatrix:
        """Member ``i`` (0-based position in the multiset) as a matrix."""
        cols = self.members[i]
        return submatrix_select(self.parent, range(1, self.parent.rows + 1), cols)


def k_family(a: SignMatrix) -> SubmatrixFamily:
    """All C(n,k) column selections of a k x n matrix, in lexicographic order."""
    k = a.rows
    members = tuple(itertools.combinations(range(1, a.cols + 1), k))
    return SubmatrixFamily(parent=a, members=members)


def family_rank_vector(fam: SubmatrixFamily) -> RankVector:
    """Rank vector of a family: counts[i] = members of rank k - i."""
    k = fam.parent.rows
    counts = [0] * k
    for i in range(len(fam.members)):
        counts[k - rank(fam.member(i))] += 1
    return tuple(counts)


def rank_vector(a: SignMatrix) -> RankVector:
    """Rank vector of the full column-selection family of ``a``."""
    return family_rank_vector(k_family(a))


def replace_family(c: SignMatrix, b) -> SubmatrixFamily:
    """The k members obtained from square ``c`` by putting column ``b`` in place
    of each of its columns in turn.

    The parent is ``c`` with ``b`` appended as column k+1; member i is the
    index set {1..k+1} minus {i}.  Ranks are unchanged by the reordering
    that puts the replacement column last.
    """
    if not c.is_square:
        raise ShapeError(f"replace_family needs a square matrix, got {c.rows}x{c.cols}")
    col = list(b)
    if len(col) != c.rows:
        raise ShapeError(f"column height {len(col)} does not match order {c.rows}")
    k = c.rows
    entries = []
    for i in range(1, k + 1):
        entries.extend(c.row_signs(i))
        entries.append(col[i - 1])
    parent = make_matrix(entries, k, k + 1)
    all_ix = range(1, k + 2)
    members = tuple(tuple(j for j in all_ix if j != i) for i in range(1, k + 1))
    return SubmatrixFamily(parent=parent, members=members)


def majorize_leq(r1: RankVector, r2: RankVector) -> bool:
    """Prefix-sum order: every prefix sum of r1 is <= the same prefix of r2."""
    if len(r1) != len(r2):
        raise ShapeError(f"vector lengths differ: {len(r1)} vs {len(r2)}")
    s1 = s2 = 0
    for a, b in zip(r1, r2):
        s1 += a
        s2 += b
        if s1 > s2:
            return False
    return True


def majorize_lt(r1: RankVector, r2: RankVector) -> bool:
    """Strict variant: majorize_leq holds and some prefix inequality is strict."""
    if not majorize_leq(r1, r2):
        return False
    s1 = s2 = 0
    for a, b in zip(r1, r2):
        s1 += a
        s2 += b
        if s1 < s2:
            return True
    return False


def check_min_law(a: SignMatrix) -> bool:
    """Whether the one-short near-identity family sits below ``a``.

    For a full-row-rank k x n matrix, R(D_(n,k,k-1)) is expected to be
    minimal in the prefix-sum order; callers assert the returned value.
    """
    k, n = a.rows, a.cols
    r = rank(a)
    if r < k:
        raise RankError(f"rank {r} < row count {k}; the minimality law needs full row rank")
    return majorize_leq(rank_vector(d_matrix(n, k, k - 1)), rank_vector(a))


def multiplicity_law(a: SignMatrix, b) -> bool:
    """Provenance count of the fresh selections after appending column ``b``.

    Appending b to a k x n matrix adds the selections through column n+1.
    Collecting every replace_family member over all selections of ``a``,
    keyed by origin columns, must hit each fresh selection exactly
    n - k + 1 times.
    """
    col = list(b)
    if len(col) != a.rows:
        raise ShapeError(f"column height {len(col)} does not match row count {a.rows}")
    k, n = a.rows, a.cols
    seen: dict[tuple[int, ...], int] = {}
    for gamma in itertools.combinations(range(1, n + 1), k):
        c = submatrix_select(a, range(1, k + 1), gamma)
        fam = replace_family(c, col)
        for i, _member in enumerate(fam.members):
            # member i drops local column i+1, i.e. parent column gamma[i]
            key = tuple(sorted(set(gamma) - {gamma[i]})) + (n + 1,)
            seen[key] = seen.get(key, 0) + 1
    fresh = {
        delta + (n + 1,)
        for delta in itertools.combinations(range(1, n + 1), k - 1)
    }
    if set(seen) != fresh:
        return False
    return all(count == n - k + 1 for count in seen.values())
