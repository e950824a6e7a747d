"""Constructive reductions under the standard transformations.

Every public operation that claims a reduction returns the transform
sequence realizing it, and the sequence is replayed before returning,
so callers can trust the witness bit-exactly.  The decision procedure
in classify_form follows a fixed case analysis on the counts of
negative entries per row and column; all ties break toward the lowest
index, which keeps the output deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError, RankError, ShapeError
from .exact_rank import rank
from .permanent import permanent_ryser
from .sign_matrix import (
    SignMatrix,
    apply,
    apply_step,
    d_matrix,
    invert_transforms,
    make_matrix,
    p_matrix,
    submatrix_delete,
)

__all__ = [
    "FormClass",
    "normalize_first_line",
    "condition_A",
    "q_block_form",
    "classify_form",
    "equivalent_to_d",
    "canonical_form",
]

FORM_TAGS = ("DnMinus1", "DnDiag", "P1", "P2", "ConditionA", "D5Special")


@dataclass(frozen=True)
class FormClass:
    """Classification outcome: a tag and the sequence that reaches it."""

    tag: str
    seq: tuple[tuple, ...]


def _emit(work: SignMatrix, steps: list[tuple], step: tuple) -> SignMatrix:
    steps.append(step)
    return apply_step(work, step)


def _neg_cols(work: SignMatrix, i: int) -> list[int]:
    w = work.words[i - 1]
    return [j + 1 for j in range(work.cols) if (w >> j) & 1]


def _col_neg_count(work: SignMatrix, j: int) -> int:
    bit = 1 << (j - 1)
    return sum(1 for w in work.words if w & bit)


def normalize_first_line(a: SignMatrix) -> tuple[SignMatrix, tuple[tuple, ...]]:
    """All-ones first row and column via negations, preserving |per|.

    For a nonsingular input, a row/column pair whose deletion leaves a
    full-rank minor is first permuted to position (1,1), so the output
    additionally has a rank n-1 minor at (1|1).
    """
    if not a.is_square:
        raise ShapeError(f"normalization needs a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    work = a
    steps: list[tuple] = []
    if n >= 2 and rank(a) == n:
        found = None
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if rank(submatrix_delete(a, (i,), (j,))) == n - 1:
                    found = (i, j)
                    break
            if found:
                break
        i, j = found  # a full-rank matrix always has one
        if i != 1:
            work = _emit(work, steps, ("swapR", 1, i))
        if j != 1:
            work = _emit(work, steps, ("swapC", 1, j))
    for j in range(1, n + 1):
        if work.entry(1, j) == -1:
            work = _emit(work, steps, ("negC", j))
    for i in range(2, n + 1):
        if work.entry(i, 1) == -1:
            work = _emit(work, steps, ("negR", i))
    return work, tuple(steps)


def condition_A(a: SignMatrix) -> bool:
    """All-ones first row, and a second row with three entries of each sign."""
    if not a.is_square or a.rows < 6:
        raise ShapeError(f"condition needs a square matrix of order >= 6, got {a.rows}x{a.cols}")
    neg = a.words[1].bit_count()
    return a.words[0] == 0 and neg >= 3 and a.cols - neg >= 3


def q_block_form(a: SignMatrix) -> tuple[list[int], tuple[tuple, ...]]:
    """Permute a two-negatives-per-line matrix into diagonal cyclic blocks.

    The -1 pattern of such a matrix is a disjoint union of cycles; the
    returned permutations place each cycle as a block with -1 on its
    diagonal, superdiagonal, and lower-left corner, all other entries 1.
    Block sizes are returned in placement order.
    """
    for i in range(1, a.rows + 1):
        if a.words[i - 1].bit_count() != 2:
            raise PreconditionError(f"row {i} has {a.words[i - 1].bit_count()} negative entries, need 2")
    for j in range(1, a.cols + 1):
        if _col_neg_count(a, j) != 2:
            raise PreconditionError(f"column {j} has {_col_neg_count(a, j)} negative entries, need 2")
    n = a.rows
    work = a
    steps: list[tuple] = []
    sizes: list[int] = []
    pos = 1
    while pos <= n:
        start = pos
        c1, c2 = _neg_cols(work, start)
        if c1 != start:
            work = _emit(work, steps, ("swapC", start, c1))
        c2 = [c for c in _neg_cols(work, start) if c != start][0]
        if c2 != start + 1:
            work = _emit(work, steps, ("swapC", start + 1, c2))
        q = start + 1
        while True:
            bit = 1 << (q - 1)
            r = next(i for i in range(1, n + 1) if i != q - 1 and work.words[i - 1] & bit)
            if r != q:
                work = _emit(work, steps, ("swapR", q, r))
            other = [c for c in _neg_cols(work, q) if c != q][0]
            if other == start:
                sizes.append(q - start + 1)
                pos = q + 1
                break
            if other != q + 1:
                work = _emit(work, steps, ("swapC", q + 1, other))
            q += 1
    expected = []
    base = 0
    for size in sizes:
        for p in range(size):
            w = 1 << (base + p)
            w |= 1 << (base + p + 1) if p + 1 < size else 1 << base
            expected.append(w)
        base += size
    assert work.words == tuple(expected), "block placement left a stray entry"
    return sizes, tuple(steps)


# --- canonical orbit representative -----------------------------------------
#
# Minimal row-major 0/1 code (bit 1 = entry -1, column 1 read first) over the
# full orbit: negations, row and column permutations, and the transpose when
# the matrix is square.  The search anchors one row as all-ones (fixing the
# column negations), then extends row by row; columns stay grouped in an
# ordered partition of still-interchangeable positions, refined by each
# placed row.  Frontier states with equal prefix merge, which keeps highly
# symmetric inputs from branching factorially.


def _canonical_with_seq(a: SignMatrix, allow_transpose: bool) -> tuple[SignMatrix, tuple[tuple, ...]]:
    rows, cols = a.rows, a.cols
    mask = (1 << cols) - 1
    orientations = [(0, a.words)]
    if allow_transpose and a.is_square:
        t_words = tuple(
            sum(((a.words[i] >> j) & 1) << i for i in range(rows)) for j in range(cols)
        )
        orientations.append((1, t_words))

    # state: (base words after column negations, used-row bitmask, partition,
    #         trace) where trace = (t, anchor row, anchor negated, placements)
    frontier: dict = {}
    init_part = (tuple(range(cols)),)
    for t, words in orientations:
        for r0 in range(rows):
            for negfirst in (0, 1):
                colmask = words[r0] if not negfirst else (~words[r0]) & mask
                base = tuple(w ^ colmask for w in words)
                rest = tuple(
                    sorted(
                        tuple(sorted((w, (~w) & mask)))
                        for w in base[:r0] + base[r0 + 1:]
                    )
                )
                key = (init_part, rest)
                if key not in frontier:
                    frontier[key] = (base, 1 << r0, init_part, (t, r0, negfirst, colmask, ()))

    code: list[tuple[int, ...]] = [(0,) * cols]
    for _depth in range(1, rows):
        best_row: tuple[int, ...] | None = None
        extensions: dict = {}
        for base, used, part, trace in frontier.values():
            for i in range(rows):
                if used & (1 << i):
                    continue
                for f in (0, 1):
                    w = base[i] if not f else (~base[i]) & mask
                    row_code = []
                    new_part = []
                    for g in part:
                        zeros = tuple(c for c in g if not (w >> c) & 1)
                        ones = tuple(c for c in g if (w >> c) & 1)
                        row_code.extend([0] * len(zeros) + [1] * len(ones))
                        if zeros:
                            new_part.append(zeros)
                        if ones:
                            new_part.append(ones)
                    row_code = tuple(row_code)
                    if best_row is not None and row_code > best_row:
                        continue
                    if best_row is None or row_code < best_row:
                        best_row = row_code
                        extensions = {}
                    new_used = used | (1 << i)
                    rest = tuple(
                        sorted(
                            tuple(sorted((base[k], (~base[k]) & mask)))
                            for k in range(rows)
                            if not new_used & (1 << k)
                        )
                    )
                    key = (tuple(new_part), rest, row_code)
                    if key not in extensions:
                        t, r0, negfirst, colmask, placed = trace
                        extensions[key] = (
                            base,
                            new_used,
                            tuple(new_part),
                            (t, r0, negfirst, colmask, placed + ((i, f),)),
                        )
        frontier = extensions
        code.append(best_row)  # type: ignore[arg-type]

    # all surviving states realize the same minimal code; take the first
    base, used, part, trace = next(iter(frontier.values()))
    t, r0, negfirst, colmask, placed = trace

    canon_words = tuple(sum(bit << j for j, bit in enumerate(row)) for row in code)
    canon = SignMatrix(rows, cols, canon_words)

    steps: list[tuple] = []
    if t:
        steps.append(("T",))
    for j in range(cols):
        if (colmask >> j) & 1:
            steps.append(("negC", j + 1))
    neg_rows = ([r0 + 1] if negfirst else []) + [i + 1 for i, f in placed if f]
    for i in sorted(neg_rows):
        steps.append(("negR", i))
    row_target = [r0 + 1] + [i + 1 for i, _f in placed]
    current = list(range(1, rows + 1))
    for p in range(1, rows + 1):
        q = current.index(row_target[p - 1]) + 1
        if q != p:
            steps.append(("swapR", p, q))
            current[p - 1], current[q - 1] = current[q - 1], current[p - 1]
    col_target = [c + 1 for g in part for c in sorted(g)]
    current = list(range(1, cols + 1))
    for p in range(1, cols + 1):
        q = current.index(col_target[p - 1]) + 1
        if q != p:
            steps.append(("swapC", p, q))
            current[p - 1], current[q - 1] = current[q - 1], current[p - 1]

    assert apply(a, steps).words == canon_words, "canonical witness replay failed"
    return canon, tuple(steps)


def canonical_form(a: SignMatrix) -> SignMatrix:
    """Orbit representative under the standard transformations, n <= 6.

    Two square matrices have equal canonical forms exactly when one can
    be carried to the other by negations, permutations, and transposition.
    """
    if not a.is_square:
        raise ShapeError(f"canonical form needs a square matrix, got {a.rows}x{a.cols}")
    if a.rows > 6:
        raise ShapeError(f"canonical form supports order <= 6, got {a.rows}")
    canon, _ = _canonical_with_seq(a, allow_transpose=True)
    return canon


def _rect_canonical(a: SignMatrix) -> SignMatrix:
    """Orbit representative without the transpose (rectangular sweeps)."""
    canon, _ = _canonical_with_seq(a, allow_transpose=False)
    return canon


def equivalent_to_d(a: SignMatrix, r: int) -> tuple[tuple, ...] | None:
    """Transform sequence carrying ``a`` onto the near-identity form with
    r diagonal negatives, or None.

    Exact decision for n <= 6 (canonical forms).  For larger orders a
    rank or |per| mismatch is a verified no; otherwise the constructive
    reductions are tried (all-ones target via negations, r = n-1 and
    r = n via the classification procedure) and None means "no reduction
    found", which is weaker than a verified absence.
    """
    if not a.is_square:
        raise ShapeError(f"equivalence test needs a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    target = d_matrix(n, n, r)
    if a == target:
        return ()
    if n <= 6:
        return _equivalence_witness(a, target)
    # rank and |per| are orbit invariants, so a mismatch is a verified no
    if rank(a) != rank(target):
        return None
    if abs(permanent_ryser(a)) != abs(permanent_ryser(target)):
        return None
    if r == 0 and rank(a) == 1:
        work = a
        steps: list[tuple] = []
        for j in range(1, n + 1):
            if work.entry(1, j) == -1:
                work = _emit(work, steps, ("negC", j))
        for i in range(2, n + 1):
            if work.entry(i, 1) == -1:
                work = _emit(work, steps, ("negR", i))
        if work == target:
            return tuple(steps)
        return None
    if r in (n - 1, n):
        form = classify_form(a)
        if r == n - 1 and form.tag == "DnMinus1":
            return form.seq
        if r == n and form.tag == "DnDiag":
            return form.seq
    return None


def _equivalence_witness(a: SignMatrix, target: SignMatrix) -> tuple[tuple, ...] | None:
    """Transform sequence carrying ``a`` exactly onto ``target``, or None.

    Exact for orders <= 6 via canonical-form comparison.
    """
    if a == target:
        return ()
    ca, seq_a = _canonical_with_seq(a, allow_transpose=True)
    ct, seq_t = _canonical_with_seq(target, allow_transpose=True)
    if ca.words != ct.words:
        return None
    seq = seq_a + invert_transforms(seq_t)
    assert apply(a, seq) == target, "equivalence witness replay failed"
    return seq


# --- classification procedure ------------------------------------------------

# Internal checkpoints of the order-6 two-negatives case analysis.  Each entry
# pairs an exact sign pattern (reachable by permutations at that point in the
# procedure) with the closing move that finishes its classification.

_M3_CASES = (
    (
        (
            (1, 1, 1, 1, 1, 1),
            (-1, -1, 1, 1, 1, 1),
            (-1, 1, -1, 1, 1, 1),
            (-1, 1, 1, -1, 1, 1),
            (1, 1, 1, -1, -1, 1),
            (1, 1, 1, 1, -1, -1),
        ),
        "neg_last_transpose",
    ),
    (
        (
            (1, 1, 1, 1, 1, 1),
            (-1, -1, 1, 1, 1, 1),
            (-1, 1, -1, 1, 1, 1),
            (-1, 1, 1, -1, 1, 1),
            (1, 1, 1, -1, -1, 1),
            (1, 1, 1, -1, 1, -1),
        ),
        "is_p2",
    ),
    (
        (
            (1, 1, 1, 1, 1, 1),
            (-1, -1, 1, 1, 1, 1),
            (-1, 1, -1, 1, 1, 1),
            (-1, 1, 1, -1, 1, 1),
            (1, 1, -1, 1, -1, 1),
            (1, 1, 1, -1, 1, -1),
        ),
        "neg_last_transpose",
    ),
)

_M4_CASES = (
    (
        (
            (1, 1, 1, 1, 1, 1),
            (-1, -1, 1, 1, 1, 1),
            (-1, 1, -1, 1, 1, 1),
            (-1, 1, 1, -1, 1, 1),
            (-1, 1, 1, 1, -1, 1),
            (1, 1, 1, 1, -1, -1),
        ),
        "neg_second_transpose",
    ),
    (
        (
            (1, 1, 1, 1, 1, 1),
            (-1, -1, 1, 1, 1, 1),
            (-1, 1, -1, 1, 1, 1),
            (-1, 1, 1, -1, 1, 1),
            (-1, 1, 1, 1, -1, 1),
            (1, 1, 1, -1, -1, 1),
        ),
        "neg_second_transpose",
    ),
)


def _perm_match(work: SignMatrix, template_rows) -> tuple[tuple, ...] | None:
    """Row/column permutation steps carrying ``work`` onto the template."""
    n = work.rows
    template = make_matrix([e for row in template_rows for e in row], n, n)
    for tau in itertools.permutations(range(1, n + 1)):
        permuted = []
        for w in work.words:
            permuted.append(sum(((w >> (tau[q] - 1)) & 1) << q for q in range(n)))
        sigma: list[int] = []
        used = [False] * n
        for p in range(n):
            for i in range(n):
                if not used[i] and permuted[i] == template.words[p]:
                    used[i] = True
                    sigma.append(i + 1)
                    break
            else:
                break
        if len(sigma) != n:
            continue
        steps: list[tuple] = []
        current = list(range(1, n + 1))
        for p in range(1, n + 1):
            q = current.index(sigma[p - 1]) + 1
            if q != p:
                steps.append(("swapR", p, q))
                current[p - 1], current[q - 1] = current[q - 1], current[p - 1]
        current = list(range(1, n + 1))
        for p in range(1, n + 1):
            q = current.index(tau[p - 1]) + 1
            if q != p:
                steps.append(("swapC", p, q))
                current[p - 1], current[q - 1] = current[q - 1], current[p - 1]
        assert apply(work, steps) == template, "permutation witness replay failed"
        return tuple(steps)
    return None


def _close_condition_a(work: SignMatrix, steps: list[tuple]) -> SignMatrix:
    """Swap the all-ones row to position 1 and a mixed row to position 2."""
    n = work.rows
    u = next(i for i in range(1, n + 1) if work.words[i - 1] == 0)
    if u != 1:
        work = _emit(work, steps, ("swapR", 1, u))
    v = next(
        i
        for i in range(2, n + 1)
        if work.words[i - 1].bit_count() >= 3 and n - work.words[i - 1].bit_count() >= 3
    )
    if v != 2:
        work = _emit(work, steps, ("swapR", 2, v))
    assert condition_A(work)
    return work


def _place_rows(work: SignMatrix, steps: list[tuple], target: list[int]) -> SignMatrix:
    """Realize the row order ``target`` (original positions) by swaps."""
    current = list(range(1, work.rows + 1))
    for p in range(1, work.rows + 1):
        q = current.index(target[p - 1]) + 1
        if q != p:
            work = _emit(work, steps, ("swapR", p, q))
            current[p - 1], current[q - 1] = current[q - 1], current[p - 1]
    return work


def _reduce_one_negs(work: SignMatrix, steps: list[tuple], ones_row: int, tag_rows: int) -> SignMatrix:
    """Finish when one row is all ones and the rest have one -1 each.

    Nonsingularity puts those negatives in distinct columns; the all-ones
    row moves to the bottom and the negatives onto the diagonal.
    """
    n = work.rows
    if ones_row != n:
        work = _emit(work, steps, ("swapR", ones_row, n))
    for p in range(1, tag_rows + 1):
        c = _neg_cols(work, p)[0]
        if c != p:
            work = _emit(work, steps, ("swapC", p, c))
    return work


def _classify_five(a: SignMatrix) -> tuple[str, list[tuple]]:
    work = a
    steps: list[tuple] = []
    for j in range(1, 6):
        if work.entry(1, j) == -1:
            work = _emit(work, steps, ("negC", j))
    for i in range(2, 6):
        if work.words[i - 1].bit_count() >= 3:
            work = _emit(work, steps, ("negR", i))
    two = next((i for i in range(2, 6) if work.words[i - 1].bit_count() == 2), None)
    if two is not None:
        if two != 2:
            work = _emit(work, steps, ("swapR", 2, two))
        c1 = _neg_cols(work, 2)[0]
        if c1 != 1:
            work = _emit(work, steps, ("swapC", 1, c1))
        c2 = [c for c in _neg_cols(work, 2) if c != 1][0]
        if c2 != 2:
            work = _emit(work, steps, ("swapC", 2, c2))
        return "D5Special", steps
    work = _reduce_one_negs(work, steps, ones_row=1, tag_rows=4)
    return "DnMinus1", steps


def _classify_general(a: SignMatrix) -> tuple[str, list[tuple]]:
    n = a.rows
    work = a
    steps: list[tuple] = []

    # first row all ones by column negations
    for j in range(1, n + 1):
        if work.entry(1, j) == -1:
            work = _emit(work, steps, ("negC", j))

    # a row with three entries of each sign settles it immediately
    if any(
        work.words[i - 1].bit_count() >= 3 and n - work.words[i - 1].bit_count() >= 3
        for i in range(2, n + 1)
    ):
        _close_condition_a(work, steps)
        return "ConditionA", steps

    # now every row is within two entries of a constant row; flip the
    # mostly-negative ones so each row has at most two -1s
    for i in range(2, n + 1):
        if work.words[i - 1].bit_count() > 2:
            work = _emit(work, steps, ("negR", i))

    one_rows = [i for i in range(2, n + 1) if work.words[i - 1].bit_count() == 1]
    k = len(one_rows)

    if k == n - 1:
        work = _reduce_one_negs(work, steps, ones_row=1, tag_rows=n - 1)
        return "DnMinus1", steps

    # group the single-negative rows right after the first row
    two_rows = [i for i in range(2, n + 1) if i not in one_rows]
    work = _place_rows(work, steps, [1] + one_rows + two_rows)
    for i in range(2, k + 2):
        c = _neg_cols(work, i)[0]
        if c != i:
            work = _emit(work, steps, ("swapC", i, c))

    if k >= 3:
        # the first two-negative row misses some diagonal -1; negating that
        # column frees an all-ones row and builds a three-negative row
        i = next(j for j in range(2, k + 2) if work.entry(k + 2, j) == 1)
        work = _emit(work, steps, ("negC", i))
        _close_condition_a(work, steps)
        return "ConditionA", steps

    if k == 2:
        hit = next(
            (i, j) for i in range(4, n + 1) for j in (2, 3) if work.entry(i, j) == 1
        )
        work = _emit(work, steps, ("negC", hit[1]))
        _close_condition_a(work, steps)
        return "ConditionA", steps

    if k == 1:
        i = next((i for i in range(3, n + 1) if work.entry(i, 2) == 1), None)
        work = _emit(work, steps, ("negC", 2))
        if i is not None:
            _close_condition_a(work, steps)
            return "ConditionA", steps
        # the second column held all remaining negatives: single -1 rows now
        work = _reduce_one_negs(work, steps, ones_row=2, tag_rows=n - 1)
        return "DnMinus1", steps

    # k = 0: every row below the first has exactly two -1s
    counts = [_col_neg_count(work, j) for j in range(1, n + 1)]

    if any(c == n - 1 for c in counts):
        j = counts.index(n - 1) + 1
        work = _emit(work, steps, ("negC", j))
        for p in range(1, n + 1):
            c = _neg_cols(work, p)[0]
            if c != p:
                work = _emit(work, steps, ("swapC", p, c))
        return "DnDiag", steps

    if any(3 <= c <= n - 2 for c in counts):
        j = next(j for j, c in enumerate(counts, start=1) if 3 <= c <= n - 2)
        m = counts[j - 1]
        if j != 1:
            work = _emit(work, steps, ("swapC", 1, j))
        neg_first = [i for i in range(2, n + 1) if work.entry(i, 1) == -1]
        rest = [i for i in range(2, n + 1) if i not in neg_first]
        work = _place_rows(work, steps, [1] + neg_first + rest)
        for i in range(2, m + 2):
            c = [c for c in _neg_cols(work, i) if c != 1][0]
            if c != i:
                work = _emit(work, steps, ("swapC", i, c))
        ci, cj = _neg_cols(work, m + 2)
        if n >= 7:
            work = _emit(work, steps, ("negC", ci))
            work = _emit(work, steps, ("negC", cj))
            _close_condition_a(work, steps)
            return "ConditionA", steps
        if m == 3:
            ones_col = next(
                (j for j in range(1, 7) if _col_neg_count(work, j) == 0), None
            )
            if ones_col is not None:
                work = _emit(work, steps, ("T",))
                _close_condition_a(work, steps)
                return "ConditionA", steps
            for rows_, action in _M3_CASES:
                perm = _perm_match(work, rows_)
                if perm is None:
                    continue
                for step in perm:
                    work = _emit(work, steps, step)
                if action == "is_p2":
                    return "P2", steps
                work = _emit(work, steps, ("negR", 6))
                work = _emit(work, steps, ("T",))
                _close_condition_a(work, steps)
                return "ConditionA", steps
            raise AssertionError("three-negative column case missed every checkpoint")
        for rows_, _action in _M4_CASES:
            perm = _perm_match(work, rows_)
            if perm is None:
                continue
            for step in perm:
                work = _emit(work, steps, step)
            work = _emit(work, steps, ("negR", 2))
            work = _emit(work, steps, ("T",))
            _close_condition_a(work, steps)
            return "ConditionA", steps
        raise AssertionError("four-negative column case missed every checkpoint")

    if any(c == 0 for c in counts):
        j = counts.index(0) + 1
        if j != 1:
            work = _emit(work, steps, ("swapC", 1, j))
        sub = submatrix_delete(work, (1,), (1,))
        sizes, sub_steps = q_block_form(sub)
        for step in sub_steps:
            shifted = (step[0], *[x + 1 for x in step[1:]])
            work = _emit(work, steps, shifted)
        if n == 6:
            assert sizes == [5], "a split block structure is singular at order 6"
            assert work == p_matrix(1)
            return "P1", steps
        k_row = 4 if len(sizes) == 1 else 2 + sizes[0]
        u, v = _neg_cols(work, k_row)
        work = _emit(work, steps, ("negC", u))
        work = _emit(work, steps, ("negC", v))
        _close_condition_a(work, steps)
        return "ConditionA", steps

    # columns carry one or two -1s each; exactly two columns carry one
    hit = next(
        (i, c)
        for i in range(2, n + 1)
        for c in _neg_cols(work, i)
        if _col_neg_count(work, c) == 1
    )
    r, c = hit
    if r != 2:
        work = _emit(work, steps, ("swapR", 2, r))
    if c != 1:
        work = _emit(work, steps, ("swapC", 1, c))
    c2 = [x for x in _neg_cols(work, 2) if x != 1][0]
    if c2 != 2:
        work = _emit(work, steps, ("swapC", 2, c2))
    i = next(
        j
        for j in range(3, n + 1)
        if _col_neg_count(work, j) == 2 and work.entry(2, j) == 1
    )
    work = _emit(work, steps, ("negR", 2))
    work = _emit(work, steps, ("swapC", 2, i))
    work = _emit(work, steps, ("T",))
    _close_condition_a(work, steps)
    return "ConditionA", steps


def _is_d5_template(b: SignMatrix) -> bool:
    return b.words[0] == 0 and b.row_signs(2) == (-1, -1, 1, 1, 1)


def classify_form(a: SignMatrix) -> FormClass:
    """Reduce a nonsingular matrix of order >= 5 to one of the named forms.

    The exact templates are recognized up front, in the same order the
    case analysis produces them; otherwise the constructive procedure
    runs and its transform sequence is replayed for verification.
    """
    if not a.is_square or a.rows < 5:
        raise ShapeError(f"classification needs a square matrix of order >= 5, got {a.rows}x{a.cols}")
    n = a.rows
    if rank(a) < n:
        # The second order-6 template has rank 5, so its orbit is the one
        # singular family the case analysis names; everything else
        # singular falls outside the procedure's hypothesis.
        if n == 6:
            seq = _equivalence_witness(a, p_matrix(2))
            if seq is not None:
                return FormClass("P2", seq)
        raise RankError("classification is defined for nonsingular matrices only")

    if a == d_matrix(n, n, n - 1):
        return FormClass("DnMinus1", ())
    if n >= 6:
        if a == d_matrix(n, n, n):
            return FormClass("DnDiag", ())
        if n == 6 and a == p_matrix(1):
            return FormClass("P1", ())
        if condition_A(a):
            return FormClass("ConditionA", ())
        tag, steps = _classify_general(a)
    else:
        if _is_d5_template(a):
            return FormClass("D5Special", ())
        tag, steps = _classify_five(a)

    form = FormClass(tag, tuple(steps))
    b = apply(a, form.seq)
    if tag == "DnMinus1":
        ok = b == d_matrix(n, n, n - 1)
    elif tag == "DnDiag":
        ok = b == d_matrix(n, n, n)
    elif tag == "P1":
        ok = b == p_matrix(1)
    elif tag == "P2":
        ok = b == p_matrix(2)
    elif tag == "ConditionA":
        ok = condition_A(b)
    else:
        ok = _is_d5_template(b)
    if not ok:
        raise AssertionError(f"replayed sequence does not reach the {tag} template")
    return form
