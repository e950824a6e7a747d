"""Bit-packed (-1,1)-matrices, special families, and standard transformations.

A matrix entry is +1 or -1; each row is stored as an integer word where bit
(j-1) set means the entry in column j equals -1.  The all-ones matrix is the
all-zero word tuple, and the number of -1 entries is a popcount.

Shape budget: 1 <= rows <= 12 and rows <= cols <= 16.  The budget keeps every
permanent within signed 64-bit range and every row word in one 16-bit lane.
Transposition is therefore only defined for square matrices (a wide matrix
would transpose to a tall one, outside the budget).

Transform steps are plain tuples:

    ("negR", i)       multiply row i by -1
    ("negC", j)       multiply column j by -1
    ("swapR", i, k)   exchange rows i and k
    ("swapC", j, k)   exchange columns j and k
    ("T",)            transpose (square only)

All indices are 1-based.  A transform sequence is any iterable of steps; the
text form used by the CLI is semicolon-separated, e.g. ``negR 3; swapC 1 4; T``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError

__all__ = [
    "SignMatrix",
    "MAX_ROWS",
    "MAX_COLS",
    "make_matrix",
    "d_matrix",
    "q_matrix",
    "p_matrix",
    "apply",
    "apply_step",
    "invert_transforms",
    "submatrix_delete",
    "submatrix_select",
    "neg_count",
    "check_index_set",
    "parse_matrix_text",
    "format_matrix_text",
    "parse_transforms",
    "format_transforms",
]

MAX_ROWS = 12
MAX_COLS = 16


@dataclass(frozen=True)
class SignMatrix:
    """Immutable (-1,1)-matrix with bit-packed rows (set bit = entry -1)."""

    rows: int
    cols: int
    words: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (1 <= self.rows <= MAX_ROWS):
            raise ShapeError(f"rows = {self.rows} outside 1..{MAX_ROWS}")
        if not (self.rows <= self.cols <= MAX_COLS):
            raise ShapeError(
                f"cols = {self.cols} outside rows..{MAX_COLS} (rows = {self.rows})"
            )
        if len(self.words) != self.rows:
            raise ShapeError(f"{len(self.words)} row words for {self.rows} rows")
        mask = (1 << self.cols) - 1
        for w in self.words:
            if w & ~mask:
                raise ValueError(f"row word {w:#x} has bits beyond column {self.cols}")

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based position (i, j), as +1 or -1."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return -1 if (self.words[i - 1] >> (j - 1)) & 1 else 1

    def row_signs(self, i: int) -> tuple[int, ...]:
        """Row i as a tuple of +1/-1 entries."""
        if not (1 <= i <= self.rows):
            raise IndexError(f"row {i} outside 1..{self.rows}")
        w = self.words[i - 1]
        return tuple(-1 if (w >> j) & 1 else 1 for j in range(self.cols))

    def to_entries(self) -> list[int]:
        """Row-major list of +1/-1 entries (inverse of make_matrix)."""
        out: list[int] = []
        for w in self.words:
            out.extend(-1 if (w >> j) & 1 else 1 for j in range(self.cols))
        return out

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


def make_matrix(entries: list[int], rows: int, cols: int) -> SignMatrix:
    """Build a matrix from a row-major list of +1/-1 entries."""
    if len(entries) != rows * cols:
        raise ShapeError(f"{len(entries)} entries for shape {rows}x{cols}")
    words = []
    for i in range(rows):
        w = 0
        for j in range(cols):
            e = entries[i * cols + j]
            if e == -1:
                w |= 1 << j
            elif e != 1:
                raise ValueError(f"entry {e!r} at ({i + 1},{j + 1}) is not +1 or -1")
        words.append(w)
    return SignMatrix(rows, cols, tuple(words))


def d_matrix(n: int, k: int, l: int) -> SignMatrix:
    """The k x n matrix with -1 exactly at (i, i) for i <= l, +1 elsewhere.

    Arguments follow the family's subscript order (columns, rows, negatives);
    the square member of order n is ``d_matrix(n, n, l)``.
    """
    if not (0 <= l <= k <= n):
        raise ShapeError(f"need 0 <= l <= k <= n, got l={l}, k={k}, n={n}")
    return SignMatrix(k, n, tuple((1 << i) if i < l else 0 for i in range(k)))


def q_matrix(m: int) -> SignMatrix:
    """Square matrix of order m with -1 on the diagonal, superdiagonal, and corner (m, 1).

    Every row and column has exactly two -1 entries; odd orders are
    nonsingular and even orders are singular.
    """
    if m < 2:
        raise ShapeError(f"q_matrix needs m >= 2, got {m}")
    words = []
    for i in range(m):
        w = 1 << i
        w |= 1 << (i + 1) if i + 1 < m else 1  # wrap: last row's second -1 at column 1
        words.append(w)
    return SignMatrix(m, m, tuple(words))


_P1_ROWS = (
    (1, 1, 1, 1, 1, 1),
    (1, -1, -1, 1, 1, 1),
    (1, 1, -1, -1, 1, 1),
    (1, 1, 1, -1, -1, 1),
    (1, 1, 1, 1, -1, -1),
    (1, -1, 1, 1, 1, -1),
)

_P2_ROWS = (
    (1, 1, 1, 1, 1, 1),
    (-1, -1, 1, 1, 1, 1),
    (-1, 1, -1, 1, 1, 1),
    (-1, 1, 1, -1, 1, 1),
    (1, 1, 1, -1, -1, 1),
    (1, 1, 1, -1, 1, -1),
)


def p_matrix(which: int) -> SignMatrix:
    """The two exceptional nonsingular 6x6 matrices with permanent 16."""
    if which == 1:
        rows = _P1_ROWS
    elif which == 2:
        rows = _P2_ROWS
    else:
        raise ValueError(f"p_matrix expects 1 or 2, got {which}")
    return make_matrix([e for row in rows for e in row], 6, 6)


def check_index_set(
    members, n: int, *, allow_empty: bool = False
) -> tuple[int, ...]:
    """Validate a strictly increasing 1-based index set drawn from {1..n}."""
    ix = tuple(members)
    if not ix:
        if allow_empty:
            return ix
        raise IndexError("empty index set not allowed here")
    prev = 0
    for v in ix:
        if not isinstance(v, int) or not (1 <= v <= n):
            raise IndexError(f"index {v!r} outside 1..{n}")
        if v <= prev:
            raise IndexError(f"index set {ix} is not strictly increasing")
        prev = v
    return ix


def neg_count(a: SignMatrix) -> int:
    """Number of -1 entries."""
    return sum(w.bit_count() for w in a.words)


def _transpose_words(a: SignMatrix) -> tuple[int, ...]:
    return tuple(
        sum(((a.words[i] >> j) & 1) << i for i in range(a.rows))
        for j in range(a.cols)
    )


def apply_step(a: SignMatrix, step: tuple) -> SignMatrix:
    """Apply one transform step; raises IndexError on out-of-range indices."""
    kind = step[0]
    if kind == "negR":
        (i,) = step[1:]
        if not (1 <= i <= a.rows):
            raise IndexError(f"negR {i} outside 1..{a.rows}")
        mask = (1 << a.cols) - 1
        words = list(a.words)
        words[i - 1] ^= mask
        return SignMatrix(a.rows, a.cols, tuple(words))
    if kind == "negC":
        (j,) = step[1:]
        if not (1 <= j <= a.cols):
            raise IndexError(f"negC {j} outside 1..{a.cols}")
        bit = 1 << (j - 1)
        return SignMatrix(a.rows, a.cols, tuple(w ^ bit for w in a.words))
    if kind == "swapR":
        i, k = step[1:]
        if not (1 <= i <= a.rows and 1 <= k <= a.rows):
            raise IndexError(f"swapR {i} {k} outside 1..{a.rows}")
        words = list(a.words)
        words[i - 1], words[k - 1] = words[k - 1], words[i - 1]
        return SignMatrix(a.rows, a.cols, tuple(words))
    if kind == "swapC":
        j, k = step[1:]
        if not (1 <= j <= a.cols and 1 <= k <= a.cols):
            raise IndexError(f"swapC {j} {k} outside 1..{a.cols}")
        bj, bk = 1 << (j - 1), 1 << (k - 1)
        words = []
        for w in a.words:
            vj, vk = (w >> (j - 1)) & 1, (w >> (k - 1)) & 1
            if vj != vk:
                w ^= bj | bk
            words.append(w)
        return SignMatrix(a.rows, a.cols, tuple(words))
    if kind == "T":
        if not a.is_square:
            raise ShapeError(
                f"transpose of {a.rows}x{a.cols} leaves the rows <= cols budget"
            )
        return SignMatrix(a.cols, a.rows, _transpose_words(a))
    raise ValueError(f"unknown transform step {step!r}")


def apply(a: SignMatrix, steps) -> SignMatrix:
    """Apply a transform sequence in order.  Preserves |permanent| and rank."""
    for step in steps:
        a = apply_step(a, step)
    return a


def invert_transforms(steps) -> tuple[tuple, ...]:
    """Inverse sequence: every step is an involution, so reverse the order."""
    return tuple(reversed(tuple(steps)))


def submatrix_delete(a: SignMatrix, alpha, beta) -> SignMatrix:
    """Submatrix after deleting rows alpha and columns beta."""
    ra = check_index_set(alpha, a.rows, allow_empty=True)
    cb = check_index_set(beta, a.cols, allow_empty=True)
    keep_r = [i for i in range(1, a.rows + 1) if i not in set(ra)]
    keep_c = [j for j in range(1, a.cols + 1) if j not in set(cb)]
    return _gather(a, keep_r, keep_c)


def submatrix_select(a: SignMatrix, alpha, beta) -> SignMatrix:
    """Submatrix on the intersection of rows alpha and columns beta."""
    ra = check_index_set(alpha, a.rows)
    cb = check_index_set(beta, a.cols)
    return _gather(a, list(ra), list(cb))


def _gather(a: SignMatrix, rows: list[int], cols: list[int]) -> SignMatrix:
    if not rows or not cols:
        raise ShapeError("submatrix must keep at least one row and one column")
    words = []
    for i in rows:
        w = a.words[i - 1]
        words.append(sum(((w >> (j - 1)) & 1) << p for p, j in enumerate(cols)))
    return SignMatrix(len(rows), len(cols), tuple(words))


# --- text format -----------------------------------------------------------
#
# First line "k n"; then k lines of n whitespace-separated tokens, each "+1",
# "1", or "-1".  Blank lines are ignored; '#' starts a comment line.


def parse_matrix_text(text: str) -> SignMatrix:
    lines = [
        ln for ln in (raw.strip() for raw in text.splitlines())
        if ln and not ln.startswith("#")
    ]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(head[0]), int(head[1])
    except ValueError:
        raise ValueError(f"header must be 'rows cols', got {lines[0]!r}") from None
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} matrix lines, found {len(lines) - 1}")
    entries: list[int] = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != cols:
            raise ValueError(f"expected {cols} entries per line, got {len(toks)}: {ln!r}")
        for t in toks:
            if t in ("+1", "1"):
                entries.append(1)
            elif t == "-1":
                entries.append(-1)
            else:
                raise ValueError(f"bad entry token {t!r}")
    return make_matrix(entries, rows, cols)


def format_matrix_text(a: SignMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    for i in range(1, a.rows + 1):
        lines.append(" ".join(f"{e:2d}" for e in a.row_signs(i)))
    return "\n".join(lines) + "\n"


# --- transform text form ---------------------------------------------------

_STEP_ARITY = {"negR": 1, "negC": 1, "swapR": 2, "swapC": 2, "T": 0}


def format_transforms(steps) -> str:
    parts = []
    for step in steps:
        kind = step[0]
        if kind not in _STEP_ARITY or len(step) - 1 != _STEP_ARITY[kind]:
            raise ValueError(f"malformed transform step {step!r}")
        parts.append(" ".join([kind, *map(str, step[1:])]))
    return "; ".join(parts)


def parse_transforms(text: str) -> tuple[tuple, ...]:
    steps: list[tuple] = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        toks = chunk.split()
        kind = toks[0]
        if kind not in _STEP_ARITY:
            raise ValueError(f"unknown transform {kind!r}")
        if len(toks) - 1 != _STEP_ARITY[kind]:
            raise ValueError(f"{kind} takes {_STEP_ARITY[kind]} indices: {chunk!r}")
        try:
            args = tuple(int(t) for t in toks[1:])
        except ValueError:
            raise ValueError(f"non-integer index in {chunk!r}") from None
        steps.append((kind, *args))
    return tuple(steps)
