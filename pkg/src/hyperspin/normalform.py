"""Canonical forms and the traced reduction to an orbit representative.

Orbit representatives.  For m >= 1 the alternating block of width 2m-1
(all-ones top row, bottom row 1,0,1,...,0,1) padded right with zero columns
is the canonical representative of the class-m orbit; the all-zero matrix
represents class 0.  The class index runs 0..ceil(g/2).

Reduction.  Every spin matrix can be driven onto a representative by the
five guarded single-generator moves:

    flip-bottom(i)   s_{2i},    needs c(alpha_i) = 0;  flips c(beta_i)
    flip-top-first   s_1,       needs c(beta_1) = 0;   flips c(alpha_1)
    swap-tops(j)     s_{2j+1},  needs c(beta_j) = c(beta_{j+1});
                                exchanges unequal c(alpha_j), c(alpha_{j+1})
    cancel-tops(j)   s_{2j+1},  same guard; flips equal c(alpha_j), c(alpha_{j+1})
    flip-top-last    s_{2g+1},  needs c(beta_g) = 0;   flips c(alpha_g)

The driver below normalizes (0,1) columns away, then repeatedly cancels the
rightmost adjacent pair of equal nonzero columns — two (1,1) columns are
first made adjacent by filling the bottom row of the gap and sliding the
right column's top bit leftwards — kills leftover (1,0) columns at the
board edges, and finally packs the survivors (which alternate (1,1), (1,0),
..., (1,1)) into the leading columns.  The class index is the number of
surviving (1,1) columns.  Each step asserts its intended effect on the
matrix and the driver aborts with ReductionInvariantError on any deviation.

Trace serialization (one step per line): ``<moveName> <word> -> <matrix>``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import Word, _act_letter, apply_word, format_word
from .gf2 import SpinMatrix

# Column patterns of a 2 x g matrix, named by which bits are set.
_ZERO = 0
_FULL = 3  # (1,1)
_TOP = 1  # (1,0)
_BOT = 2  # (0,1)


class ReductionInvariantError(RuntimeError):
    """A reduction step did not have its intended effect."""


def alternating_block(i: int) -> SpinMatrix:
    """The 2 x (2i-1) block: all-ones top row, bottom row 1,0,1,...,0,1.

    >>> str(alternating_block(2))
    '111/101'
    """
    if i < 1:
        raise ValueError(f"block index must be >= 1, got {i}")
    width = 2 * i - 1
    top = (1 << width) - 1
    bottom = sum(1 << k for k in range(0, width, 2))
    return SpinMatrix(width, top, bottom)


def _max_class(g: int) -> int:
    return (g + 1) // 2


def canonical_form(g: int, m: int) -> SpinMatrix:
    """The class-m orbit representative: alternating block padded with zeros.

    >>> str(canonical_form(5, 2))
    '11100/10100'
    """
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if not 0 <= m <= _max_class(g):
        raise ValueError(f"class index {m} out of range 0..{_max_class(g)} for genus {g}")
    if m == 0:
        return SpinMatrix.zero(g)
    block = alternating_block(m)
    return SpinMatrix(g, block.top, block.bottom)


def classify_canonical(matrix: SpinMatrix) -> int | None:
    """The class index if the matrix is exactly a representative, else None."""
    for m in range(_max_class(matrix.g) + 1):
        if matrix == canonical_form(matrix.g, m):
            return m
    return None


def _concat(blocks: list[tuple[int, int, int]], g: int) -> SpinMatrix:
    """Join (width, top, bottom) blocks left to right into one matrix."""
    top = bottom = 0
    shift = 0
    for width, t, b in blocks:
        top |= t << shift
        bottom |= b << shift
        shift += width
    if shift != g:
        raise AssertionError(f"blocks of total width {shift} for genus {g}")
    return SpinMatrix(g, top, bottom)


def _block(i: int) -> tuple[int, int, int]:
    b = alternating_block(i)
    return b.g, b.top, b.bottom


# Small glue blocks used by the stabilizer-adapted forms, as (width, top, bottom).
_GAP = (1, 0, 0)  # (0,0) column
_SEESAW = (3, 0b101, 0b010)  # columns (1,0), (0,1), (1,0)
_TWIN_TOPS = (2, 0b11, 0b00)  # columns (1,0), (1,0)
_CROSS = (2, 0b01, 0b10)  # columns (1,0), (0,1)
_FULL_COL = (1, 1, 1)  # (1,1) column
_TOP_COL = (1, 1, 0)  # (1,0) column


def stabilizer_form(g: int, m: int) -> SpinMatrix:
    """A representative of class m whose stabilizer is visible column by column.

    These forms are left-right symmetric up to the middle glue; every
    generator except s_{g+1+2m} fixes them, and the order-reversing
    involution additionally fixes the m = 0 form.  The shape depends on
    g mod 4.

    >>> str(stabilizer_form(3, 0))
    '101/101'
    >>> str(stabilizer_form(4, 0))
    '1111/1001'
    >>> str(stabilizer_form(5, 0))
    '11011/10101'
    """
    if g < 3:
        raise ValueError(f"genus must be >= 3, got {g}")
    if not 0 <= m <= _max_class(g):
        raise ValueError(f"class index {m} out of range 0..{_max_class(g)} for genus {g}")
    k, r = divmod(g, 4)
    if r == 3:
        k += 1  # g = 4k - 1
        if m == 2 * k:
            return _concat([_block(2 * k)], g)
        if m == 2 * k - 1:
            return _concat([_block(2 * k - 1), _CROSS], g)
        i = m // 2
        if m % 2 == 0:
            return _concat([_block(k + i), _GAP, _block(k - i)], g)
        return _concat([_block(k + i), _SEESAW, _block(k - i - 1)], g)
    if r == 1:  # g = 4k + 1
        if m == 2 * k + 1:
            return _concat([_block(2 * k + 1)], g)
        if m == 2 * k:
            return _concat([_block(2 * k), _CROSS], g)
        i = m // 2
        if m % 2 == 0:
            return _concat([_block(k + i), _SEESAW, _block(k - i)], g)
        return _concat([_block(k + i + 1), _GAP, _block(k - i)], g)
    if r == 0:  # g = 4k
        if m == 2 * k:
            return _concat([_block(2 * k), _TOP_COL], g)
        i = m // 2
        if m % 2 == 0:
            return _concat([_block(k + i), _TWIN_TOPS, _block(k - i)], g)
        return _concat([_block(k + i + 1), _block(k - i)], g)
    # g = 4k + 2
    if m == 2 * k + 1:
        return _concat([_block(2 * k + 1), _TOP_COL], g)
    i = m // 2
    if m % 2 == 0:
        return _concat([_block(k + i + 1), _block(k - i + 1)], g)
    return _concat([_block(k + i + 1), _TWIN_TOPS, _block(k - i)], g)


def fixed_point_matrix(g: int) -> SpinMatrix | None:
    """The unique matrix fixed by every generator, or None for even genus.

    For odd g the odd columns are (1,1) and the even columns (1,0), i.e. the
    full-width alternating block; for even g no matrix is fixed by all
    generators (the edge and pair constraints on the bottom row conflict).
    """
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    if g % 2 == 0:
        return None
    return canonical_form(g, (g + 1) // 2)


# ---------------------------------------------------------------------------
# Guarded single-generator moves


FLIP_BOTTOM = "flip-bottom"
FLIP_TOP_FIRST = "flip-top-first"
SWAP_TOPS = "swap-tops"
CANCEL_TOPS = "cancel-tops"
FLIP_TOP_LAST = "flip-top-last"


@dataclass(frozen=True)
class Move:
    """One guarded move; index names the column (flip-bottom) or the left
    column of the pair (swap-tops / cancel-tops)."""

    kind: str
    index: int = 0


def move_word(matrix: SpinMatrix, move: Move) -> Word:
    """The single-generator word realizing a guarded move, or raise.

    The guard is checked against the matrix; a failing guard means the
    generator would not have the advertised effect, so the move is rejected.

    >>> move_word(SpinMatrix.from_text("010/110"), Move(SWAP_TOPS, 1))
    (3,)
    """
    g = matrix.g
    kind, i = move.kind, move.index
    if kind == FLIP_BOTTOM:
        if not 1 <= i <= g:
            raise ValueError(f"column {i} out of range for genus {g}")
        if matrix.column(i)[0] != 0:
            raise ValueError(f"flip-bottom({i}) needs c(alpha_{i}) = 0")
        return (2 * i,)
    if kind == FLIP_TOP_FIRST:
        if matrix.column(1)[1] != 0:
            raise ValueError("flip-top-first needs c(beta_1) = 0")
        return (1,)
    if kind == FLIP_TOP_LAST:
        if matrix.column(g)[1] != 0:
            raise ValueError(f"flip-top-last needs c(beta_{g}) = 0")
        return (2 * g + 1,)
    if kind in (SWAP_TOPS, CANCEL_TOPS):
        if not 1 <= i <= g - 1:
            raise ValueError(f"column pair {i} out of range for genus {g}")
        (tj, bj), (tj1, bj1) = matrix.column(i), matrix.column(i + 1)
        if bj != bj1:
            raise ValueError(f"{kind}({i}) needs c(beta_{i}) = c(beta_{i + 1})")
        if kind == SWAP_TOPS and tj == tj1:
            raise ValueError(f"swap-tops({i}) needs unequal top entries")
        if kind == CANCEL_TOPS and tj != tj1:
            raise ValueError(f"cancel-tops({i}) needs equal top entries")
        return (2 * i + 1,)
    raise ValueError(f"unknown move kind {kind!r}")


# ---------------------------------------------------------------------------
# Traced reduction


@dataclass(frozen=True)
class ReductionStep:
    move: str
    word: Word
    after: SpinMatrix

    def to_text(self) -> str:
        return f"{self.move} {format_word(self.word)} -> {self.after}"


@dataclass(frozen=True)
class ReductionTrace:
    start: SpinMatrix
    steps: tuple[ReductionStep, ...]
    class_index: int

    @property
    def total_word(self) -> Word:
        return tuple(i for step in self.steps for i in step.word)

    @property
    def result(self) -> SpinMatrix:
        return self.steps[-1].after if self.steps else self.start

    def to_text(self) -> str:
        return "\n".join(step.to_text() for step in self.steps)


def _column_kinds(g: int, top: int, bottom: int) -> list[tuple[int, int]]:
    """Nonzero columns as (position, pattern), left to right."""
    out = []
    for k in range(1, g + 1):
        pattern = ((top >> (k - 1)) & 1) | (((bottom >> (k - 1)) & 1) << 1)
        if pattern:
            out.append((k, pattern))
    return out


class _Driver:
    """Mutable reduction state; emits verified steps."""

    def __init__(self, matrix: SpinMatrix, record: bool):
        self.g = matrix.g
        self.top = matrix.top
        self.bottom = matrix.bottom
        self.steps: list[ReductionStep] = [] if record else None  # type: ignore[assignment]

    def emit(self, name: str, word: Word) -> None:
        for i in word:
            self.top, self.bottom = _act_letter(self.g, self.top, self.bottom, i)
        if self.steps is not None:
            self.steps.append(
                ReductionStep(name, word, SpinMatrix(self.g, self.top, self.bottom))
            )

    def check(self, condition: bool, what: str) -> None:
        if not condition:
            raise ReductionInvariantError(
                f"reduction step did not {what} "
                f"(state {SpinMatrix(self.g, self.top, self.bottom)})"
            )

    def untouched_outside(self, lo: int, hi: int, top: int, bottom: int) -> bool:
        """Rows agree with (top, bottom) outside columns lo..hi."""
        window = ((1 << hi) - 1) ^ ((1 << (lo - 1)) - 1)
        keep = ~window
        return (self.top & keep) == (top & keep) and (self.bottom & keep) == (bottom & keep)

    def pattern(self, k: int) -> int:
        return ((self.top >> (k - 1)) & 1) | (((self.bottom >> (k - 1)) & 1) << 1)

    def window_is(self, lo: int, hi: int, value: int) -> bool:
        return all(self.pattern(k) == value for k in range(lo, hi + 1))

    # -- verified composite moves ------------------------------------------

    def clear_bottom_columns(self, columns: list[int]) -> None:
        """Zero the bottom bit of (0,1) columns; tops are untouched."""
        old_top = self.top
        self.emit("clear-bottom-columns", tuple(2 * k for k in columns))
        self.check(self.top == old_top, "leave the top row unchanged")
        self.check(
            all(self.pattern(k) == _ZERO for k in columns),
            "clear the named bottom entries",
        )

    def cancel_full_pair(self, s: int) -> None:
        """Turn adjacent (1,1) columns at s, s+1 into (0,1) columns."""
        before = (self.top, self.bottom)
        self.emit("cancel-full-pair", (2 * s + 1,))
        self.check(
            self.pattern(s) == _BOT and self.pattern(s + 1) == _BOT,
            f"cancel the top entries of columns {s},{s + 1}",
        )
        self.check(self.untouched_outside(s, s + 1, *before), "stay inside the pair")

    def align_full_pair(self, s: int, i: int) -> None:
        """Slide the (1,1) column at i next to the one at s (gap all zero).

        Fills the bottom row of columns s+1..i-1, then moves the top bit of
        column i left to column s+1; afterwards columns s, s+1 are (1,1) and
        s+2..i are (0,1).
        """
        before = (self.top, self.bottom)
        fill = [2 * k for k in range(s + 1, i)]
        slide = [2 * j + 1 for j in range(i - 1, s, -1)]
        self.emit("align-full-pair", tuple(fill + slide))
        self.check(
            self.pattern(s) == _FULL and self.pattern(s + 1) == _FULL,
            f"bring the far column next to column {s}",
        )
        self.check(self.window_is(s + 2, i, _BOT), "leave only bottom bits behind")
        self.check(self.untouched_outside(s, i, *before), "stay inside the gap")

    def cancel_top_pair(self, p: int, q: int) -> None:
        """Annihilate (1,0) columns at p < q across an all-zero gap."""
        before = (self.top, self.bottom)
        self.emit("cancel-top-pair", tuple(2 * j + 1 for j in range(q - 1, p - 1, -1)))
        self.check(self.window_is(p, q, _ZERO), f"annihilate the columns {p},{q}")
        self.check(self.untouched_outside(p, q, *before), "stay inside the gap")

    def drop_top_left(self, p: int) -> None:
        """Slide a leading (1,0) column to column 1 and clear it there."""
        before = (self.top, self.bottom)
        word = [2 * j + 1 for j in range(p - 1, 0, -1)] + [1]
        self.emit("drop-top-left", tuple(word))
        self.check(self.window_is(1, p, _ZERO), "clear the leading column")
        self.check(self.untouched_outside(1, p, *before), "stay left of the column")

    def drop_top_right(self, p: int) -> None:
        """Slide a trailing (1,0) column to column g and clear it there."""
        before = (self.top, self.bottom)
        word = [2 * j + 1 for j in range(p, self.g)] + [2 * self.g + 1]
        self.emit("drop-top-right", tuple(word))
        self.check(self.window_is(p, self.g, _ZERO), "clear the trailing column")
        self.check(self.untouched_outside(p, self.g, *before), "stay right of the column")

    def pack_full_column(self, s: int, t: int) -> None:
        """Move a (1,1) column left from s to t through zero columns."""
        before = (self.top, self.bottom)
        fill = [2 * k for k in range(t, s)]
        slide = [2 * j + 1 for j in range(s - 1, t - 1, -1)]
        clear = [2 * k for k in range(t + 1, s + 1)]
        self.emit("pack-full-column", tuple(fill + slide + clear))
        self.check(self.pattern(t) == _FULL, f"land the column on {t}")
        self.check(self.window_is(t + 1, s, _ZERO), "vacate the crossed columns")
        self.check(self.untouched_outside(t, s, *before), "stay inside the gap")

    def pack_top_column(self, s: int, t: int) -> None:
        """Move a (1,0) column left from s to t through zero columns."""
        before = (self.top, self.bottom)
        self.emit("pack-top-column", tuple(2 * j + 1 for j in range(s - 1, t - 1, -1)))
        self.check(self.pattern(t) == _TOP, f"land the column on {t}")
        self.check(self.window_is(t + 1, s, _ZERO), "vacate the crossed columns")
        self.check(self.untouched_outside(t, s, *before), "stay inside the gap")


def _rightmost_equal_pair(
    columns: list[tuple[int, int]],
) -> tuple[int, int, int] | None:
    """Rightmost adjacent equal pair among nonzero columns: (pos, pos', kind)."""
    for idx in range(len(columns) - 2, -1, -1):
        (p, kind), (q, kind2) = columns[idx], columns[idx + 1]
        if kind == kind2:
            return p, q, kind
    return None


def reduce_to_canonical(matrix: SpinMatrix, record: bool = True) -> ReductionTrace:
    """Drive a spin matrix onto its orbit representative, recording the steps.

    Replaying the returned word on the input yields canonical_form(g, m)
    where m is the reported class index.  Already-canonical inputs return
    an empty trace.

    >>> trace = reduce_to_canonical(SpinMatrix.from_text("11111/10111"))
    >>> trace.class_index, trace.total_word
    (2, (9, 8, 10))
    """
    g = matrix.g
    if g < 3:
        raise ValueError(f"reduction needs genus >= 3, got {g}")

    ready = classify_canonical(matrix)
    if ready is not None:
        return ReductionTrace(matrix, (), ready)

    drv = _Driver(matrix, record)

    bottoms = [k for k, kind in _column_kinds(g, drv.top, drv.bottom) if kind == _BOT]
    if bottoms:
        drv.clear_bottom_columns(bottoms)

    while True:
        columns = _column_kinds(g, drv.top, drv.bottom)
        count = len(columns)
        pair = _rightmost_equal_pair(columns)
        if pair is not None:
            s, i, kind = pair
            if kind == _FULL:
                if i > s + 1:
                    drv.align_full_pair(s, i)
                drv.cancel_full_pair(s)
                drv.clear_bottom_columns(list(range(s, i + 1)))
            else:
                drv.cancel_top_pair(s, i)
        elif columns and columns[0][1] == _TOP:
            drv.drop_top_left(columns[0][0])
        elif columns and columns[-1][1] == _TOP:
            drv.drop_top_right(columns[-1][0])
        else:
            break
        remaining = len(_column_kinds(g, drv.top, drv.bottom))
        if remaining >= count:
            raise ReductionInvariantError(
                f"no progress: {count} -> {remaining} nonzero columns"
            )

    survivors = _column_kinds(g, drv.top, drv.bottom)
    expected = [_FULL if idx % 2 == 0 else _TOP for idx in range(len(survivors))]
    if [kind for _, kind in survivors] != expected or (
        survivors and survivors[-1][1] != _FULL
    ):
        raise ReductionInvariantError(f"survivors not alternating: {survivors}")

    for target, (pos, kind) in enumerate(survivors, start=1):
        if pos == target:
            continue
        if kind == _FULL:
            drv.pack_full_column(pos, target)
        else:
            drv.pack_top_column(pos, target)

    m = (len(survivors) + 1) // 2
    if m > _max_class(g):
        raise ReductionInvariantError(f"class index {m} exceeds bound for genus {g}")
    final = SpinMatrix(g, drv.top, drv.bottom)
    if final != canonical_form(g, m):
        raise ReductionInvariantError(f"landed on {final}, not the class-{m} form")
    steps = tuple(drv.steps) if record else ()
    if record and apply_word(matrix, tuple(i for s in steps for i in s.word)) != final:
        raise ReductionInvariantError("trace word does not replay to the final matrix")
    return ReductionTrace(matrix, steps, m)


def class_index(matrix: SpinMatrix) -> int:
    """The orbit class index of a matrix (reduction without trace records)."""
    return reduce_to_canonical(matrix, record=False).class_index
