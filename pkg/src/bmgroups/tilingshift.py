"""The two-dimensional tiling subshift of a BM group.

The alphabet is the relation set R: tile ``(a, b, b2, a2)`` is a square with
bottom edge ``a``, right edge ``b``, left edge ``b2`` and top edge ``a2``.
``M1[s, r] = 1`` when tile ``s`` may sit immediately right of ``r`` and
``M2[s, r] = 1`` when ``s`` may sit immediately above ``r``.

Words are rectangles of tile indices, ``cells[i][j]`` at horizontal position
``i`` and vertical position ``j``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from .vhdatum import Tuple4, VHDatum

SIDES = ("right", "left", "top", "bottom")


def rotate_tile(r: Sequence[int]) -> Tuple4:
    """Rotate a square through pi: ``(a, b, b2, a2) -> (a2^-1, b2^-1, b^-1, a^-1)``."""
    a, b, b2, a2 = r
    return (-a2, -b2, -b, -a)


@dataclass(frozen=True, eq=False)
class TransitionMatrices:
    """Tile alphabet plus horizontal and vertical transition matrices."""

    tiles: tuple
    M1: np.ndarray
    M2: np.ndarray
    m: int
    n: int

    @cached_property
    def index(self) -> dict:
        return {t: k for k, t in enumerate(self.tiles)}

    @property
    def size(self) -> int:
        return len(self.tiles)

    @cached_property
    def rotation(self) -> np.ndarray:
        """Permutation matrix P of the pi-rotation, ``P e_{p(r)} = e_r``."""
        k = self.size
        P = np.zeros((k, k), dtype=np.int64)
        for r, t in enumerate(self.tiles):
            P[r, self.index[rotate_tile(t)]] = 1
        return P

    def matrix(self, j: int) -> np.ndarray:
        return self.M1 if j == 1 else self.M2

    @cached_property
    def _succ(self) -> dict:
        # _succ[j][r] = tiles s with M_j[s, r] = 1; _pred[j][s] = tiles r with M_j[s, r] = 1
        out = {}
        for j in (1, 2):
            M = self.matrix(j)
            out[j] = [frozenset(np.flatnonzero(M[:, r]).tolist()) for r in range(self.size)]
        return out

    @cached_property
    def _pred(self) -> dict:
        out = {}
        for j in (1, 2):
            M = self.matrix(j)
            out[j] = [frozenset(np.flatnonzero(M[s, :]).tolist()) for s in range(self.size)]
        return out

    def successors(self, j: int, r: int) -> frozenset:
        return self._succ[j][r]

    def predecessors(self, j: int, s: int) -> frozenset:
        return self._pred[j][s]

    def block_matrix(self, transpose: bool = False) -> list[list[int]]:
        """The ``mn x 2mn`` integer matrix ``(I - M1, I - M2)``, optionally with transposed blocks."""
        k = self.size
        eye = np.eye(k, dtype=np.int64)
        m1, m2 = (self.M1.T, self.M2.T) if transpose else (self.M1, self.M2)
        return np.hstack([eye - m1, eye - m2]).tolist()

    def to_text(self, j: int) -> str:
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self.matrix(j)) + "\n"

    def index_pairs(self, j: int) -> list[tuple[int, int]]:
        """Pairs ``(s, r)`` with ``M_j[s, r] = 1``."""
        rows, cols = np.nonzero(self.matrix(j))
        return list(zip(rows.tolist(), cols.tolist()))


def build_transition_matrices(datum: VHDatum) -> TransitionMatrices:
    tiles = datum.relations
    k = len(tiles)
    M1 = np.zeros((k, k), dtype=np.int64)
    M2 = np.zeros((k, k), dtype=np.int64)
    by_left: dict = {}
    by_bottom: dict = {}
    for s, t in enumerate(tiles):
        by_left.setdefault(t[2], []).append(s)
        by_bottom.setdefault(t[0], []).append(s)
    for r, (a, b, b2, a2) in enumerate(tiles):
        # s right of r: shares r's right edge, bottom edges do not backtrack
        for s in by_left.get(b, ()):
            if tiles[s][0] != -a:
                M1[s, r] = 1
        # s above r: shares r's top edge, left edges do not backtrack
        for s in by_bottom.get(a2, ()):
            if tiles[s][2] != -b2:
                M2[s, r] = 1
    return TransitionMatrices(tiles, M1, M2, datum.m, datum.n)


# ---------------------------------------------------------------- words


@dataclass(frozen=True)
class Word:
    """Tile indices on the rectangle ``[0, m1] x [0, m2]``."""

    cells: tuple  # cells[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.cells) - 1, len(self.cells[0]) - 1)

    def __getitem__(self, pos: tuple[int, int]) -> int:
        return self.cells[pos[0]][pos[1]]

    def origin(self) -> int:
        return self.cells[0][0]

    def terminal(self) -> int:
        return self.cells[-1][-1]

    @classmethod
    def single(cls, tile: int) -> "Word":
        return cls(((tile,),))


def is_word(TM: TransitionMatrices, w: Word) -> bool:
    m1, m2 = w.shape
    for i in range(m1 + 1):
        for j in range(m2 + 1):
            if i < m1 and not TM.M1[w[i + 1, j], w[i, j]]:
                return False
            if j < m2 and not TM.M2[w[i, j + 1], w[i, j]]:
                return False
    return True


def is_periodic(w: Word, p: tuple[int, int]) -> bool:
    """True unless some ``l`` has ``w(l)`` and ``w(l+p)`` both defined and different."""
    m1, m2 = w.shape
    for i in range(m1 + 1):
        for j in range(m2 + 1):
            x, y = i + p[0], j + p[1]
            if 0 <= x <= m1 and 0 <= y <= m2 and w[i, j] != w[x, y]:
                return False
    return True


def _fill(TM: TransitionMatrices, grid: dict, pos: tuple[int, int]) -> int:
    """The unique tile at ``pos`` compatible with its already placed neighbours."""
    i, j = pos
    cands = None
    for nb, rel in (
        ((i - 1, j), lambda r: TM.successors(1, r)),
        ((i + 1, j), lambda s: TM.predecessors(1, s)),
        ((i, j - 1), lambda r: TM.successors(2, r)),
        ((i, j + 1), lambda s: TM.predecessors(2, s)),
    ):
        if nb in grid:
            allowed = rel(grid[nb])
            cands = allowed if cands is None else cands & allowed
    if cands is None or len(cands) != 1:
        count = "no" if cands is None else len(cands)
        raise RuntimeError(f"{count} completions at {pos}; transition matrices violate (H1)")
    (t,) = cands
    return t


def _grid(w: Word) -> dict:
    m1, m2 = w.shape
    return {(i, j): w[i, j] for i in range(m1 + 1) for j in range(m2 + 1)}


def _to_word(grid: dict) -> Word:
    xs = [p[0] for p in grid]
    ys = [p[1] for p in grid]
    x0, y0 = min(xs), min(ys)
    return Word(
        tuple(
            tuple(grid[(i, j)] for j in range(y0, max(ys) + 1)) for i in range(x0, max(xs) + 1)
        )
    )


def extend_word(TM: TransitionMatrices, w: Word, side: str, offset: int, tile: int) -> Word:
    """Grow ``w`` by one row or column on ``side``.

    ``tile`` is placed next to the boundary cell at position ``offset`` along
    that side; the rest of the new row or column is forced.
    """
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    m1, m2 = w.shape
    grid = _grid(w)
    if side in ("right", "left"):
        if not 0 <= offset <= m2:
            raise ValueError(f"offset {offset} outside column of height {m2 + 1}")
        x = m1 + 1 if side == "right" else -1
        line = [(x, j) for j in range(m2 + 1)]
        seed = (x, offset)
    else:
        if not 0 <= offset <= m1:
            raise ValueError(f"offset {offset} outside row of width {m1 + 1}")
        y = m2 + 1 if side == "top" else -1
        line = [(i, y) for i in range(m1 + 1)]
        seed = (offset, y)

    neighbour = {
        "right": (m1, offset),
        "left": (0, offset),
        "top": (offset, m2),
        "bottom": (offset, 0),
    }[side]
    nb_tile = grid[neighbour]
    ok = {
        "right": TM.M1[tile, nb_tile],
        "left": TM.M1[nb_tile, tile],
        "top": TM.M2[tile, nb_tile],
        "bottom": TM.M2[nb_tile, tile],
    }[side]
    if not ok:
        raise ValueError(f"tile {tile} cannot sit on the {side} of tile {nb_tile}")

    grid[seed] = tile
    k = line.index(seed)
    for pos in reversed(line[:k]):
        grid[pos] = _fill(TM, grid, pos)
    for pos in line[k + 1 :]:
        grid[pos] = _fill(TM, grid, pos)
    return _to_word(grid)


def h3_witness(TM: TransitionMatrices, p: tuple[int, int], start: int = 0) -> Word:
    """A word that is not ``p``-periodic.

    Starting from one tile at ``l``, the rectangle spanned by ``l`` and the
    head of a shortest lattice path towards ``l + p`` grows one row or
    column per step.  On the last step the seed is the tile at ``l + p`` and
    is chosen to differ from the tile at ``l``.
    """
    p1, p2 = p
    if p1 == 0 and p2 == 0:
        raise ValueError("period must be nonzero")
    steps = [("right" if p1 > 0 else "left")] * abs(p1) + [("top" if p2 > 0 else "bottom")] * abs(p2)
    w = Word.single(start)
    hx, hy = 0, 0  # head, relative to the current rectangle's lower-left corner
    for k, side in enumerate(steps):
        m1, m2 = w.shape
        head_tile = w[hx, hy]
        if side == "right":
            cands, offset = TM.successors(1, head_tile), hy
        elif side == "left":
            cands, offset = TM.predecessors(1, head_tile), hy
        elif side == "top":
            cands, offset = TM.successors(2, head_tile), hx
        else:
            cands, offset = TM.predecessors(2, head_tile), hx
        cands = sorted(cands)
        if k == len(steps) - 1:
            cands = [c for c in cands if c != start]
        w = extend_word(TM, w, side, offset, cands[0])
        if side == "right":
            hx = m1 + 1
        elif side == "top":
            hy = m2 + 1
        # growing left or down shifts coordinates so the head stays at index 0
    return w


def count_words(TM: TransitionMatrices, shape: tuple[int, int]) -> int:
    """Number of words of the given shape, ``1^T M2^m2 M1^m1 1``.

    A word is fixed by its bottom row together with its right-hand column.
    """
    m1, m2 = shape
    v = np.ones(TM.size, dtype=object)
    M1 = TM.M1.astype(object)
    M2 = TM.M2.astype(object)
    for _ in range(m2):
        v = v.dot(M2)
    for _ in range(m1):
        v = v.dot(M1)
    return int(sum(v))


# ---------------------------------------------------------------- conditions


@dataclass
class HReport:
    h0: bool
    h1a: bool
    h1b: bool
    h2: bool
    h3: bool
    h3_checked_periods: list = field(default_factory=list)  # (p, Word) pairs
    row_sums: dict = field(default_factory=dict)
    col_sums: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.h0 and self.h1a and self.h1b and self.h2 and self.h3

    def summary(self) -> dict:
        return {
            "h0": self.h0,
            "h1a": self.h1a,
            "h1b": self.h1b,
            "h2": self.h2,
            "h3": self.h3,
            "h3_periods_checked": len(self.h3_checked_periods),
        }


def strongly_connected(TM: TransitionMatrices) -> bool:
    """Irreducibility of the graph with an edge ``r -> s`` whenever some ``M_i[s, r] = 1``."""
    adj = ((TM.M1 + TM.M2) > 0).astype(np.int64)
    k = TM.size
    for graph in (adj, adj.T):
        seen = np.zeros(k, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            r = queue.popleft()
            for s in np.flatnonzero(graph[:, r]):
                if not seen[s]:
                    seen[s] = True
                    queue.append(int(s))
        if not seen.all():
            return False
    return True


def check_h_conditions(TM: TransitionMatrices, period_bound: int = 3) -> HReport:
    M1, M2 = TM.M1, TM.M2
    zero_one = lambda M: bool(np.isin(M, (0, 1)).all())  # noqa: E731
    h0 = zero_one(M1) and zero_one(M2) and bool(M1.any()) and bool(M2.any())
    P12, P21 = M1 @ M2, M2 @ M1
    h1a = bool((P12 == P21).all())
    h1b = zero_one(P12)
    h2 = strongly_connected(TM) if h0 else False

    witnesses = []
    h3 = h0 and h1a and h1b
    if h3:
        for p in product(range(-period_bound, period_bound + 1), repeat=2):
            if p == (0, 0):
                continue
            try:
                w = h3_witness(TM, p)
            except (RuntimeError, ValueError, IndexError):
                h3 = False
                continue
            if is_word(TM, w) and not is_periodic(w, p):
                witnesses.append((p, w))
            else:
                h3 = False
    return HReport(
        h0=h0,
        h1a=h1a,
        h1b=h1b,
        h2=h2,
        h3=h3,
        h3_checked_periods=witnesses,
        row_sums={"M1": sorted(set(M1.sum(axis=1).tolist())), "M2": sorted(set(M2.sum(axis=1).tolist()))},
        col_sums={"M1": sorted(set(M1.sum(axis=0).tolist())), "M2": sorted(set(M2.sum(axis=0).tolist()))},
    )
