"""Exact integer matrix algebra: Smith normal form and cokernels.

Matrices are plain lists of rows of Python ints, so nothing ever overflows.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

IntMatrix = list[list[int]]

INFINITE = "infinite"


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Copy ``rows`` into a fresh list-of-lists of ints, checking it is rectangular."""
    mat = [[int(x) for x in row] for row in rows]
    if mat:
        width = len(mat[0])
        if any(len(row) != width for row in mat):
            raise ValueError("ragged matrix: rows have different lengths")
    return mat


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    if len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} times {len(b)}x?")
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*a)]


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    ``U`` or ``V`` is ``None`` when the caller asked not to track it.
    """

    U: IntMatrix | None
    D: IntMatrix
    V: IntMatrix | None

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _diagonalize(
    a: IntMatrix, track_left: bool, track_right: bool
) -> tuple[IntMatrix | None, IntMatrix | None, list[tuple[int, int, int]]]:
    """Clear ``a`` down to isolated pivots by unimodular row/column operations.

    Returns (U, Vt, pivots) where each pivot is (row, col, value); ``Vt`` is
    the transpose of the right transform.  No divisibility is enforced here.
    """
    m = [row[:] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    U = identity(nrows) if track_left else None
    Vt = identity(ncols) if track_right else None

    live_rows = list(range(nrows))
    live_cols = list(range(ncols))
    pivots: list[tuple[int, int, int]] = []

    while live_rows and live_cols:
        # smallest nonzero |entry| in the live submatrix, ties to row-major order
        best = 0
        pr = pc = -1
        for i in live_rows:
            row = m[i]
            for j in live_cols:
                x = row[j]
                if x:
                    ax = -x if x < 0 else x
                    if best == 0 or ax < best:
                        best, pr, pc = ax, i, j
                        if ax == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break

        while True:
            piv = m[pr][pc]
            # row operations: reduce the pivot column modulo the pivot
            smaller = None
            for i in live_rows:
                if i == pr:
                    continue
                x = m[i][pc]
                if x:
                    q = x // piv
                    prow = m[pr]
                    m[i] = [u - q * v for u, v in zip(m[i], prow)]
                    if U is not None:
                        urow = U[pr]
                        U[i] = [u - q * v for u, v in zip(U[i], urow)]
                    r = m[i][pc]
                    if r and (smaller is None or abs(r) < abs(m[smaller[0]][smaller[1]])):
                        smaller = (i, pc)
            if smaller is not None:
                pr, pc = smaller
                continue
            # column is clean, so column operations only touch the pivot row
            prow = m[pr]
            for j in live_cols:
                if j == pc:
                    continue
                x = prow[j]
                if x:
                    q = x // piv
                    prow[j] = x - q * piv
                    if Vt is not None:
                        vrow = Vt[pc]
                        Vt[j] = [u - q * v for u, v in zip(Vt[j], vrow)]
                    r = prow[j]
                    if r and (smaller is None or abs(r) < abs(prow[smaller[1]])):
                        smaller = (pr, j)
            if smaller is not None:
                pr, pc = smaller
                continue
            break

        pivots.append((pr, pc, m[pr][pc]))
        live_rows.remove(pr)
        live_cols.remove(pc)

    return U, Vt, pivots


def _fix_divisibility(
    d: list[int], U: IntMatrix | None, Vt: IntMatrix | None
) -> None:
    """Turn a nonzero diagonal into a divisibility chain in place.

    Rows of ``U`` and rows of ``Vt`` are indexed by diagonal position.
    """
    r = len(d)
    for i in range(r):
        if d[i] < 0:
            d[i] = -d[i]
            if U is not None:
                U[i] = [-x for x in U[i]]
    for i in range(r):
        for j in range(i + 1, r):
            a, b = d[i], d[j]
            if b % a == 0:
                continue
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            d[i], d[j] = g, a * bg
            # [[s, t], [-b/g, a/g]] on the left, [[1, -t*b/g], [1, s*a/g]] on the right
            if U is not None:
                ri, rj = U[i], U[j]
                U[i] = [s * x + t * y for x, y in zip(ri, rj)]
                U[j] = [-bg * x + ag * y for x, y in zip(ri, rj)]
            if Vt is not None:
                ci, cj = Vt[i], Vt[j]
                Vt[i] = [x + y for x, y in zip(ci, cj)]
                Vt[j] = [-t * bg * x + s * ag * y for x, y in zip(ci, cj)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b and g > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _smith(a: IntMatrix, track_left: bool, track_right: bool) -> SmithDecomposition:
    if not a or not a[0]:
        raise ValueError("smith_normal_form needs a nonempty matrix")
    nrows, ncols = len(a), len(a[0])
    U, Vt, pivots = _diagonalize(a, track_left, track_right)

    # permute pivots onto the leading diagonal
    pivot_rows = [p[0] for p in pivots]
    pivot_cols = [p[1] for p in pivots]
    taken_r, taken_c = set(pivot_rows), set(pivot_cols)
    row_order = pivot_rows + [i for i in range(nrows) if i not in taken_r]
    col_order = pivot_cols + [j for j in range(ncols) if j not in taken_c]
    if U is not None:
        U = [U[i] for i in row_order]
    if Vt is not None:
        Vt = [Vt[j] for j in col_order]

    d = [p[2] for p in pivots]
    _fix_divisibility(d, U, Vt)

    D = zeros(nrows, ncols)
    for k, x in enumerate(d):
        D[k][k] = x
    return SmithDecomposition(U, D, transpose(Vt) if Vt is not None else None)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form ``U @ A @ V == D`` with both transforms.

    Pivots are chosen as the smallest nonzero absolute value of the working
    submatrix (first in row-major order on ties), which keeps coefficient
    growth down and makes the output deterministic.
    """
    return _smith(as_matrix(A), True, True)


def smith_diagonal(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of ``A`` (the diagonal of its SNF, zeros dropped)."""
    snf = _smith(as_matrix(A), False, False)
    return [x for x in snf.diagonal if x]


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^rank + Z/f1 + ... + Z/fk``.

    ``invariant_factors`` is an ascending divisibility chain with every
    factor > 1.  Build arbitrary sums of cyclic groups with
    :meth:`from_cyclic`.
    """

    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        f = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(x <= 1 for x in f):
            raise ValueError(f"invariant factors must exceed 1: {f}")
        if any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"not a divisibility chain: {f}")

    @classmethod
    def from_cyclic(cls, rank: int, orders: Sequence[int]) -> "AbelianGroup":
        """Normalize ``Z^rank`` plus cyclic groups of the given orders.

        Orders of 0 count as extra free summands and orders of 1 vanish.
        """
        extra = sum(1 for x in orders if x == 0)
        powers: list[int] = []
        for x in orders:
            if abs(x) > 1:
                powers.extend(_prime_powers(abs(x)))
        return cls(rank + extra, _chain_from_prime_powers(powers))

    @property
    def torsion(self) -> "AbelianGroup":
        return AbelianGroup(0, self.invariant_factors)

    @property
    def order_of_torsion(self) -> int:
        return math.prod(self.invariant_factors)

    def is_finite(self) -> bool:
        return self.rank == 0

    def primary_decomposition(self) -> list[int]:
        return primary_decomposition(self)

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return AbelianGroup.from_cyclic(
            self.rank + other.rank, self.invariant_factors + other.invariant_factors
        )

    def to_table(self) -> str:
        """Render in the ``m[a,b,...]`` notation of primary components, ``(j)a`` for repeats."""
        return f"{self.rank}[{_table_body(self.primary_decomposition())}]"

    @classmethod
    def from_table(cls, text: str) -> "AbelianGroup":
        """Parse ``m[a,b,...]`` notation, including ``(j)a`` repeat abbreviations."""
        text = text.replace(" ", "")
        head, _, body = text.partition("[")
        if not body.endswith("]"):
            raise ValueError(f"bad group notation: {text!r}")
        body = body[:-1]
        orders: list[int] = []
        for item in filter(None, body.split(",")):
            if item.startswith("("):
                count, _, value = item[1:].partition(")")
                orders.extend([int(value)] * int(count))
            else:
                orders.append(int(item))
        return cls.from_cyclic(int(head), orders)

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        for f, k in sorted(Counter(self.invariant_factors).items()):
            parts.append(f"Z/{f}" if k == 1 else f"(Z/{f})^{k}")
        return " + ".join(parts) if parts else "0"


def _prime_powers(n: int) -> list[int]:
    from sympy import factorint

    return [p**e for p, e in factorint(n).items()]


def _chain_from_prime_powers(powers: Sequence[int]) -> tuple[int, ...]:
    # group powers by prime, largest first; the k-th largest of every prime multiply together
    by_prime: dict[int, list[int]] = {}
    for q in powers:
        by_prime.setdefault(_base_prime(q), []).append(q)
    for lst in by_prime.values():
        lst.sort(reverse=True)
    length = max((len(v) for v in by_prime.values()), default=0)
    chain = []
    for k in range(length):
        chain.append(math.prod(v[k] for v in by_prime.values() if k < len(v)))
    return tuple(sorted(chain))


def _base_prime(q: int) -> int:
    from sympy import factorint

    (p,) = factorint(q).keys()
    return p


def _table_body(powers: list[int]) -> str:
    items = []
    for q, k in sorted(Counter(powers).items(), key=lambda t: (_base_prime(t[0]), t[0])):
        items.append(str(q) if k == 1 else f"({k}){q}")
    return ",".join(items)


def primary_decomposition(G: AbelianGroup) -> list[int]:
    """Prime-power orders of the torsion summands, sorted by prime then size."""
    powers: list[int] = []
    for f in G.invariant_factors:
        powers.extend(_prime_powers(f))
    return sorted(powers, key=lambda q: (_base_prime(q), q))


def cokernel(A: Sequence[Sequence[int]]) -> AbelianGroup:
    """Cokernel ``Z^rows / A Z^cols`` of an integer matrix."""
    mat = as_matrix(A)
    d = smith_diagonal(mat)
    return AbelianGroup(len(mat) - len(d), tuple(x for x in d if x > 1))


def element_order_in_cokernel(A: Sequence[Sequence[int]], v: Sequence[int]) -> int | str:
    """Order of ``v + im(A)`` in ``coker(A)``; :data:`INFINITE` if it has none."""
    mat = as_matrix(A)
    if len(v) != len(mat):
        raise ValueError(f"vector of length {len(v)} for a matrix with {len(mat)} rows")
    snf = _smith(mat, True, False)
    d = snf.diagonal
    u = [sum(x * y for x, y in zip(row, v)) for row in snf.U]
    order = 1
    for i, ui in enumerate(u):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if ui:
                return INFINITE
            continue
        order = math.lcm(order, di // math.gcd(di, ui))
    return order
