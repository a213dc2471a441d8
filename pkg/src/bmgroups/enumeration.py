"""Exhaustive enumeration of BM relation sets and their reduction up to relabeling."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from .invariants import abelianization
from .ktheory import shift_group
from .tilingshift import build_transition_matrices
from .vhdatum import BMSquare, VHDatum, orbit, relator_of, tuple_key, tuple_of
from .zmatrix import AbelianGroup

SIDE_PRESERVING = "side-preserving"
WITH_SWAP = "with-swap"
MODES = (SIDE_PRESERVING, WITH_SWAP)
# the only mode giving 52 classes on the 541 relation sets of degree (4, 4)
DEFAULT_MODE = WITH_SWAP


@dataclass(frozen=True)
class EquivalenceMode:
    allow_side_swap: bool = False

    @classmethod
    def named(cls, name: str) -> "EquivalenceMode":
        if name not in MODES:
            raise ValueError(f"unknown mode {name!r}; choose from {MODES}")
        return cls(allow_side_swap=name == WITH_SWAP)

    @property
    def name(self) -> str:
        return WITH_SWAP if self.allow_side_swap else SIDE_PRESERVING


def all_bm_squares(m: int, n: int) -> list[BMSquare]:
    """Every 4-element orbit in ``A x B x B x A``, in order of least tuple."""
    if m < 4 or n < 4 or m % 2 or n % 2:
        raise ValueError("m and n must be even and at least 4")
    alpha, beta = m // 2, n // 2
    A = [s * i for i in range(1, alpha + 1) for s in (1, -1)]
    B = [s * i for i in range(alpha + 1, alpha + beta + 1) for s in (1, -1)]
    seen: set = set()
    out = []
    for t in sorted(product(A, B, B, A), key=tuple_key):
        if t in seen:
            continue
        orb = frozenset(orbit(t))
        seen |= orb
        if len(orb) == 4:
            out.append(BMSquare(orb))
    return out


@dataclass(frozen=True)
class CompatibilityGraph:
    vertices: tuple  # BMSquares
    adjacency: tuple  # adjacency[i] = frozenset of neighbour indices

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]


def compatibility_graph(squares: Sequence[BMSquare]) -> CompatibilityGraph:
    """Join two squares when their ``(a, b)`` projections are disjoint."""
    proj = [sq.ab_pairs for sq in squares]
    adj = []
    for i, p in enumerate(proj):
        adj.append(frozenset(j for j, q in enumerate(proj) if j != i and not (p & q)))
    return CompatibilityGraph(tuple(squares), tuple(adj))


def enumerate_relation_sets(m: int, n: int) -> list[VHDatum]:
    """All cliques of ``alpha*beta`` squares whose ``(a, b)`` projections tile ``A x B``.

    Exact cover by backtracking: the square covering the first uncovered
    pair is chosen at each level, so every clique appears exactly once.
    """
    alpha, beta = m // 2, n // 2
    squares = [sq for sq in all_bm_squares(m, n) if len(sq.ab_pairs) == 4]
    A = [s * i for i in range(1, alpha + 1) for s in (1, -1)]
    B = [s * i for i in range(alpha + 1, alpha + beta + 1) for s in (1, -1)]
    cells = list(product(A, B))
    covering: dict = {c: [] for c in cells}
    for k, sq in enumerate(squares):
        for c in sq.ab_pairs:
            covering[c].append(k)

    results: list[VHDatum] = []
    chosen: list[int] = []
    covered: set = set()

    def search() -> None:
        for c in cells:
            if c not in covered:
                break
        else:
            results.append(VHDatum(alpha, beta, tuple(squares[k].tuples for k in chosen)))
            return
        for k in covering[c]:
            pairs = squares[k].ab_pairs
            if covered.isdisjoint(pairs):
                chosen.append(k)
                covered.update(pairs)
                search()
                covered.difference_update(pairs)
                chosen.pop()

    search()
    return results


# ---------------------------------------------------------------- symmetry


def _signed_perms(letters: Sequence[int]) -> list[dict]:
    """Bijections of ``±letters`` that commute with negation."""
    out = []
    for perm in permutations(letters):
        for signs in product((1, -1), repeat=len(letters)):
            f = {}
            for x, y, s in zip(letters, perm, signs):
                f[x] = s * y
                f[-x] = -s * y
            out.append(f)
    return out


def _code(x: int) -> int:
    # 1 -> 1, -1 -> 2, 2 -> 3, ... preserves the letter order
    return 2 * abs(x) - (x > 0)


def _decode(c: int) -> int:
    return (c + 1) // 2 if c % 2 else -(c // 2)


def symmetry_maps(alpha: int, beta: int, mode: EquivalenceMode) -> list:
    """The relabeling group of the mode, as functions on relation tuples."""
    return [
        (lambda t, h=h, swap=swap: _apply(h, swap, t))
        for h, swap in _symmetry_tables(alpha, beta, mode.allow_side_swap)
    ]


def _apply(h: dict, swap: bool, t: tuple) -> tuple:
    if swap:
        # A <-> B; ab = b2 a2 read as b2 a2 = ab gives the tuple (b2, a2, a, b)
        t = (t[2], t[3], t[0], t[1])
    return (h[t[0]], h[t[1]], h[t[2]], h[t[3]])


def _symmetry_tables(alpha: int, beta: int, allow_swap: bool) -> list[tuple[dict, bool]]:
    fa = _signed_perms(range(1, alpha + 1))
    fb = _signed_perms(range(alpha + 1, alpha + beta + 1))
    tables = [({**f, **g}, False) for f, g in product(fa, fb)]
    if allow_swap:
        if alpha != beta:
            raise ValueError("side swap needs m == n")
        sw = {}
        for i in range(1, alpha + 1):
            sw[i], sw[-i] = i + alpha, -(i + alpha)
            sw[i + alpha], sw[-(i + alpha)] = i, -i
        tables += [({x: h[sw[x]] for x in h}, True) for h, _ in list(tables)]
    return tables


def relabel(datum: VHDatum, fn) -> VHDatum:
    return VHDatum(datum.alpha, datum.beta, tuple(frozenset(fn(t) for t in s) for s in datum.squares))


def _key_of(tuples: Iterable) -> bytes:
    reps = {min(orbit(t), key=tuple_key) for t in tuples}
    lines = [" ".join(f"{x:+d}" for x in relator_of(r)) for r in sorted(reps, key=tuple_key)]
    return ";".join(lines).encode()


def canonical_form(datum: VHDatum, mode: EquivalenceMode | None = None) -> bytes:
    """Least relation listing over the relabeling group: a complete orbit invariant.

    Brute force over the whole group; it has at most 2 * (2^a a!)(2^b b!) elements.
    """
    mode = mode or EquivalenceMode.named(DEFAULT_MODE)
    k = 2 * (datum.alpha + datum.beta) + 1
    rel = [tuple(_code(x) for x in t) for t in datum.relations]
    best = None
    for h, swap in _symmetry_tables(datum.alpha, datum.beta, mode.allow_side_swap):
        hc = [0] * k
        for x, y in h.items():
            hc[_code(x)] = _code(y)
        if swap:
            img = sorted(((hc[c] * k + hc[d]) * k + hc[a]) * k + hc[b] for a, b, c, d in rel)
        else:
            img = sorted(((hc[a] * k + hc[b]) * k + hc[c]) * k + hc[d] for a, b, c, d in rel)
        if best is None or img < best:
            best = img
    tuples = []
    for v in best:
        digits = []
        for _ in range(4):
            v, c = divmod(v, k)
            digits.append(_decode(c))
        tuples.append(tuple(reversed(digits)))
    return _key_of(tuples)


@dataclass(frozen=True)
class EquivalenceClass:
    key: bytes
    representative: VHDatum
    size: int


def classify(data: Sequence[VHDatum], mode: EquivalenceMode | None = None) -> list[EquivalenceClass]:
    """Group by canonical key; classes sorted by key, representative = the canonical datum."""
    mode = mode or EquivalenceMode.named(DEFAULT_MODE)
    groups: dict = {}
    for d in data:
        k = canonical_form(d, mode)
        groups[k] = groups.get(k, 0) + 1
    out = []
    for k in sorted(groups):
        out.append(EquivalenceClass(k, datum_from_key(k, data[0].alpha, data[0].beta), groups[k]))
    return out


def datum_from_key(key: bytes, alpha: int, beta: int) -> VHDatum:
    tuples = [tuple_of([int(x) for x in line.split()]) for line in key.decode().split(";")]
    return VHDatum.from_relations(alpha, beta, tuples)


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class TableRow:
    name: str
    relators: tuple
    H1: AbelianGroup
    C: AbelianGroup
    orbit_size: int

    def render(self) -> str:
        pres = "   ".join(" ".join(f"{x:+d}" for x in r) for r in self.relators)
        return f"{self.name:<10} {pres:<60} {self.H1.to_table():<14} {self.C.to_table()}"


def emit_table(classes: Sequence[EquivalenceClass]) -> list[TableRow]:
    rows = []
    for j, cls in enumerate(classes, 1):
        d = cls.representative
        TM = build_transition_matrices(d)
        relators = tuple(relator_of(min(s, key=tuple_key)) for s in d.squares)
        rows.append(
            TableRow(
                name=f"{d.alpha}x{d.beta}.{j:02d}",
                relators=relators,
                H1=abelianization(d),
                C=shift_group(TM),
                orbit_size=cls.size,
            )
        )
    return rows
