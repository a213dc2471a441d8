"""VH-data: the relation sets presenting BM groups.

Generators are signed integers.  With ``alpha`` A-pairs and ``beta`` B-pairs,
the A-letters are ``±1 .. ±alpha`` and the B-letters are
``±(alpha+1) .. ±(alpha+beta)``; the inverse of a letter is its negation.

A relation tuple ``(a, b, b2, a2)`` stands for ``a b = b2 a2``.  Datum files
store each relation as a relator ``x1 x2 x3 x4`` meaning ``x1 x2 x3 x4 = 1``
with side pattern A B A B, so ``(a, b, b2, a2) = (x1, x2, -x4, -x3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

Tuple4 = tuple[int, int, int, int]


class DatumParseError(ValueError):
    """Raised for malformed datum text."""


class DegenerateSquareError(ValueError):
    """An orbit of the square symmetries has fewer than four tuples."""


def letter_key(x: int) -> tuple[int, bool]:
    """Sort key realising the order 1 < -1 < 2 < -2 < ..."""
    return (abs(x), x < 0)


def tuple_key(t: Sequence[int]) -> tuple:
    return tuple(letter_key(x) for x in t)


def orbit(t: Tuple4) -> tuple[Tuple4, Tuple4, Tuple4, Tuple4]:
    """The four images of a relation tuple under the square symmetries."""
    a, b, b2, a2 = t
    return (t, (-a, b2, b, -a2), (-a2, -b2, -b, -a), (a2, -b, -b2, a))


@dataclass(frozen=True)
class BMSquare:
    """A 4-element orbit of relation tuples: one geometric square."""

    tuples: frozenset

    def __post_init__(self) -> None:
        ts = frozenset(tuple(t) for t in self.tuples)
        object.__setattr__(self, "tuples", ts)
        if len(ts) != 4:
            raise DegenerateSquareError(f"orbit has {len(ts)} tuples: {sorted(ts)}")
        first = next(iter(ts))
        if frozenset(orbit(first)) != ts:
            raise ValueError(f"tuple set is not an orbit: {sorted(ts)}")

    @classmethod
    def from_tuple(cls, t: Sequence[int]) -> "BMSquare":
        return cls(frozenset(orbit(tuple(t))))

    @cached_property
    def representative(self) -> Tuple4:
        return min(self.tuples, key=tuple_key)

    @cached_property
    def ab_pairs(self) -> frozenset:
        return frozenset((t[0], t[1]) for t in self.tuples)


def squares_of(tuples: Iterable[Sequence[int]]) -> list[BMSquare]:
    """Partition an orbit-closed tuple set into BM squares.

    Raises :class:`DegenerateSquareError` if an orbit has fewer than four
    tuples, and ``ValueError`` if the set is not closed under the symmetries.
    """
    remaining = {tuple(t) for t in tuples}
    out = []
    while remaining:
        t = min(remaining, key=tuple_key)
        orb = set(orbit(t))
        if not orb <= remaining:
            raise ValueError(f"tuple set not closed under the square symmetries at {t}")
        out.append(BMSquare(frozenset(orb)))
        remaining -= orb
    return out


@dataclass
class ValidationReport:
    """Outcome of :func:`validate`, one list of offenders per condition."""

    structural: list[str] = field(default_factory=list)
    # (i) tuples arranged into symmetry orbits; (ii) no forbidden or degenerate
    # tuples; (iii) projections to A x B and B x A bijective
    condition_i: list[str] = field(default_factory=list)
    condition_ii: list[str] = field(default_factory=list)
    condition_iii: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.structural or self.condition_i or self.condition_ii or self.condition_iii)

    def failed_conditions(self) -> list[str]:
        names = []
        for name, items in (
            ("structure", self.structural),
            ("(i)", self.condition_i),
            ("(ii)", self.condition_ii),
            ("(iii)", self.condition_iii),
        ):
            if items:
                names.append(name)
        return names

    def lines(self) -> list[str]:
        out = []
        for name, items in (
            ("structure", self.structural),
            ("(i)", self.condition_i),
            ("(ii)", self.condition_ii),
            ("(iii)", self.condition_iii),
        ):
            out.append(f"{name}: {'pass' if not items else 'FAIL'}")
            out.extend(f"  {msg}" for msg in items)
        return out


@dataclass(frozen=True)
class VHDatum:
    """Generator counts plus the relation orbits.

    ``squares`` holds one orbit (frozenset of tuples) per relation.  Orbits
    built from bad input may be degenerate; :func:`validate` reports that.
    """

    alpha: int
    beta: int
    squares: tuple

    def __post_init__(self) -> None:
        orbits = tuple(
            sorted(
                (frozenset(tuple(t) for t in s) for s in self.squares),
                key=lambda s: tuple_key(min(s, key=tuple_key)),
            )
        )
        object.__setattr__(self, "squares", orbits)

    @classmethod
    def from_relations(cls, alpha: int, beta: int, tuples: Iterable[Sequence[int]]) -> "VHDatum":
        """One orbit per given tuple; duplicates of the same orbit are kept."""
        return cls(alpha, beta, tuple(frozenset(orbit(tuple(t))) for t in tuples))

    @property
    def m(self) -> int:
        return 2 * self.alpha

    @property
    def n(self) -> int:
        return 2 * self.beta

    @property
    def rho(self) -> int:
        return math.gcd(self.alpha - 1, self.beta - 1)

    @property
    def a_letters(self) -> list[int]:
        return [s * i for i in range(1, self.alpha + 1) for s in (1, -1)]

    @property
    def b_letters(self) -> list[int]:
        return [s * i for i in range(self.alpha + 1, self.alpha + self.beta + 1) for s in (1, -1)]

    def is_a(self, x: int) -> bool:
        return 0 < abs(x) <= self.alpha

    def is_b(self, x: int) -> bool:
        return self.alpha < abs(x) <= self.alpha + self.beta

    @cached_property
    def relations(self) -> tuple:
        """All relation tuples, sorted in tile order."""
        r = set()
        for s in self.squares:
            r |= s
        return tuple(sorted(r, key=tuple_key))

    @cached_property
    def _by_tail(self) -> dict:
        return {(t[2], t[3]): (t[0], t[1]) for t in self.relations}

    def bm_squares(self) -> list[BMSquare]:
        return [BMSquare(s) for s in self.squares]


def validate(datum: VHDatum) -> ValidationReport:
    """Check the BM conditions, itemising every offending tuple."""
    rep = ValidationReport()
    al, be = datum.alpha, datum.beta
    if al < 2 or be < 2:
        rep.structural.append(f"degrees m={2 * al}, n={2 * be} must both be >= 4")
    for s in datum.squares:
        for t in sorted(s, key=tuple_key):
            if len(t) != 4:
                rep.structural.append(f"tuple {t} does not have four entries")
                continue
            a, b, b2, a2 = t
            if not (datum.is_a(a) and datum.is_a(a2) and datum.is_b(b) and datum.is_b(b2)):
                rep.structural.append(f"tuple {t} violates the side pattern A,B,B,A")
    if rep.structural:
        return rep

    for s in datum.squares:
        first = min(s, key=tuple_key)
        if frozenset(orbit(first)) != s:
            rep.condition_i.append(f"tuples {sorted(s, key=tuple_key)} are not one orbit")

    seen: dict = {}
    for k, s in enumerate(datum.squares):
        for t in s:
            a, b, b2, a2 = t
            if b2 == -b and a2 == -a:
                rep.condition_ii.append(f"forbidden tuple {t} of the form (a,b,b^-1,a^-1)")
        if len(s) != 4:
            rep.condition_ii.append(
                f"degenerate square {sorted(s, key=tuple_key)} with {len(s)} distinct tuples"
            )
        for t in s:
            if t in seen and seen[t] != k:
                rep.condition_i.append(f"tuple {t} lies in two declared squares")
            seen[t] = k

    relations = set(seen)
    expected = datum.m * datum.n
    if len(relations) != expected:
        rep.condition_iii.append(f"|R| = {len(relations)}, expected mn = {expected}")
    a_set, b_set = datum.a_letters, datum.b_letters
    for name, idx, first, second in (
        ("(a,b)", (0, 1), a_set, b_set),
        ("(a,b')", (0, 2), a_set, b_set),
        ("(b,a')", (1, 3), b_set, a_set),
        ("(b',a')", (2, 3), b_set, a_set),
    ):
        counts: dict = {}
        for t in relations:
            key = (t[idx[0]], t[idx[1]])
            counts[key] = counts.get(key, 0) + 1
        for pair in product(first, second):
            c = counts.get(pair, 0)
            if c != 1:
                rep.condition_iii.append(f"projection {name}: pair {pair} hit {c} times")
    return rep


def is_bm(datum: VHDatum) -> bool:
    return validate(datum).ok


# ---------------------------------------------------------------- file format


def _fmt(x: int) -> str:
    return f"{x:+d}"


def relator_of(t: Tuple4) -> Tuple4:
    """Relation tuple ``(a, b, b2, a2)`` to the relator ``a b a2^-1 b2^-1``."""
    a, b, b2, a2 = t
    return (a, b, -a2, -b2)


def tuple_of(relator: Sequence[int]) -> Tuple4:
    x1, x2, x3, x4 = relator
    return (x1, x2, -x4, -x3)


def parse_datum(text: str) -> VHDatum:
    """Parse a datum file: ``m n`` then one relator ``x1 x2 x3 x4`` per square."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise DatumParseError(f"line {lineno}: non-integer token in {raw!r}") from None
    if not rows:
        raise DatumParseError("empty datum: expected a header line 'm n'")
    lineno, header = rows[0]
    if len(header) != 2:
        raise DatumParseError(f"line {lineno}: header must be 'm n', got {header}")
    m, n = header
    if m < 4 or n < 4 or m % 2 or n % 2:
        raise DatumParseError(f"line {lineno}: m and n must be even and >= 4, got {m} {n}")
    alpha, beta = m // 2, n // 2
    want = alpha * beta
    relators = rows[1:]
    if len(relators) != want:
        raise DatumParseError(f"expected {want} relator lines for m={m}, n={n}, got {len(relators)}")
    tuples = []
    for lineno, vals in relators:
        if len(vals) != 4:
            raise DatumParseError(f"line {lineno}: relator needs 4 letters, got {len(vals)}")
        for pos, x in enumerate(vals):
            if x == 0 or abs(x) > alpha + beta:
                raise DatumParseError(f"line {lineno}: generator {x} out of range")
            side_a = abs(x) <= alpha
            if side_a != (pos % 2 == 0):
                raise DatumParseError(
                    f"line {lineno}: letter {x} in position {pos + 1} breaks the A B A B pattern"
                )
        tuples.append(tuple_of(vals))
    return VHDatum.from_relations(alpha, beta, tuples)


def serialize_datum(datum: VHDatum, comment: str | None = None) -> str:
    """Datum file text; one line per square, using its least tuple."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{datum.m} {datum.n}")
    for s in datum.squares:
        rep = min(s, key=tuple_key)
        lines.append(" ".join(_fmt(x) for x in relator_of(rep)))
    return "\n".join(lines) + "\n"


def load_datum(path) -> VHDatum:
    with open(path, encoding="utf-8") as fh:
        return parse_datum(fh.read())


# ---------------------------------------------------------------- normal forms


def swap_ba(datum: VHDatum, b: int, a: int) -> tuple[int, int]:
    """The unique ``(a1, b1)`` with ``a1 b1 = b a`` in the group."""
    try:
        return datum._by_tail[(b, a)]
    except KeyError:
        raise ValueError(f"no relation with (b', a') = ({b}, {a}); is the datum valid?") from None


@dataclass(frozen=True)
class NormalForm:
    """A group element as a reduced A-word followed by a reduced B-word."""

    a_word: tuple = ()
    b_word: tuple = ()

    @property
    def word(self) -> tuple:
        return self.a_word + self.b_word

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.a_word), len(self.b_word))

    def is_identity(self) -> bool:
        return not self.a_word and not self.b_word

    def render(self) -> str:
        return f"{' '.join(map(str, self.a_word))} | {' '.join(map(str, self.b_word))}"


def normal_form(datum: VHDatum, word: Sequence[int]) -> NormalForm:
    """Rewrite ``word`` into normal form.

    Leftmost rewrite first: cancel ``x x^-1``, or replace an adjacent
    ``b a`` by ``swap_ba(b, a)``.  Length never grows.
    """
    for x in word:
        if not (datum.is_a(x) or datum.is_b(x)):
            raise ValueError(f"letter {x} out of range for m={datum.m}, n={datum.n}")
    w = list(word)
    i = 0
    while i < len(w) - 1:
        x, y = w[i], w[i + 1]
        if x == -y:
            del w[i : i + 2]
            i = max(i - 1, 0)
        elif datum.is_b(x) and datum.is_a(y):
            w[i], w[i + 1] = swap_ba(datum, x, y)
            i = max(i - 1, 0)
        else:
            i += 1
    k = 0
    while k < len(w) and datum.is_a(w[k]):
        k += 1
    return NormalForm(tuple(w[:k]), tuple(w[k:]))


def nf_multiply(datum: VHDatum, x: NormalForm, y: NormalForm) -> NormalForm:
    return normal_form(datum, x.word + y.word)


def nf_invert(datum: VHDatum, x: NormalForm) -> NormalForm:
    return normal_form(datum, tuple(-g for g in reversed(x.word)))


# ---------------------------------------------------------------- constructions


def product_free_groups_datum(alpha: int, beta: int) -> VHDatum:
    """Commuting relations ``a b a^-1 b^-1 = 1``: the product of free groups F_alpha x F_beta."""
    if alpha < 2 or beta < 2:
        raise ValueError("alpha and beta must be at least 2")
    tuples = [(a, b, b, a) for a in range(1, alpha + 1) for b in range(alpha + 1, alpha + beta + 1)]
    return VHDatum.from_relations(alpha, beta, tuples)
