"""Mozes lattices built from integer quaternions of prime norm."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from sympy import isprime

from .vhdatum import VHDatum, orbit, tuple_key
from .zmatrix import AbelianGroup


@dataclass(frozen=True, order=True)
class LipschitzQuaternion:
    """``a0 + a1 i + a2 j + a3 k`` with integer coefficients."""

    a0: int
    a1: int = 0
    a2: int = 0
    a3: int = 0

    def __mul__(self, other: "LipschitzQuaternion") -> "LipschitzQuaternion":
        a0, a1, a2, a3 = self
        b0, b1, b2, b3 = other
        return LipschitzQuaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __neg__(self) -> "LipschitzQuaternion":
        return LipschitzQuaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __iter__(self):
        return iter((self.a0, self.a1, self.a2, self.a3))

    def conjugate(self) -> "LipschitzQuaternion":
        return LipschitzQuaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm(self) -> int:
        return self.a0**2 + self.a1**2 + self.a2**2 + self.a3**2

    def divide_exact(self, k: int) -> "LipschitzQuaternion | None":
        if any(x % k for x in self):
            return None
        return LipschitzQuaternion(*(x // k for x in self))


def quaternion_multiply(x: LipschitzQuaternion, y: LipschitzQuaternion) -> LipschitzQuaternion:
    return x * y


def conjugate(x: LipschitzQuaternion) -> LipschitzQuaternion:
    return x.conjugate()


def norm(x: LipschitzQuaternion) -> int:
    return x.norm()


def _check_prime(p: int) -> None:
    if not isprime(p) or p % 4 != 1:
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")


@dataclass(frozen=True)
class MozesGeneratorSet:
    p: int
    elements: tuple  # sorted LipschitzQuaternions

    def letters(self, first: int) -> dict:
        """Letter assignment: sorted order, each unassigned element gets the next
        positive letter and its conjugate the negative one."""
        out: dict = {}
        k = first
        for q in self.elements:
            if q in out:
                continue
            out[q] = k
            out[q.conjugate()] = -k
            k += 1
        return out


@lru_cache(maxsize=None)
def generator_set(p: int) -> MozesGeneratorSet:
    """Quaternions of norm ``p`` with ``a0 > 0`` odd and ``a1, a2, a3`` even."""
    _check_prime(p)
    r = math.isqrt(p)
    elements = []
    for a0 in range(1, r + 1, 2):
        rest = p - a0 * a0
        evens = [x for x in range(-r, r + 1) if x % 2 == 0]
        for a1, a2 in product(evens, repeat=2):
            s = rest - a1 * a1 - a2 * a2
            if s < 0:
                continue
            a3 = math.isqrt(s)
            if a3 * a3 != s or a3 % 2:
                continue
            for v in {a3, -a3}:
                elements.append(LipschitzQuaternion(a0, a1, a2, v))
    elements.sort()
    if len(elements) != p + 1:
        raise RuntimeError(f"found {len(elements)} generators of norm {p}, expected {p + 1}")
    conj = {q.conjugate() for q in elements}
    if conj != set(elements) or any(q == q.conjugate() for q in elements):
        raise RuntimeError("conjugation is not a fixed-point-free involution on the generators")
    return MozesGeneratorSet(p, tuple(elements))


def mozes_datum(p: int, l: int) -> VHDatum:
    """The VH-datum of the lattice ``Gamma_{p,l}``.

    For each ``(a, b)`` the relation partner ``(b2, a2)`` is the unique pair
    with ``a b = ±b2 a2``; every candidate ``b2`` is tried and uniqueness is
    asserted.
    """
    if p == l:
        raise ValueError("p and l must be distinct")
    A, B = generator_set(p), generator_set(l)
    alpha, beta = (p + 1) // 2, (l + 1) // 2
    la = A.letters(1)
    lb = B.letters(alpha + 1)
    a_by_q = {q: la[q] for q in A.elements}
    tuples = set()
    for a, b in product(A.elements, B.elements):
        ab = a * b
        hits = []
        for b2 in B.elements:
            # b2 a2 = ±ab  <=>  a2 = ±conj(b2) ab / l
            x = (b2.conjugate() * ab).divide_exact(l)
            if x is None:
                continue
            for cand in (x, -x):
                if cand in a_by_q:
                    hits.append((b2, cand))
        if len(hits) != 1:
            raise RuntimeError(f"{len(hits)} factorizations of a*b for a={a}, b={b}")
        b2, a2 = hits[0]
        tuples.add((la[a], lb[b], lb[b2], a_by_q[a2]))
    squares = []
    seen: set = set()
    for t in sorted(tuples, key=tuple_key):
        if t in seen:
            continue
        orb = frozenset(orbit(t))
        if not orb <= tuples:
            raise RuntimeError(f"relation set not closed under the square symmetries at {t}")
        seen |= orb
        squares.append(orb)
    return VHDatum(alpha, beta, tuple(squares))


H1_BY_R = {
    1: [2, 4, 4, 4],
    2: [2, 2, 2, 8, 8],
    3: [2, 3, 4, 4, 4],
    6: [2, 2, 2, 3, 8, 8],
}


def h1_case(p: int, l: int) -> int:
    return math.gcd((p - 1) // 4, (l - 1) // 4, 6)


def conjectured_h1(p: int, l: int) -> AbelianGroup:
    """Conjectured abelianization, depending only on ``gcd((p-1)/4, (l-1)/4, 6)``."""
    _check_prime(p)
    _check_prime(l)
    r = h1_case(p, l)
    return AbelianGroup.from_cyclic(0, H1_BY_R[r])


def rho_mozes(p: int, l: int) -> int:
    return math.gcd(p - 1, l - 1) // 2
