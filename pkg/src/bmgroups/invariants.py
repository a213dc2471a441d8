"""Homological invariants read off the presentation: H1, Euler characteristic, rank H2."""

from __future__ import annotations

from dataclasses import dataclass

from .ktheory import identity_class_order, shift_group
from .tilingshift import TransitionMatrices
from .vhdatum import VHDatum, tuple_key
from .zmatrix import AbelianGroup, cokernel


@dataclass(frozen=True)
class InvariantsReport:
    H1: AbelianGroup
    chi: int
    h2_rank: int
    rank_conjecture_holds: bool
    identity_order_equals_rho: bool


def relator_matrix(datum: VHDatum) -> list[list[int]]:
    """Abelianized relations ``a + b - b2 - a2``, one column per square.

    Rows are indexed by the positive letters ``1 .. alpha+beta``.
    """
    k = datum.alpha + datum.beta
    cols = []
    for s in datum.squares:
        col = [0] * k
        a, b, b2, a2 = min(s, key=tuple_key)
        for x, sign in ((a, 1), (b, 1), (b2, -1), (a2, -1)):
            col[abs(x) - 1] += sign if x > 0 else -sign
        cols.append(col)
    return [list(row) for row in zip(*cols)]


def abelianization(datum: VHDatum) -> AbelianGroup:
    return cokernel(relator_matrix(datum))


def euler_characteristic(datum: VHDatum) -> int:
    return (datum.alpha - 1) * (datum.beta - 1)


def h2_rank(datum: VHDatum, H1: AbelianGroup | None = None) -> int:
    """``chi - 1 + rank H1``; H2 is free so this determines it."""
    if H1 is None:
        H1 = abelianization(datum)
    r = euler_characteristic(datum) - 1 + H1.rank
    if r < 0:
        raise ValueError(f"negative rank H2 ({r}): inconsistent input")
    return r


def conjecture_checks(
    datum: VHDatum,
    TM: TransitionMatrices,
    C: AbelianGroup | None = None,
    order: int | None = None,
) -> InvariantsReport:
    """Evaluate ``rank C == rank H2`` and ``order [1] == rho``; never raises on a mismatch."""
    H1 = abelianization(datum)
    h2 = h2_rank(datum, H1)
    if C is None:
        C = shift_group(TM)
    if order is None:
        order = identity_class_order(TM)
    return InvariantsReport(
        H1=H1,
        chi=euler_characteristic(datum),
        h2_rank=h2,
        rank_conjecture_holds=C.rank == h2,
        identity_order_equals_rho=order == datum.rho,
    )
