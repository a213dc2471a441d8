"""Shift group C, the K-groups of the rank-2 Cuntz-Krieger algebra, and the order of [1]."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .tilingshift import TransitionMatrices
from .vhdatum import VHDatum
from .zmatrix import INFINITE, AbelianGroup, cokernel, element_order_in_cokernel

EXACT_RHO = "exact-rho"
RHO_OR_HALF = "rho-or-half"
VIOLATED = "violated"


class KTheoryError(RuntimeError):
    """A computed value contradicts a proven structural fact."""


@dataclass(frozen=True)
class KTheoryReport:
    C: AbelianGroup
    K0: AbelianGroup
    K1: AbelianGroup
    identity_class_order: int | None
    rho: int
    bound_check: str | None = None


def shift_group(TM: TransitionMatrices) -> AbelianGroup:
    """``C = coker(I - M1, I - M2)``."""
    return cokernel(TM.block_matrix())


def _rho_of(TM: TransitionMatrices) -> int:
    return math.gcd(TM.m // 2 - 1, TM.n // 2 - 1)


def k_groups(TM: TransitionMatrices, with_identity_order: bool = True) -> KTheoryReport:
    """``K0 = K1 = C + Z^rank(C)``, cross-checked against the transposed cokernel."""
    C = shift_group(TM)
    Ct = cokernel(TM.block_matrix(transpose=True))
    if Ct != C:
        raise KTheoryError(f"coker of transposed blocks {Ct} differs from C = {C}")
    K = C + AbelianGroup(C.rank)
    rho = _rho_of(TM)
    order = identity_class_order(TM) if with_identity_order else None
    check = classify_order(rho, order) if order is not None else None
    return KTheoryReport(C=C, K0=K, K1=K, identity_class_order=order, rho=rho, bound_check=check)


def identity_class_order(TM: TransitionMatrices) -> int:
    """Order in C of the class of the all-ones vector (the unit of the algebra)."""
    order = element_order_in_cokernel(TM.block_matrix(), [1] * TM.size)
    if order == INFINITE:
        raise KTheoryError("class of the identity has infinite order")
    return order


def classify_order(rho: int, order: int) -> str:
    """Compare a measured order of [1] against the bounds forced by ``rho``.

    The image of [1] in ``Z/2rho`` has order ``rho`` for odd ``rho`` and
    ``rho/2`` for even ``rho``, and ``rho [1] = 0``.
    """
    if rho % order:
        return VIOLATED
    if rho % 2:
        return EXACT_RHO if order == rho else VIOLATED
    return RHO_OR_HALF if order in (rho, rho // 2) else VIOLATED


def order_bound_check(datum: VHDatum, TM: TransitionMatrices) -> str:
    return classify_order(datum.rho, identity_class_order(TM))


def free_product_closed_form(alpha: int, beta: int) -> KTheoryReport:
    """Closed-form K-theory for the product of free groups ``F_alpha x F_beta``."""
    if alpha < 2 or beta < 2:
        raise ValueError("alpha and beta must be at least 2")
    rho = math.gcd(alpha - 1, beta - 1)
    K = AbelianGroup.from_cyclic(
        2 * alpha * beta, [beta - 1] * alpha + [alpha - 1] * beta + [rho]
    )
    C = AbelianGroup(alpha * beta, K.invariant_factors)
    return KTheoryReport(C=C, K0=K, K1=K, identity_class_order=rho, rho=rho, bound_check=classify_order(rho, rho))
