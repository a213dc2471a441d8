"""Full analysis pipeline for one datum and its JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .invariants import conjecture_checks
from .ktheory import k_groups
from .tilingshift import build_transition_matrices, check_h_conditions
from .vhdatum import VHDatum
from .zmatrix import AbelianGroup


def group_json(G: AbelianGroup) -> dict:
    return {
        "rank": G.rank,
        "invariant_factors": list(G.invariant_factors),
        "primary": G.to_table(),
    }


def group_from_json(obj: dict) -> AbelianGroup:
    G = AbelianGroup(obj["rank"], tuple(obj["invariant_factors"]))
    if G.to_table() != obj["primary"]:
        raise ValueError(f"inconsistent group rendering {obj}")
    return G


@dataclass(frozen=True)
class AnalysisReport:
    m: int
    n: int
    alpha: int
    beta: int
    rho: int
    h_conditions: dict
    C: AbelianGroup
    K0: AbelianGroup
    K1: AbelianGroup
    H1: AbelianGroup
    identity_class_order: int
    chi: int
    h2_rank: int
    rank_conjecture_holds: bool
    identity_order_equals_rho: bool
    identity_order_bound: str

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "alpha": self.alpha,
            "beta": self.beta,
            "rho": self.rho,
            "h_conditions": dict(self.h_conditions),
            "C": group_json(self.C),
            "K0": group_json(self.K0),
            "K1": group_json(self.K1),
            "H1": group_json(self.H1),
            "identity_class_order": self.identity_class_order,
            "chi": self.chi,
            "h2_rank": self.h2_rank,
            "rank_conjecture_holds": self.rank_conjecture_holds,
            "identity_order_equals_rho": self.identity_order_equals_rho,
            "identity_order_bound": self.identity_order_bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        obj = json.loads(text)
        for key in ("C", "K0", "K1", "H1"):
            obj[key] = group_from_json(obj[key])
        return cls(**obj)

    def to_text(self) -> str:
        h = self.h_conditions
        flags = " ".join(f"{k.upper()}={'ok' if h[k] else 'FAIL'}" for k in ("h0", "h1a", "h1b", "h2", "h3"))
        lines = [
            f"degrees          m={self.m} n={self.n} (alpha={self.alpha}, beta={self.beta}), rho={self.rho}",
            f"H-conditions     {flags} ({h['h3_periods_checked']} periods witnessed)",
            f"C                {self.C.to_table():<20} {self.C}",
            f"K0 = K1          {self.K0.to_table():<20} {self.K0}",
            f"H1               {self.H1.to_table():<20} {self.H1}",
            f"order of [1]     {self.identity_class_order} ({self.identity_order_bound})",
            f"chi              {self.chi}",
            f"rank H2          {self.h2_rank}",
            f"rank C = rank H2 {'yes' if self.rank_conjecture_holds else 'NO'}",
            f"order [1] = rho  {'yes' if self.identity_order_equals_rho else 'NO'}",
        ]
        return "\n".join(lines) + "\n"


def analyze(datum: VHDatum, h3_bound: int = 3) -> AnalysisReport:
    """Matrices, H-conditions, C and K-groups, order of [1], H1, chi, rank H2."""
    TM = build_transition_matrices(datum)
    hrep = check_h_conditions(TM, h3_bound)
    kt = k_groups(TM)
    inv = conjecture_checks(datum, TM, C=kt.C, order=kt.identity_class_order)
    return AnalysisReport(
        m=datum.m,
        n=datum.n,
        alpha=datum.alpha,
        beta=datum.beta,
        rho=datum.rho,
        h_conditions=hrep.summary(),
        C=kt.C,
        K0=kt.K0,
        K1=kt.K1,
        H1=inv.H1,
        identity_class_order=kt.identity_class_order,
        chi=inv.chi,
        h2_rank=inv.h2_rank,
        rank_conjecture_holds=inv.rank_conjecture_holds,
        identity_order_equals_rho=inv.identity_order_equals_rho,
        identity_order_bound=kt.bound_check,
    )
