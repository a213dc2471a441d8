"""BM groups: torsion-free lattices acting simply transitively on the vertices of a
product of two trees, their tiling subshifts, K-theory and abelianizations."""

from .enumeration import (
    EquivalenceMode,
    all_bm_squares,
    canonical_form,
    classify,
    compatibility_graph,
    emit_table,
    enumerate_relation_sets,
)
from .invariants import abelianization, conjecture_checks, euler_characteristic, h2_rank
from .ktheory import (
    free_product_closed_form,
    identity_class_order,
    k_groups,
    order_bound_check,
    shift_group,
)
from .mozes import conjectured_h1, generator_set, mozes_datum, rho_mozes
from .report import AnalysisReport, analyze
from .tilingshift import (
    build_transition_matrices,
    check_h_conditions,
    count_words,
    extend_word,
    h3_witness,
    rotate_tile,
)
from .vhdatum import (
    BMSquare,
    NormalForm,
    VHDatum,
    nf_invert,
    nf_multiply,
    normal_form,
    parse_datum,
    product_free_groups_datum,
    serialize_datum,
    squares_of,
    swap_ba,
    validate,
)
from .zmatrix import (
    AbelianGroup,
    cokernel,
    element_order_in_cokernel,
    primary_decomposition,
    smith_normal_form,
)

__version__ = "0.1.0"
