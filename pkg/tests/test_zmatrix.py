import math
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bmgroups.zmatrix import (
    INFINITE,
    AbelianGroup,
    cokernel,
    determinant,
    element_order_in_cokernel,
    matmul,
    primary_decomposition,
    smith_normal_form,
    transpose,
)


def minors_gcd(A, k):
    """gcd of all k x k minors (the k-th determinantal divisor)."""
    rows, cols = len(A), len(A[0])
    g = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = math.gcd(g, determinant([[A[i][j] for j in cs] for i in rs]))
    return g


def rank_of(A):
    r = 0
    for k in range(1, min(len(A), len(A[0])) + 1):
        if minors_gcd(A, k):
            r = k
    return r


def invariant_factors_by_minors(A):
    """Invariant factors d_k = D_k / D_{k-1} from determinantal divisors."""
    out, prev = [], 1
    for k in range(1, rank_of(A) + 1):
        dk = minors_gcd(A, k)
        out.append(dk // prev)
        prev = dk
    return out


def order_by_multiples(A, v):
    """Smallest k >= 1 with k v in im(A), testing each multiple by lattice index."""
    r = rank_of(A)
    aug = lambda w: [row + [x] for row, x in zip(A, w)]  # noqa: E731
    if r == 0:
        return 1 if not any(v) else INFINITE
    if rank_of(aug(v)) > r:
        return INFINITE
    dA = minors_gcd(A, r)
    for k in range(1, dA + 1):
        # k v lies in im(A) iff adjoining it leaves the lattice index unchanged
        if minors_gcd(aug([k * x for x in v]), r) == dA:
            return k
    raise AssertionError("order exceeds the lattice index")


def check_decomposition(A):
    s = smith_normal_form(A)
    assert matmul(matmul(s.U, A), s.V) == s.D
    assert determinant(s.U) in (1, -1)
    assert determinant(s.V) in (1, -1)
    d = s.diagonal
    for i, row in enumerate(s.D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [x for x in d if x]
    assert d[: len(nz)] == nz, "zeros must trail"
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return s


def test_identity_is_its_own_snf():
    s = check_decomposition([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert s.D == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_two_by_two_example_against_determinantal_divisors():
    A = [[2, 4], [6, 8]]
    assert minors_gcd(A, 1) == 2 and abs(determinant(A)) == 8
    s = check_decomposition(A)
    assert s.D == [[2, 0], [0, 4]]


def test_zero_matrix():
    s = check_decomposition([[0, 0, 0], [0, 0, 0]])
    assert s.D == [[0, 0, 0], [0, 0, 0]]


def test_empty_matrix_rejected():
    with pytest.raises(ValueError):
        smith_normal_form([])


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_recomposition_random(A):
    check_decomposition(A)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )
)
def test_diagonal_matches_determinantal_divisors(A):
    d = [x for x in smith_normal_form(A).diagonal if x]
    assert d == invariant_factors_by_minors(A)


def test_large_entries_do_not_overflow():
    big = 10**40
    s = check_decomposition([[big, 3 * big], [7, 11], [big + 1, 5]])
    assert s.diagonal[0] == 1


def test_cokernel_examples():
    assert cokernel([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == AbelianGroup(0, ())
    assert cokernel([[2, 0], [0, 0]]) == AbelianGroup(1, (2,))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
))
def test_cokernel_square_matrix_equals_transpose(A):
    assert cokernel(A) == cokernel(transpose(A))


def test_element_order_examples():
    assert element_order_in_cokernel([[1, 0], [0, 1]], [5, -3]) == 1
    assert element_order_in_cokernel([[4]], [2]) == 2
    assert element_order_in_cokernel([[2, 0], [0, 0]], [0, 1]) == INFINITE


def test_element_order_dimension_mismatch():
    with pytest.raises(ValueError):
        element_order_in_cokernel([[1, 0], [0, 1]], [1, 2, 3])


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda r: st.tuples(
            st.integers(1, 4).flatmap(
                lambda c: st.lists(
                    st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r
                )
            ),
            st.lists(st.integers(-4, 4), min_size=r, max_size=r),
        )
    )
)
def test_element_order_agrees_with_brute_force(args):
    A, v = args
    assert element_order_in_cokernel(A, v) == order_by_multiples(A, v)


def test_primary_decomposition_examples():
    assert primary_decomposition(AbelianGroup(0, (2, 4, 8))) == [2, 4, 8]
    assert sorted(primary_decomposition(AbelianGroup.from_cyclic(0, [6, 6]))) == [2, 2, 3, 3]
    # 12 = 4 * 3 by the Chinese remainder theorem
    assert sorted(primary_decomposition(AbelianGroup(0, (12,)))) == [3, 4]


@given(st.integers(0, 4), st.lists(st.integers(0, 60), max_size=6))
def test_primary_view_round_trips(rank, orders):
    G = AbelianGroup.from_cyclic(rank, orders)
    assert AbelianGroup.from_cyclic(G.rank, primary_decomposition(G)) == G
    assert AbelianGroup.from_table(G.to_table()) == G
    expected_order = math.prod(x for x in orders if x > 1)
    assert G.order_of_torsion == expected_order
    assert G.rank == rank + orders.count(0)


def test_table_notation():
    assert AbelianGroup.from_cyclic(0, [6, 6]).to_table() == "0[(2)2,(2)3]"
    assert AbelianGroup.from_table("0[(2)2,4,8]") == AbelianGroup(0, (2, 2, 4, 8))
    assert AbelianGroup.from_table("4[]").to_table() == "4[]"
    assert AbelianGroup.from_table("0[(2)2,(3)4]").invariant_factors == (2, 2, 4, 4, 4)


def test_invariant_factor_chain_enforced():
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1, 2))
