from itertools import product

import numpy as np
import pytest

from bmgroups.tilingshift import (
    TransitionMatrices,
    Word,
    build_transition_matrices,
    check_h_conditions,
    count_words,
    extend_word,
    h3_witness,
    is_periodic,
    is_word,
    rotate_tile,
)

from conftest import TABLE


@pytest.fixture(scope="module")
def tm01(d01):
    return build_transition_matrices(d01)


def brute_force_words(TM, shape):
    """All words of a shape, enumerated cell by cell in row-major order."""
    m1, m2 = shape
    cells = [(i, j) for j in range(m2 + 1) for i in range(m1 + 1)]
    out = []

    def go(k, grid):
        if k == len(cells):
            out.append(dict(grid))
            return
        i, j = cells[k]
        for t in range(TM.size):
            if i > 0 and not TM.M1[t, grid[(i - 1, j)]]:
                continue
            if j > 0 and not TM.M2[t, grid[(i, j - 1)]]:
                continue
            grid[(i, j)] = t
            go(k + 1, grid)
            del grid[(i, j)]

    go(0, {})
    return out


def test_alphabet_is_relation_set(d01, tm01):
    assert tm01.size == 16 == d01.m * d01.n
    assert len(set(tm01.tiles)) == 16
    assert all(tm01.index[t] == k for k, t in enumerate(tm01.tiles))


def test_row_and_column_sums_2x2_01(tm01):
    for M in (tm01.M1, tm01.M2):
        assert set(M.sum(axis=0)) == {3}
        assert set(M.sum(axis=1)) == {3}


def test_row_sums_mozes(mozes_5_13):
    TM = build_transition_matrices(mozes_5_13)
    assert set(TM.M1.sum(axis=1)) == {5}
    assert set(TM.M2.sum(axis=1)) == {13}
    assert set(TM.M1.sum(axis=0)) == {5}
    assert set(TM.M2.sum(axis=0)) == {13}


def test_adjacency_rule_against_definition(d01, tm01):
    for (s, ts), (r, tr) in product(enumerate(tm01.tiles), repeat=2):
        right = ts[2] == tr[1] and ts[0] != -tr[0]
        above = ts[0] == tr[3] and ts[2] != -tr[2]
        assert tm01.M1[s, r] == right
        assert tm01.M2[s, r] == above


def test_product_datum_commutes(product_22):
    TM = build_transition_matrices(product_22)
    assert (TM.M1 @ TM.M2 == TM.M2 @ TM.M1).all()


def test_rotate_examples():
    assert rotate_tile((1, 3, 3, 1)) == (-1, -3, -3, -1)
    assert rotate_tile((1, 3, 3, -1)) == (1, -3, -3, -1)


@pytest.mark.parametrize("name", ["2x2.01", "2x2.17", "2x2.41"])
def test_rotation_symmetry(name):
    TM = build_transition_matrices(TABLE[name])
    for t in TM.tiles:
        assert rotate_tile(rotate_tile(t)) == t
        assert rotate_tile(t) in TM.index
    P = TM.rotation
    assert (P @ P == np.eye(TM.size, dtype=np.int64)).all()
    for M in (TM.M1, TM.M2):
        assert (P @ M @ P == M.T).all()


def test_check_h_conditions_2x2_01(tm01):
    rep = check_h_conditions(tm01, 3)
    assert rep.ok
    assert len(rep.h3_checked_periods) == 48
    for p, w in rep.h3_checked_periods:
        assert is_word(tm01, w) and not is_periodic(w, p)
    assert rep.row_sums == {"M1": [3], "M2": [3]}


def test_h0_fails_for_zero_matrix(tm01):
    broken = TransitionMatrices(tm01.tiles, np.zeros_like(tm01.M1), tm01.M2, 4, 4)
    rep = check_h_conditions(broken, 1)
    assert not rep.h0 and not rep.ok


def test_h1_fails_for_noncommuting_matrices(tm01):
    M2 = tm01.M2.copy()
    M2[0, :] = 0
    M2[0, 0] = 1
    rep = check_h_conditions(TransitionMatrices(tm01.tiles, tm01.M1, M2, 4, 4), 1)
    assert not rep.h1a and not rep.h3


def test_extend_single_tile_upwards(tm01):
    r = 0
    s = sorted(tm01.successors(2, r))[0]
    w = extend_word(tm01, Word.single(r), "top", 0, s)
    assert w.shape == (0, 1) and w[0, 0] == r and w[0, 1] == s


def test_extend_row_forces_corner(tm01):
    r0 = 0
    r1 = sorted(tm01.successors(1, r0))[0]
    row = extend_word(tm01, Word.single(r0), "right", 0, r1)
    assert row.shape == (1, 0)
    for top in tm01.successors(2, r1):
        w = extend_word(tm01, row, "top", 1, top)
        assert w.shape == (1, 1) and is_word(tm01, w)
        assert w[1, 1] == top
        forced = [
            t for t in range(16) if tm01.M2[t, r0] and tm01.M1[top, t]
        ]
        assert forced == [w[0, 1]]


def test_extend_rejects_incompatible_seed(tm01):
    bad = next(t for t in range(16) if not tm01.M1[t, 0])
    with pytest.raises(ValueError):
        extend_word(tm01, Word.single(0), "right", 0, bad)
    with pytest.raises(ValueError):
        extend_word(tm01, Word.single(0), "diagonal", 0, 0)


def test_every_l_shaped_triple_has_one_completion(tm01):
    """Exhaustive over (r0, r1 right of r0, r2 above r0): exactly one corner tile."""
    for r0 in range(16):
        for r1 in tm01.successors(1, r0):
            for r2 in tm01.successors(2, r0):
                corners = [t for t in range(16) if tm01.M1[t, r2] and tm01.M2[t, r1]]
                assert len(corners) == 1
                # the same corner arises whichever way round the block is completed
                via_row = extend_word(tm01, Word(((r0,), (r1,))), "top", 0, r2)
                via_col = extend_word(tm01, Word(((r0, r2),)), "right", 0, r1)
                assert via_row == via_col
                assert via_row[1, 1] == corners[0]


def test_fill_order_independent_on_larger_rectangle(tm01):
    # build a 3x2 rectangle row-first and column-first from the same seeds
    w = Word.single(5)
    a = extend_word(tm01, w, "right", 0, sorted(tm01.successors(1, 5))[0])
    a = extend_word(tm01, a, "right", 0, sorted(tm01.successors(1, a[1, 0]))[1])
    b = Word.single(5)
    b = extend_word(tm01, b, "top", 0, sorted(tm01.successors(2, 5))[2])
    a = extend_word(tm01, a, "top", 0, b[0, 1])
    b = extend_word(tm01, b, "right", 0, a[1, 0])
    b = extend_word(tm01, b, "right", 0, a[2, 0])
    assert a == b


def test_extend_left_and_bottom(tm01):
    w = Word.single(7)
    w = extend_word(tm01, w, "left", 0, sorted(tm01.predecessors(1, 7))[0])
    w = extend_word(tm01, w, "bottom", 1, sorted(tm01.predecessors(2, w[1, 0]))[0])
    assert w.shape == (1, 1) and w[1, 1] == 7 and is_word(tm01, w)


def test_h3_witness_examples(tm01, mozes_5_13):
    w = h3_witness(tm01, (1, 0))
    assert w.shape == (1, 0) and w[0, 0] != w[1, 0]
    w = h3_witness(tm01, (2, 3))
    assert is_word(tm01, w) and not is_periodic(w, (2, 3))
    TM = build_transition_matrices(mozes_5_13)
    w = h3_witness(TM, (0, -2))
    assert is_word(TM, w) and not is_periodic(w, (0, -2))


def test_h3_witness_rejects_zero(tm01):
    with pytest.raises(ValueError):
        h3_witness(tm01, (0, 0))


def test_count_words_examples(tm01):
    assert count_words(tm01, (0, 0)) == 16
    assert count_words(tm01, (1, 0)) == 48
    assert count_words(tm01, (1, 1)) == 16 * 9


@pytest.mark.parametrize("shape", [(0, 1), (1, 1), (2, 1), (1, 2), (2, 2), (3, 0)])
def test_count_words_against_enumeration(tm01, shape):
    words = brute_force_words(tm01, shape)
    assert count_words(tm01, shape) == len(words)


def test_brute_force_words_are_words(tm01):
    for g in brute_force_words(tm01, (1, 1))[:50]:
        w = Word(((g[0, 0], g[0, 1]), (g[1, 0], g[1, 1])))
        assert is_word(tm01, w)


def test_text_exports(tm01):
    lines = tm01.to_text(1).splitlines()
    assert len(lines) == 16 and all(len(x.split()) == 16 for x in lines)
    assert len(tm01.index_pairs(2)) == 48
    assert all(tm01.M2[s, r] == 1 for s, r in tm01.index_pairs(2))
