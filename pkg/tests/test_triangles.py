import pytest

from conftest import cube
from sijections.cli import gamma_table, table_lines
from sijections.gt import gt_size
from sijections.signed import Tag
from sijections.sijection import COD, DOM, verify
from sijections.triangles import (NE, NW, NWNE, SE, SW, SWSE, arrow_patterns, arrow_rows,
                                  deformed_box, gamma_fresh, interlaces, lam, mt_counts,
                                  mt_from_json, mt_set, mt_sign, mt_to_json, pairs, phi, psi,
                                  sgt_counts, sgt_from_json, sgt_set, sgt_to_json, shifted_row,
                                  xi_sijection)


def test_interlacing_examples():
    assert interlaces((1, 2), (1, 2, 3))
    assert not interlaces((2, 2), (1, 2, 3))
    assert interlaces((3, 3, 4, 5), (5, 3, 1, 4, 6))
    # k_1 > l_1 = k_2 has nothing to its right when n = 2
    assert not interlaces((1,), (2, 1))
    assert interlaces((2,), (2, 1)) is False
    assert interlaces((1,), (1, 1))
    assert not interlaces((1, 2), (1, 2))


def test_size_five_example():
    rows = ((4,), (3, 5), (3, 4, 5), (3, 3, 4, 5), (5, 3, 1, 4, 6))
    assert mt_set(rows[-1]).sign_of(rows) == -1 == mt_sign(rows)


def test_mt_counts():
    assert mt_set((1, 2, 3)).counts() == (7, 0)
    assert mt_counts((1, 2, 3, 4, 5)) == (429, 0)
    assert mt_counts((1, 2, 3, 4, 5, 6)) == (7436, 0)


def test_mt_codec():
    rows = ((2,), (1, 3), (1, 2, 3))
    assert mt_from_json(mt_to_json(rows)) == rows


def test_sgt_counts():
    assert sgt_set((1, 2, 3)).counts() == (10, 3)
    assert sgt_counts((1, 2, 3)) == (10, 3)
    assert sgt_counts((1, 2, 3, 4, 5)) == (18913, 18484)


def test_sgt_codec():
    k = (1, 2, 3)
    for e, sign in sgt_set(k).elements():
        assert sgt_from_json(sgt_to_json(e, k), k) == e


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mt_and_sgt_have_equal_size(n):
    for k in cube(3, n):
        mp, mn = mt_counts(k)
        sp, sn = sgt_counts(k)
        assert mp - mn == sp - sn, k


def test_sgt_counts_match_enumeration():
    for k in [(0, 2, 1), (2, 2, 2), (3, 1, -1)]:
        assert sgt_set(k).counts() == sgt_counts(k)


def test_arrow_sets():
    assert arrow_rows(3).counts() == (14, 13)
    assert arrow_patterns(3).counts() == (14, 13)
    assert pairs(3) == ((1, 2), (1, 3), (2, 3))
    assert shifted_row((1, 2, 3), (SE, SE, SE)) == (1, 1, 1)
    assert shifted_row((1, 2, 3), (SW, SWSE, SW)) == (3, 3, 2)


def _pattern(entries, n):
    return tuple(entries[pq] for pq in pairs(n))


def test_psi_worked_example():
    before = {(1, 5): SE, (1, 4): SW, (2, 5): SWSE, (1, 3): SWSE, (2, 4): SW, (3, 5): SW,
              (1, 2): SE, (2, 3): SWSE, (3, 4): SE, (4, 5): SW}
    after = {(1, 6): SE, (1, 5): SW, (2, 6): SWSE, (1, 4): SE, (2, 5): SW, (3, 6): SW,
             (1, 3): SWSE, (2, 4): SE, (3, 5): SE, (4, 6): SW,
             (1, 2): SE, (2, 3): SWSE, (3, 4): SE, (4, 5): SW, (5, 6): SW}
    p = psi(6, 4)
    assert p(DOM, _pattern(before, 5)) == (COD, _pattern(after, 6))
    assert p(COD, _pattern(after, 6)) == (DOM, _pattern(before, 5))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_psi_verify(n):
    for i in range(1, n + 1):
        assert verify(psi(n, i)).ok


def test_lambda():
    m = lam(3, 2)
    assert m.domain.counts() == (14, 13)
    assert m(DOM, (NW, NW, NE)) == (COD, ())
    assert m(COD, ()) == (DOM, (NW, NW, NE))
    for n in (1, 2, 3, 4):
        for i in range(1, n + 1):
            assert verify(lam(n, i)).ok


def test_xi_images_are_in_deformed_box():
    for k in [(1, 2, 3), (1, 3, 2, 4), (2, 2, 2)]:
        x = xi_sijection(k)
        for rows, _ in mt_set(k).elements():
            side, y = x(DOM, rows)
            assert side == COD and y.v.v == rows[:-1]
            assert deformed_box(k, y.t).sign_of(rows[-2]) != 0


@pytest.mark.parametrize("n,radius", [(2, 3), (3, 2)])
def test_xi_sweep(n, radius):
    for k in cube(radius, n):
        assert verify(xi_sijection(k)).ok, k


@pytest.mark.parametrize("n,radius,xs", [(1, 2, range(-2, 3)), (2, 2, range(-1, 2)),
                                         (3, 1, (0, 1))])
def test_phi_sweep(n, radius, xs):
    for k in cube(radius, n):
        for x in xs:
            assert verify(phi(k, x)).ok, (k, x)


@pytest.mark.parametrize("n,radius,xs", [(1, 2, (0, 1)), (2, 2, (-1, 0, 1)), (3, 1, (0,))])
def test_gamma_sweep(n, radius, xs):
    for k in cube(radius, n):
        for x in xs:
            assert verify(gamma_fresh(k, x)).ok, (k, x)


def test_gamma_n4():
    assert verify(gamma_fresh((1, 2, 3, 4), 0)).ok


TABLE_X0 = {
    ("1/12/123", "(1/11/111, SE SE SE)"),
    ("2/12/123", "(2/12/122, SE SE SW)"),
    ("1/13/123", "(1/12/122, SE SE SW)"),
    ("2/13/123", "(2/23/223, SE SW SW)"),
    ("3/13/123", "(3/23/223, SE SW SW)"),
    ("2/23/123", "(2/22/312, SWSE SW SE)"),
    ("3/23/123", "(3/33/333, SW SW SW)"),
    ("(2/22/231, SW SE SWSE)", "(2/22/222, SE SW SWSE)"),
    ("(2/22/223, SE SW SW)", "(2/22/222, SE SWSE SW)"),
    ("(2/22/122, SE SE SW)", "(2/22/222, SWSE SE SW)"),
}

TABLE_X1 = {
    ("1/12/123", "(1/11/111, SE SE SE)"),
    ("2/12/123", "(2/22/223, SE SW SW)"),
    ("1/13/123", "(1/12/122, SE SE SW)"),
    ("2/13/123", "(2/23/223, SE SW SW)"),
    ("3/13/123", "(3/23/223, SE SW SW)"),
    ("2/23/123", "(2/22/122, SE SE SW)"),
    ("3/23/123", "(3/33/333, SW SW SW)"),
    ("(2/22/231, SW SE SWSE)", "(2/22/222, SWSE SE SW)"),
    ("(2/22/222, SE SW SWSE)", "(2/22/312, SWSE SW SE)"),
    ("(2/12/122, SE SE SW)", "(2/22/222, SE SWSE SW)"),
}


def _pairs_of(k, x):
    return {frozenset(line.split(" <-> ")) for line in table_lines(gamma_table(k, x))}


@pytest.mark.parametrize("x,expected", [(0, TABLE_X0), (1, TABLE_X1)])
def test_gamma_tables(x, expected):
    assert _pairs_of((1, 2, 3), x) == {frozenset(p) for p in expected}


def test_gamma_depends_on_x():
    assert _pairs_of((1, 2, 3), 0) != _pairs_of((1, 2, 3), 1)


def test_gamma_pairs_positive_mt_with_sgt():
    k = (1, 2, 3)
    g = gamma_fresh(k, 0)
    sgt = sgt_set(k)
    for rows, sign in mt_set(k).elements():
        side, y = g(DOM, rows)
        assert side == COD and sgt.sign_of(y) == sign
        assert g(COD, y) == (DOM, rows)
