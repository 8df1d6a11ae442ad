import itertools

import pytest

from conftest import cube
from sijections.boxes import alpha, beta, gamma, to_empty
from sijections.signed import Interval, Tag
from sijections.sijection import COD, DOM, is_normal, verify


def test_alpha_worked_example():
    a = alpha(1, 5, 3)
    for i in (1, 2, 3):
        assert a(DOM, i) == (COD, Tag(i, 0))
    for i in (4, 5):
        assert a(COD, Tag(i, 0)) == (COD, Tag(i, 1))
        assert a(COD, Tag(i, 1)) == (COD, Tag(i, 0))
    assert verify(a).ok and is_normal(a)[0]
    assert verify(alpha(1, 8, 5)).ok


def test_alpha_pure_retagging_when_ordered():
    a = alpha(1, 2, 3)
    assert [a(DOM, i) for i in (1, 2, 3)] == [(COD, Tag(1, 0)), (COD, Tag(2, 0)), (COD, Tag(3, 1))]


def test_alpha_sizes_case_b_below_a():
    a = alpha(3, 0, 1)
    assert a.domain.size() == -1
    assert a.codomain.size() == Interval(3, 0).size() + Interval(1, 1).size() == -1
    assert verify(a).ok


@pytest.mark.parametrize("abc", list(cube(3, 3)))
def test_alpha_sweep(abc):
    a = alpha(*abc)
    assert verify(a).ok
    assert is_normal(a)[0]


def test_to_empty():
    assert to_empty(0, 0).domain.elements() == []
    assert verify(to_empty(0, 0)).ok
    t = to_empty(0, 1)
    assert t.domain.size() == 0 and t.domain.cardinality() > 0
    assert verify(t).ok
    x = t.domain.elements()[0][0]
    assert t(DOM, t(DOM, x)[1]) == (DOM, x)


@pytest.mark.parametrize("ab", list(cube(3, 2)))
def test_to_empty_sweep(ab):
    assert verify(to_empty(*ab)).ok


def test_beta_trivial_and_small():
    b = beta((), (), 4)
    assert verify(b).ok and b.domain.size() == b.codomain.size() == 1
    # [a1,b1] => [a1,x] ⊔ -[b1+1,x]
    b = beta((2,), (5,), 3)
    assert b.codomain.size() == Interval(2, 3).size() - Interval(6, 3).size()
    assert verify(b).ok


def test_beta_size_two_factors():
    # independent count: corner l_i is a_i (sign +) or b_i+1 (sign -)
    a, b, x = (0, 0), (1, 1), 2
    total = 0
    for l1, s1 in ((a[0], 1), (b[0] + 1, -1)):
        for l2, s2 in ((a[1], 1), (b[1] + 1, -1)):
            total += s1 * s2 * Interval(l1, l2).size() * Interval(l2, x).size()
    assert total == 4
    phi = beta(a, b, x)
    assert phi.domain.size() == phi.codomain.size() == total
    assert verify(phi).ok


@pytest.mark.parametrize("m,radius", [(1, 3), (2, 2), (3, 1)])
def test_beta_sweep(m, radius):
    for a in cube(radius, m):
        for b in cube(radius, m):
            for x in range(-radius, radius + 1):
                phi = beta(a, b, x)
                assert verify(phi).ok, (a, b, x)
                assert is_normal(phi)[0], (a, b, x)


def test_gamma_small_cases():
    g = gamma((3,), 0)
    assert verify(g).ok
    g = gamma((1, 4), 2)
    assert g.codomain.size() == Interval(3, 4).size() + Interval(1, 2).size()
    assert verify(g).ok
    g = gamma((0, 1, 2), 0)
    assert g.domain.size() == g.codomain.size() == 4
    assert verify(g).ok


@pytest.mark.parametrize("n,radius", [(1, 3), (2, 3), (3, 2), (4, 1)])
def test_gamma_sweep(n, radius):
    for k in cube(radius, n):
        for x in range(-radius, radius + 1):
            phi = gamma(k, x)
            assert verify(phi).ok, (k, x)
            assert is_normal(phi)[0], (k, x)


def test_corner_sets_are_tagged_even_when_equal():
    phi = beta((1,), (0,), 3)
    corners = {e.t for e, _ in phi.codomain.elements()}
    assert corners == {(Tag(1, 0),), (Tag(1, 1),)}
