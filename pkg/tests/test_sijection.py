import pytest

from sijections.boxes import alpha
from sijections.gt import gt_set, tau
from sijections.signed import BIT, Empty, Fam, Interval, Product, Tag, pair, union
from sijections.sijection import (COD, DOM, ConfigurationError, Fiberwise, Identity,
                                  IterationCapExceeded, Memoized, Retag, Sijection,
                                  UnionSijection, compose, inverse, is_normal, negate,
                                  product_sijection, reindex, verify)


def pointwise_equal(f, g):
    for side, s in ((DOM, f.domain), (COD, f.codomain)):
        for x, _ in s.elements():
            if f(side, x) != g(side, x):
                return False
    return True


def test_identity():
    r = verify(Identity(Interval(1, 2)))
    assert r.ok and r.pair_count == 2
    assert verify(Identity(Empty())).ok
    r = verify(Identity(gt_set((1, 2, 3))))
    assert r.ok and r.pair_count == 8


def test_inverse():
    a = alpha(1, 5, 3)
    inv = inverse(a)
    assert inv.domain == a.codomain and inv.codomain == a.domain
    assert verify(inv).ok
    assert inverse(inv) is a
    s = Interval(1, 3)
    assert pointwise_equal(inverse(Identity(s)), Identity(s))


def test_inverse_of_tau_verifies():
    assert verify(inverse(tau((0, 2, 3), 1))).ok


def test_compose_with_inverse_is_identity():
    a = alpha(1, 5, 3)
    c = compose(a, inverse(a))
    assert verify(c).ok
    assert pointwise_equal(c, Identity(a.domain))
    s = Interval(-1, 2)
    assert pointwise_equal(compose(Identity(s), Identity(s)), Identity(s))


def test_compose_checks_the_middle_set():
    with pytest.raises(ConfigurationError):
        compose(alpha(1, 5, 3), alpha(1, 5, 3))
    with pytest.raises(ConfigurationError):
        compose()


def test_compose_is_associative_on_alpha_chains():
    a = alpha(0, 2, 4)
    b = Retag(a.codomain, Interval(0, 4), lambda z: z.v, lambda x: Tag(x, 0 if x <= 2 else 1))
    c = alpha(0, -1, 4)
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert verify(left).ok
    assert pointwise_equal(left, right)


def test_product_of_identities():
    p = product_sijection(Identity(Interval(0, 1)), Identity(Interval(3, 1)))
    assert pointwise_equal(p, Identity(p.domain))


def test_product_of_alphas():
    p = product_sijection(alpha(1, 2, 3), alpha(0, 0, 1))
    assert p.domain.cardinality() == 6
    r = verify(p)
    assert r.ok


@pytest.mark.parametrize("abc", [(1, 5, 3), (3, 0, 1), (2, -1, 0), (0, 3, 1)])
def test_product_with_cancelling_factors(abc):
    p = product_sijection(alpha(*abc), alpha(abc[2], abc[0], abc[1]), Identity(Interval(2, 0)))
    assert verify(p).ok


def test_union_sijection_with_identity_index():
    fam0 = Fam(lambda t: Interval(t, 3), ("u0",))
    fam1 = Fam(lambda t: alpha(t, 1, 3).codomain, ("u1",))
    u = UnionSijection(Identity(Interval(0, 2)), fam0, fam1,
                       fiber=lambda side, t: alpha(t, 1, 3) if side == DOM else inverse(alpha(t, 1, 3)))
    assert verify(u).ok


def test_union_sijection_over_empty_index():
    fam = Fam(lambda t: Interval(0, 1), ("e",))
    assert verify(UnionSijection(Identity(Empty()), fam, fam)).ok


def test_reindex_along_normal_index_map():
    a = alpha(1, 5, 3)
    dom = Fam(lambda t: Interval(0, 1), ("r0",))
    cod = Fam(lambda t: Interval(0, 1), ("r1",))
    r = reindex(a, dom, cod)
    assert verify(r).ok


def test_fiberwise_and_negation():
    f = Fiberwise(BIT, lambda t: alpha(t, 2, 4), Fam(lambda t: Interval(t, 4), ("f0",)),
                  Fam(lambda t: alpha(t, 2, 4).codomain, ("f1",)))
    assert verify(f).ok
    assert verify(negate(f)).ok
    assert negate(f).domain.size() == -f.domain.size()


def test_memoized_matches_inner():
    a = alpha(2, -1, 4)
    m = Memoized(a)
    assert verify(m).ok
    assert pointwise_equal(m, a)


class Broken(Sijection):
    """alpha(1,5,3) with one orbit cut open."""

    def __init__(self):
        self.inner = alpha(1, 5, 3)
        super().__init__(self.inner.domain, self.inner.codomain, "broken")

    def __call__(self, side, x):
        if side == COD and x == Tag(5, 1):
            return COD, Tag(4, 1)
        return self.inner(side, x)


def test_verify_reports_a_corrupted_map():
    r = verify(Broken())
    assert not r.ok
    assert r.failures
    assert r.to_dict()["failures"][0]["element"]["side"] in ("domain", "codomain")


def test_verify_catches_wrong_signs_and_exceptions():
    s = Interval(1, 2)
    same_side = Retag(s, s, lambda x: x, lambda y: y)
    assert verify(same_side).ok

    class Stay(Sijection):
        def __call__(self, side, x):
            return side, x

    assert not verify(Stay(s, s)).ok

    class Boom(Sijection):
        def __call__(self, side, x):
            raise KeyError(x)

    r = verify(Boom(s, s))
    assert not r.ok and r.failures[0]["problem"] == "exception"


def test_verify_in_parallel_matches_serial():
    phi = tau((1, 2, 3, 5), 0)
    serial, par = verify(phi), verify(phi, jobs=2)
    assert serial.ok and par.ok
    assert serial.to_dict() == par.to_dict()


def test_iteration_cap():
    # neither map ever lets the element leave the middle set
    s = Interval(1, 1)

    class IntoMiddle(Sijection):
        def __call__(self, side, x):
            return COD, x

    class Stay(Sijection):
        def __call__(self, side, x):
            return side, x

    looping = compose(IntoMiddle(s, s), Stay(s, s))
    with pytest.raises(IterationCapExceeded):
        looping(DOM, 1)


def test_normality():
    assert is_normal(alpha(1, 5, 3))[0]
    assert is_normal(Identity(Interval(-2, 3)))[0]
    swap = Retag(Product([Interval(0, 1), Interval(5, 5)]), Product([Interval(5, 5), Interval(0, 1)]),
                 lambda x: (x[1], x[0]), lambda y: (y[1], y[0]))
    assert verify(swap).ok
    assert not is_normal(swap)[0]


def test_pair_sizes_add():
    assert pair(Interval(1, 2), Interval(5, 3)).size() == Interval(1, 2).size() + Interval(5, 3).size()
    assert union(BIT, Fam(lambda t: Interval(0, t), ("tri",))).size() == 3
