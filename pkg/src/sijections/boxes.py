"""Sijections between products of signed intervals.

Every sijection here is normal: it never changes the tuple of integers left
after stripping tags.
"""

from __future__ import annotations

from functools import lru_cache

from .signed import (BIT, Empty, Fam, Interval, Opposite, Product, Singleton, Tag, box, pair,
                     union)
from .sijection import (COD, DOM, Fiberwise, Identity, ProductSijection, Retag, Sijection,
                        compose, negate)


class Alpha(Sijection):
    """``[a, c] => [a, b] ⊔ [b+1, c]`` built from the identity
    ``χ[a,c] = χ[a,b] + χ[b+1,c]`` one integer at a time.

    A member ``x`` of ``[a, c]`` goes to whichever part contains it.  Copies
    of ``x`` that lie in both parts with opposite signs cancel each other.
    """

    name = "alpha"

    def __init__(self, a: int, b: int, c: int):
        self.whole = Interval(a, c)
        self.left = Interval(a, b)
        self.right = Interval(b + 1, c)
        super().__init__(self.whole, pair(self.left, self.right), params={"a": a, "b": b, "c": c})

    def __call__(self, side, x):
        if side == DOM:
            return COD, Tag(x, 0 if self.left.sign_of(x) else 1)
        v = x.v
        if self.whole.sign_of(v):
            return DOM, v
        return COD, Tag(v, 1 - x.t)


@lru_cache(maxsize=None)
def alpha(a: int, b: int, c: int) -> Alpha:
    return Alpha(a, b, c)


class ToEmpty(Sijection):
    """``⊔_{(l1,l2) in [a+1,b+1]x[a,b]} [l1, l2] => ∅``.

    The summand for ``(l1, l2)`` and the one for ``(l2+1, l1-1)`` are the
    same interval with opposite sign, so ``x`` in one cancels ``x`` in the other.
    """

    name = "to_empty"

    def __init__(self, a: int, b: int):
        index = box(((a + 1, b + 1), (a, b)))
        fam = Fam(lambda l: Interval(l[0], l[1]), ("interval",))
        super().__init__(union(index, fam, 1), Empty(1), params={"a": a, "b": b})

    def __call__(self, side, x):
        l1, l2 = x.t
        return DOM, Tag(x.v, (l2 + 1, l1 - 1))


@lru_cache(maxsize=None)
def to_empty(a: int, b: int) -> ToEmpty:
    return ToEmpty(a, b)


def split_box(bounds, cuts, name="split"):
    """Split coordinates of a box with ``alpha`` and distribute.

    ``bounds`` lists the ``(a, c)`` of each factor and ``cuts`` maps a
    coordinate ``j`` to the cut point ``b`` so that ``[a, c]`` becomes
    ``[a, b] ⊔ [b+1, c]``.  The result goes from the box to a union indexed
    by tuples of 0/1 (one per cut coordinate, in increasing order) whose
    parts are the corresponding boxes.  Elements are ``y <-> Tag(y, bits)``.
    """
    bounds = tuple(bounds)
    cut_pos = tuple(sorted(cuts))
    dom = box(bounds)
    factors = []
    for j, (a, c) in enumerate(bounds):
        if j in cuts:
            factors.append(alpha(a, cuts[j], c))
        else:
            factors.append(Identity(Interval(a, c)))
    prod = ProductSijection(factors)

    def part(bits):
        pieces = list(bounds)
        for j, bit in zip(cut_pos, bits):
            a, c = bounds[j]
            pieces[j] = (a, cuts[j]) if bit == 0 else (cuts[j] + 1, c)
        return box(pieces)

    index = Product([BIT] * len(cut_pos))
    target = union(index, Fam(part, ("split-part", bounds, tuple(sorted(cuts.items()))), memo=True),
                   len(bounds))

    def fwd(y):
        bits = tuple(y[j].t for j in cut_pos)
        vals = tuple(e.v if j in cuts else e for j, e in enumerate(y))
        return Tag(vals, bits)

    def bwd(x):
        vals = list(x.v)
        for j, bit in zip(cut_pos, x.t):
            vals[j] = Tag(vals[j], bit)
        return tuple(vals)

    distribute = Retag(prod.codomain, target, fwd, bwd)
    out = compose(prod, distribute, name=name,
                  params={"bounds": [list(p) for p in bounds], "cuts": dict(cuts)})
    assert out.domain == dom
    return out


def corner_set(lo: int, hi_plus_one: int):
    """``({lo}, ∅) ⊔ (∅, {hi_plus_one})``: elements ``Tag(lo, 0)`` (+) and
    ``Tag(hi_plus_one, 1)`` (-)."""
    return pair(Singleton(lo, 1), Singleton(hi_plus_one, -1))


def corner_value(c) -> int:
    return c.v


def chain_box(ls, x):
    """``[l1, l2] x [l2, l3] x ... x [l_m, x]``."""
    ends = tuple(ls) + (x,)
    return box(zip(ends[:-1], ends[1:]))


def beta_codomain(a, b, x):
    corners = Product(corner_set(ai, bi + 1) for ai, bi in zip(a, b))
    fam = Fam(lambda c: chain_box(tuple(e.v for e in c), x), ("chain", x), memo=True)
    return union(corners, fam, len(a))


def _beta_uncached(a, b, x) -> Sijection:
    m = len(a)
    params = {"a": list(a), "b": list(b), "x": x}
    dom = box(zip(a, b))
    cod = beta_codomain(a, b, x)
    if m == 0:
        return Retag(dom, cod, lambda y: Tag((), ()), lambda z: (), name="beta", params=params)
    if m == 1:
        al = alpha(a[0], x, b[0])
        c0, c1 = Tag(a[0], 0), Tag(b[0] + 1, 1)
        into = Retag(dom, al.domain, lambda y: y[0], lambda v: (v,))
        out = Retag(al.codomain, cod,
                    lambda z: Tag((z.v,), (c0,) if z.t == 0 else (c1,)),
                    lambda w: Tag(w.v[0], w.t[0].t))
        return compose(into, al, out, name="beta", params=params)

    # [a1,b1] x (⊔_{S2 x ... } [l2,l3] x ... x [l_m, x])
    inner = beta(a[1:], b[1:], x)
    head = Interval(a[0], b[0])
    step1 = ProductSijection([Identity(head), inner])
    split_in = Retag(dom, step1.domain, lambda y: (y[0], y[1:]), lambda z: (z[0],) + z[1])

    # distribute over the two corners of S2
    rest_corners = Product(corner_set(ai, bi + 1) for ai, bi in zip(a[2:], b[2:]))
    lows = (a[1], b[1] + 1)

    def rest_family(j):
        low = lows[j]
        return union(rest_corners,
                     Fam(lambda c: chain_box((low,) + tuple(e.v for e in c), x),
                         ("chain-tail", low, x), memo=True),
                     m - 1)

    def part(j):
        # the negative corner of S2 flips the sign of its whole part
        p = Product([head, rest_family(j)])
        return p if j == 0 else Opposite(p)

    parts = union(BIT, Fam(part, ("beta-parts", tuple(a), tuple(b), x), memo=True))

    def fwd2(z):
        y1, w = z
        c = w.t
        return Tag((y1, Tag(w.v, c[1:])), c[0].t)

    corner2 = (Tag(a[1], 0), Tag(b[1] + 1, 1))

    def bwd2(u):
        y1, w = u.v
        return (y1, Tag(w.v, (corner2[u.t],) + w.t))

    distribute = Retag(step1.codomain, parts, fwd2, bwd2)

    # split the head [a1,b1] at l2 on each part
    def head_split(j):
        return ProductSijection([alpha(a[0], lows[j], b[0]), Identity(rest_family(j))])

    splits = [head_split(0), negate(head_split(1))]
    step3 = Fiberwise(BIT, splits.__getitem__,
                      parts.family,
                      Fam(lambda j: splits[j].codomain, ("beta-split-cod", tuple(a), tuple(b), x)))

    corner1 = (Tag(a[0], 0), Tag(b[0] + 1, 1))

    def fwd4(u):
        (h, w), j2 = u.v, u.t
        return Tag((h.v,) + w.v, (corner1[h.t], corner2[j2]) + w.t)

    def bwd4(z):
        y, c = z.v, z.t
        return Tag((Tag(y[0], c[0].t), Tag(y[1:], c[2:])), c[1].t)

    final = Retag(step3.codomain, cod, fwd4, bwd4)
    return compose(split_in, step1, distribute, step3, final, name="beta", params=params)


@lru_cache(maxsize=None)
def beta(a: tuple, b: tuple, x: int) -> Sijection:
    """``[a1,b1] x ... x [am,bm] => ⊔_{c in S1 x ... x Sm} [l1,l2] x ... x [lm, x]``
    where ``Si = {ai}+ ⊔ {bi+1}-`` and ``li`` is the value of ``ci``."""
    return _beta_uncached(tuple(a), tuple(b), x)


def gamma_parts(k, x):
    """The boxes ``B_i`` (i = 1..n) and ``C_i`` (i = 1..n-2) of the gamma target."""
    n = len(k)

    def b_part(i):
        kk = list(k)
        kk[i - 1] = x + n - i
        return box(zip(kk[:-1], kk[1:]))

    def c_part(i):
        pieces = [(k[j], k[j + 1]) for j in range(n - 1)]
        pieces[i - 1] = (k[i] + 1, x + n - i - 1)
        pieces[i] = (k[i], x + n - i - 2)
        return box(pieces)

    return b_part, c_part


def gamma_codomain(k, x):
    n = len(k)
    b_part, c_part = gamma_parts(k, x)
    b_union = union(Interval(1, n), Fam(b_part, ("gamma-B", k, x), memo=True), n - 1)
    c_index = Interval(1, n - 2) if n >= 2 else Empty()
    c_union = union(c_index, Fam(c_part, ("gamma-C", k, x), memo=True), n - 1)
    return pair(b_union, c_union)


def _gamma_uncached(k, x) -> Sijection:
    n = len(k)
    params = {"k": list(k), "x": x}
    dom = box(zip(k[:-1], k[1:]))
    cod = gamma_codomain(k, x)
    if n == 1:
        return Retag(dom, cod, lambda y: Tag(Tag((), 1), 0), lambda z: (), name="gamma",
                     params=params)
    if n == 2:
        al = alpha(k[0], x, k[1])
        into = Retag(dom, al.domain, lambda y: y[0], lambda v: (v,))
        out = Retag(al.codomain, cod,
                    lambda z: Tag(Tag((z.v,), 2 if z.t == 0 else 1), 0),
                    lambda w: Tag(w.v.v[0], 0 if w.v.t == 2 else 1))
        return compose(into, al, out, name="gamma", params=params)

    inner = gamma(k[:-1], x + 1)
    last = Interval(k[-2], k[-1])
    step1 = ProductSijection([inner, Identity(last)])
    split_in = Retag(dom, step1.domain, lambda y: (y[:-1], y[-1]), lambda z: z[0] + (z[1],))

    # distribute: (⊔ B'_i ⊔ ⊔ C'_i) x last  ->  ⊔ (B'_i x last) ⊔ ⊔ (C'_i x last)
    b_part, c_part = gamma_parts(k, x)
    # B'_i x last = B_i for i <= n-2 and C'_i x last = C_i for i <= n-3
    mid_b_index = Interval(1, n - 1)
    mid_c_index = Interval(1, n - 3) if n >= 3 else Empty()

    # the three-step expansion acts on B'_{n-1} x [k_{n-1}, k_n]
    bounds = [(k[j], k[j + 1]) for j in range(n - 3)] + [(k[n - 3], x + 1), (k[n - 2], k[n - 1])]

    def mid_b(i):
        return box(bounds) if i == n - 1 else b_part(i)

    mid = pair(union(mid_b_index, Fam(mid_b, ("gamma-midB", k, x), memo=True), n - 1),
               union(mid_c_index, Fam(c_part, ("gamma-C", k, x), memo=True), n - 1))

    def fwd2(z):
        w, y = z
        return Tag(Tag(w.v.v + (y,), w.v.t), w.t)

    def bwd2(u):
        z, j = u.v, u.t
        return (Tag(Tag(z.v[:-1], z.t), j), z.v[-1])

    distribute = Retag(step1.codomain, mid, fwd2, bwd2)

    first_split = split_box(bounds, {n - 2: x})
    second_split = split_box([p for p in bounds[:-1]] + [(k[n - 2], x)], {n - 3: k[n - 2]})
    keep = Identity(first_split.codomain.family((1,)))

    def second_phi(bits):
        return second_split if bits == (0,) else keep

    step_b = Fiberwise(first_split.codomain.index, second_phi,
                       first_split.codomain.family,
                       Fam(lambda bits: second_phi(bits).codomain, ("gamma-3step", k, x)))
    flat = {0: 0, 1: 1}  # (j1, j2=0) -> 0 for B_n, 1 for C_{n-2}; j2=1 -> 2 for B_{n-1}
    three = union(Interval(0, 2), Fam(lambda p: (b_part(n), c_part(n - 2), b_part(n - 1))[p],
                                      ("gamma-three", k, x), memo=True), n - 1)

    def fwd3(u):
        if u.t == (1,):
            return Tag(u.v, 2)
        w = u.v
        return Tag(w.v, flat[w.t[0]])

    def bwd3(z):
        if z.t == 2:
            return Tag(z.v, (1,))
        return Tag(Tag(z.v, (z.t,)), (0,))

    regroup = Retag(step_b.codomain, three, fwd3, bwd3)
    expand = compose(first_split, step_b, regroup)

    b_phi = {i: Identity(mid_b(i)) for i in range(1, n - 1)}
    b_phi[n - 1] = expand
    b_side = Fiberwise(mid_b_index, b_phi.__getitem__, mid.family(0).family,
                       Fam(lambda i: b_phi[i].codomain, ("gamma-bside", k, x)))
    c_side = Identity(mid.family(1))
    both = (b_side, c_side)
    step3 = Fiberwise(BIT, both.__getitem__, mid.family,
                      Fam(lambda j: both[j].codomain, ("gamma-step3", k, x)))
    where = {0: (n, 0), 1: (n - 2, 1), 2: (n - 1, 0)}
    back = {v: p for p, v in where.items()}

    def fwd4(u):
        z, j = u.v, u.t
        if j == 0 and z.t == n - 1:
            i, j2 = where[z.v.t]
            return Tag(Tag(z.v.v, i), j2)
        return u

    def bwd4(u):
        z, j = u.v, u.t
        p = back.get((z.t, j))
        if p is not None:
            return Tag(Tag(Tag(z.v, p), n - 1), 0)
        return u

    final = Retag(step3.codomain, cod, fwd4, bwd4)
    return compose(split_in, step1, distribute, step3, final, name="gamma", params=params)


@lru_cache(maxsize=None)
def gamma(k: tuple, x: int) -> Sijection:
    """``[k1,k2] x ... x [k_{n-1},k_n] => ⊔_{i=1..n} B_i ⊔ ⊔_{i=1..n-2} C_i``.

    ``B_i`` is the box of ``k`` with ``k_i`` replaced by ``x+n-i``; ``C_i``
    is the box with factors ``i, i+1`` replaced by
    ``[k_{i+1}+1, x+n-i-1] x [k_{i+1}, x+n-i-2]``.  The ``B`` part is
    tagged 0 and the ``C`` part 1.
    """
    return _gamma_uncached(tuple(k), x)
