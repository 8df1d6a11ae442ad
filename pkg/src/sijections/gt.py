"""Signed Gelfand-Tsetlin patterns and the sijections that move their bottom rows.

``gt_set(k)`` is defined recursively: a single point for ``len(k) <= 1``,
otherwise the union over ``l`` in ``[k1,k2] x ... x [k_{n-1},k_n]`` of
``gt_set(l)``.  An element is therefore a nest
``Tag(...Tag(Tag((), row_1), row_2)..., row_{n-1})`` holding every row but
the bottom one.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .boxes import beta, gamma, split_box, to_empty
from .codec import FormatError
from .signed import BIT, UNIT, Empty, Fam, Interval, Opposite, Tag, box, union
from .sijection import COD, DOM, Retag, Sijection, compose, reindex


def gt_box(k):
    return box(zip(k[:-1], k[1:]))


GT_FAMILY = Fam(lambda l: gt_set(l), ("GT",))


@lru_cache(maxsize=None)
def gt_set(k: tuple):
    """The signed set ``GT(k)`` of Gelfand-Tsetlin patterns with bottom row ``k``."""
    k = tuple(k)
    if len(k) <= 1:
        return UNIT
    return union(gt_box(k), GT_FAMILY, len(k) * (len(k) - 1) // 2)


def gt_counts(k) -> tuple:
    return gt_set(tuple(k)).counts()


def gt_size(k) -> int:
    return gt_set(tuple(k)).size()


def gt_polynomial(k) -> int:
    """``prod_{i<j} (k_j - k_i + j - i) / (j - i)``, evaluated exactly."""
    n = len(k)
    value = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            value *= Fraction(k[j] - k[i] + j - i, j - i)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral value {value} for {k}")
    return int(value)


# rows <-> elements

def gt_rows(element, k):
    """Rows of a pattern, top row first, ending with ``k``."""
    rows = [tuple(k)]
    e = element
    while e.__class__ is Tag:
        rows.append(e.t)
        e = e.v
    if e != ():
        raise FormatError(f"not a pattern element: {element!r}")
    rows.reverse()
    return rows


def gt_element(rows):
    """Inverse of :func:`gt_rows`; ``rows`` runs from the top row to the bottom row."""
    rows = [tuple(r) for r in rows]
    for i, r in enumerate(rows):
        if len(r) != i + 1:
            raise FormatError(f"row {i + 1} has length {len(r)}, expected {i + 1}")
    e = ()
    for r in rows[:-1]:
        e = Tag(e, r)
    return e


def gt_sign(rows) -> int:
    """``(-1)^(number of strict descents inside rows)``."""
    d = sum(1 for r in rows for u, v in zip(r, r[1:]) if u > v)
    return -1 if d % 2 else 1


def gt_pattern_ok(rows) -> bool:
    """Two-sided interlacing check between consecutive rows."""
    for upper, lower in zip(rows, rows[1:]):
        for i, l in enumerate(upper):
            if not Interval(lower[i], lower[i + 1]).sign_of(l):
                return False
    return True


def gt_to_json(element, k):
    return {"rows": [list(r) for r in gt_rows(element, k)]}


def gt_from_json(obj):
    try:
        rows = [tuple(int(v) for v in r) for r in obj["rows"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad pattern: {exc}") from exc
    element = gt_element(rows)
    if not gt_pattern_ok(rows):
        raise FormatError("rows are not a Gelfand-Tsetlin pattern")
    return element, rows[-1] if rows else ()


# moving the bottom row

NEG_GT_FAMILY = Fam(lambda l: Opposite(gt_set(l)), ("-GT",))


def _xi_gt_family(index, tag):
    return Fam(lambda t: gt_set(index.xi(t)), ("GT∘xi", tag, index.key))


def _rho_uncached(a, b, x):
    m = len(a)
    params = {"a": list(a), "b": list(b), "x": x}
    dom = union(box(zip(a, b)), GT_FAMILY)
    bt = beta(a, b, x)
    corners = bt.codomain.index
    cod_family = Fam(lambda c: gt_set(tuple(e.v for e in c) + (x,)), ("GT-corner", x))
    cod = union(corners, cod_family)
    if m == 0:
        return Retag(dom, cod, name="rho", params=params)
    lifted = reindex(bt, GT_FAMILY, _xi_gt_family(bt.codomain, "rho"))
    regroup = Retag(lifted.codomain, cod,
                    lambda z: Tag(Tag(z.v, z.t.v), z.t.t),
                    lambda u: Tag(u.v.v, Tag(u.v.t, u.t)))
    return compose(lifted, regroup, name="rho", params=params)


@lru_cache(maxsize=None)
def rho(a: tuple, b: tuple, x: int) -> Sijection:
    """``⊔_{l in [a1,b1]x...x[am,bm]} GT(l) => ⊔_{c in S1x...xSm} GT(l1..lm, x)``."""
    return _rho_uncached(tuple(a), tuple(b), x)


def swapped(k, i):
    """``k`` with ``(k_i, k_{i+1})`` replaced by ``(k_{i+1}+1, k_i-1)`` (1-based ``i``)."""
    k = list(k)
    k[i - 1], k[i] = k[i] + 1, k[i - 1] - 1
    return tuple(k)


class _PartsToTarget(Sijection):
    """Sends the surviving part of a split onto its own name and the other
    parts to the empty set through sigma."""

    def __init__(self, domain, codomain, keep, cancel, params):
        super().__init__(domain, codomain, "pi-parts", params)
        self.keep = keep
        self.cancel = cancel

    def __call__(self, side, x):
        if side == COD:
            return DOM, Tag(x, self.keep)
        bits = x.t
        if bits == self.keep:
            return COD, x.v
        _, y = self.cancel[bits](DOM, x.v)
        return DOM, Tag(y, bits)


def _pi_uncached(k, i):
    n = len(k)
    params = {"k": list(k), "i": i}
    k2 = swapped(k, i)
    dom = gt_set(k)
    cod = Opposite(gt_set(k2))
    if n == 2:
        return Retag(dom, cod, name="pi", params=params)
    # factor i of the box read as -[k_{i+1}+1, k_i-1]
    bounds = [(k[j], k[j + 1]) for j in range(n - 1)]
    bounds[i - 1] = (k[i] + 1, k[i - 1] - 1)
    flipped = union(box(bounds), NEG_GT_FAMILY)
    start = Retag(dom, flipped)
    cuts = {}
    if i >= 2:
        cuts[i - 2] = k[i] + 1          # [k_{i-1}, k_i] at k_{i+1}+1
    if i <= n - 2:
        cuts[i] = k[i - 1] - 2          # [k_{i+1}, k_{i+2}] at k_i-2
    nu = split_box(bounds, cuts)
    lifted = reindex(nu, NEG_GT_FAMILY, Fam(lambda t: Opposite(gt_set(t.v)), ("-GT∘xi",)))
    parts = nu.codomain
    regrouped = union(parts.index, Fam(lambda bits: union(parts.family(bits), NEG_GT_FAMILY),
                                       ("pi-regroup", parts.key)))
    regroup = Retag(lifted.codomain, regrouped,
                    lambda z: Tag(Tag(z.v, z.t.v), z.t.t),
                    lambda u: Tag(u.v.v, Tag(u.v.t, u.t)))
    # which part is GT(k') and where the others cancel
    if i == 1:
        keep = (1,)
        where = {(0,): 1}
    elif i == n - 1:
        keep = (0,)
        where = {(1,): n - 2}
    else:
        keep = (0, 1)
        where = {(0, 0): i, (1, 1): i - 1, (1, 0): i - 1}
    cancel = {}
    for bits, at in where.items():
        piece = parts.family(bits)
        a = tuple(f.a for f in piece.factors)
        b = tuple(f.b for f in piece.factors)
        cancel[bits] = sigma(a, b, at)
    finish = _PartsToTarget(regrouped, cod, keep, cancel, params)
    return compose(start, lifted, regroup, finish, name="pi", params=params)


@lru_cache(maxsize=None)
def pi(k: tuple, i: int) -> Sijection:
    """``GT(k) => -GT(k')`` with ``k' = swapped(k, i)`` (1-based ``i``).

    Applying ``pi(k', i)`` to a partner in ``GT(k')`` gives back the original
    pattern, which is what makes :class:`Sigma` an involution.
    """
    return _pi_uncached(tuple(k), i)


class Sigma(Sijection):
    """``⊔_{l in [a1,b1]x...x[an,bn]} GT(l) => ∅`` when
    ``a_{i+1} = a_i - 1`` and ``b_{i+1} = b_i - 1``.

    ``Tag(A, l)`` is paired through ``pi(l, i)``: if the partner of ``A``
    stays in ``GT(l)`` the index is kept, otherwise it moves to ``l'``.
    """

    name = "sigma"

    def __init__(self, a, b, i):
        n = len(a)
        if not 1 <= i <= n - 1 or a[i] != a[i - 1] - 1 or b[i] != b[i - 1] - 1:
            raise ValueError(f"sigma needs a_(i+1) = a_i - 1 and b_(i+1) = b_i - 1 at i={i}")
        super().__init__(union(box(zip(a, b)), GT_FAMILY), Empty(),
                         params={"a": list(a), "b": list(b), "i": i})
        self.i = i

    def __call__(self, side, x):
        l = x.t
        s, y = pi(l, self.i)(DOM, x.v)
        if s == DOM:
            return DOM, Tag(y, l)
        return DOM, Tag(y, swapped(l, self.i))


@lru_cache(maxsize=None)
def sigma(a: tuple, b: tuple, i: int) -> Sijection:
    a, b = tuple(a), tuple(b)
    if len(a) == 2:
        te = to_empty(a[1], b[1])
        params = {"a": list(a), "b": list(b), "i": i}
        dom = union(box(zip(a, b)), GT_FAMILY)
        into = Retag(dom, te.domain, lambda z: Tag(z.v.t[0], z.t),
                     lambda w: Tag(Tag((), (w.v,)), w.t))
        return compose(into, te, Retag(te.codomain, Empty()), name="sigma", params=params,
                       check=False)
    return Sigma(a, b, i)


def moved(k, x):
    """The bottom rows ``k`` with ``k_i`` replaced by ``x+n-i``, for ``i = 1..n``."""
    n = len(k)
    return [tuple(x + n - i if j == i - 1 else v for j, v in enumerate(k))
            for i in range(1, n + 1)]


def tau_codomain(k, x):
    targets = moved(k, x)
    return union(Interval(1, len(k)), Fam(lambda i: gt_set(targets[i - 1]), ("GT-moved", k, x)))


class _TauFinish(Sijection):
    def __init__(self, domain, codomain, cancel, params):
        super().__init__(domain, codomain, "tau-finish", params)
        self.cancel = cancel

    def __call__(self, side, x):
        if side == COD:
            return DOM, Tag(x, 0)
        if x.t == 0:
            return COD, x.v
        inner = x.v
        _, y = self.cancel[inner.t](DOM, inner.v)
        return DOM, Tag(Tag(y, inner.t), 1)


def _tau_uncached(k, x):
    n = len(k)
    params = {"k": list(k), "x": x}
    dom = gt_set(k)
    cod = tau_codomain(k, x)
    if n == 1:
        return Retag(dom, cod, lambda e: Tag(e, 1), lambda z: z.v, name="tau", params=params)
    g = gamma(k, x)
    lifted = reindex(g, GT_FAMILY, _xi_gt_family(g.codomain, "tau"))
    gcod = g.codomain
    b_union, c_union = gcod.family(0), gcod.family(1)
    grouped_b = union(b_union.index, Fam(lambda i: union(b_union.family(i), GT_FAMILY),
                                         ("tau-B", k, x)))
    grouped_c = union(c_union.index, Fam(lambda i: union(c_union.family(i), GT_FAMILY),
                                         ("tau-C", k, x)))
    grouped = union(BIT, Fam((grouped_b, grouped_c).__getitem__, ("tau-grouped", k, x)))
    regroup = Retag(lifted.codomain, grouped,
                    lambda z: Tag(Tag(Tag(z.v, z.t.v.v), z.t.v.t), z.t.t),
                    lambda u: Tag(u.v.v.v, Tag(Tag(u.v.v.t, u.v.t), u.t)))
    cancel = {}
    for i, _ in c_union.index.elements():
        piece = c_union.family(i)
        cancel[i] = sigma(tuple(f.a for f in piece.factors), tuple(f.b for f in piece.factors), i)
    finish = _TauFinish(grouped, cod, cancel, params)
    return compose(Retag(dom, lifted.domain), lifted, regroup, finish, name="tau", params=params)


@lru_cache(maxsize=None)
def tau(k: tuple, x: int) -> Sijection:
    """``GT(k) => ⊔_{i=1..n} GT(k with k_i replaced by x+n-i)``; part ``i`` is tagged ``i``."""
    return _tau_uncached(tuple(k), x)
