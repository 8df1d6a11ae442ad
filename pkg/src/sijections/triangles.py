"""Monotone triangles, shifted Gelfand-Tsetlin patterns and the sijection
``Gamma: MT(k) => SGT(k)`` between them.

Monotone triangles are tuples of rows, top row first; the last row is the
bottom row ``k``.  Arrow rows are tuples of ``"NW"``, ``"NE"``, ``"NWNE"``.
Arrow patterns of order ``n`` are tuples of ``"SW"``, ``"SE"``, ``"SWSE"``
indexed by the pairs ``p < q`` in lexicographic order (see :func:`pairs`).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .boxes import corner_set
from .codec import FormatError
from .gt import gt_element, gt_rows, gt_set, pi, rho, swapped, tau
from .signed import UNIT, Fam, FiniteSet, Interval, Product, RuleSet, Tag, box, union
from .sijection import (COD, DOM, Fiberwise, Identity, Memoized, Retag, Sijection, compose,
                        inverse, negate, reindex, to_unit_retag)

NW, NE, NWNE = "NW", "NE", "NWNE"
SW, SE, SWSE = "SW", "SE", "SWSE"

UP_ARROWS = FiniteSet("up-arrows", {NW: 1, NE: 1, NWNE: -1})
DOWN_ARROWS = FiniteSet("down-arrows", {SW: 1, SE: 1, SWSE: -1})


def has_nw(a) -> int:
    return 1 if a == NW or a == NWNE else 0


def has_ne(a) -> int:
    return 1 if a == NE or a == NWNE else 0


def has_sw(a) -> int:
    return 1 if a == SW or a == SWSE else 0


def has_se(a) -> int:
    return 1 if a == SE or a == SWSE else 0


_ETA = {SW: NE, SE: NW, SWSE: NWNE, NE: SW, NW: SE, NWNE: SWSE}


def eta(a):
    """Exchange between pattern and row arrows: SW<->NE, SE<->NW, SWSE<->NWNE."""
    return _ETA[a]


# monotone triangles

def interlaces(l, k) -> bool:
    """Whether the row ``l`` (length n-1) may sit above ``k`` (length n)."""
    n = len(k)
    if len(l) != n - 1:
        return False
    for i in range(n - 1):
        lo, hi = (k[i], k[i + 1]) if k[i] <= k[i + 1] else (k[i + 1], k[i])
        if not lo <= l[i] <= hi:
            return False
    # no double touch at a weakly increasing k_i
    for i in range(1, n - 1):
        if k[i - 1] <= k[i] <= k[i + 1] and l[i - 1] == k[i] == l[i]:
            return False
    for i in range(n - 1):
        # k_i > l_i = k_{i+1} forces the next entry to repeat it
        if k[i] > l[i] == k[i + 1] and not (i <= n - 3 and l[i + 1] == l[i]):
            return False
        # k_i = l_i > k_{i+1} forces the previous entry to repeat it
        if k[i] == l[i] > k[i + 1] and not (i >= 1 and l[i - 1] == l[i]):
            return False
    return True


def _row_descents(r) -> int:
    return sum(1 for u, v in zip(r, r[1:]) if u > v)


def _link_sign(l, k) -> int:
    """Sign contributed by the bottom row ``k`` and its link with the row ``l`` above."""
    r = _row_descents(k)
    for j in range(len(k) - 2):
        if k[j] > l[j] == k[j + 1] == l[j + 1] > k[j + 2]:
            r += 1
    return -1 if r % 2 else 1


def mt_sign(rows) -> int:
    s = -1 if _row_descents(rows[0]) % 2 else 1
    for upper, lower in zip(rows, rows[1:]):
        s *= _link_sign(upper, lower)
    return s


def _above(k):
    ranges = [range(min(a, b), max(a, b) + 1) for a, b in zip(k, k[1:])]
    for l in itertools.product(*ranges):
        if interlaces(l, k):
            yield l


@lru_cache(maxsize=None)
def mt_elements(k: tuple):
    """All monotone triangles with bottom row ``k`` and their signs."""
    if len(k) <= 1:
        return [((k,), 1)]
    out = []
    for l in _above(k):
        s = _link_sign(l, k)
        for rows, s2 in mt_elements(l):
            out.append((rows + (k,), s * s2))
    return out


@lru_cache(maxsize=None)
def mt_counts(k: tuple):
    if len(k) <= 1:
        return 1, 0
    pos = neg = 0
    for l in _above(k):
        p, q = mt_counts(l)
        if _link_sign(l, k) > 0:
            pos, neg = pos + p, neg + q
        else:
            pos, neg = pos + q, neg + p
    return pos, neg


def is_monotone_triangle(rows, k) -> bool:
    if not isinstance(rows, tuple) or not rows or rows[-1] != tuple(k):
        return False
    for i, r in enumerate(rows):
        if not isinstance(r, tuple) or len(r) != i + 1:
            return False
    return all(interlaces(u, v) for u, v in zip(rows, rows[1:]))


@lru_cache(maxsize=None)
def mt_set(k: tuple):
    """The signed set ``MT(k)``."""
    k = tuple(k)
    return RuleSet(("MT", k), lambda: mt_elements(k),
                   lambda rows: mt_sign(rows) if is_monotone_triangle(rows, k) else 0,
                   lambda: mt_counts(k))


MT_FAMILY = Fam(lambda l: mt_set(l), ("MT",))


def mt_to_json(rows):
    return {"rows": [list(r) for r in rows]}


def mt_from_json(obj):
    try:
        return tuple(tuple(int(v) for v in r) for r in obj["rows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad triangle: {exc}") from exc


# arrow rows and patterns

@lru_cache(maxsize=None)
def arrow_rows(n: int) -> Product:
    """``AR_n``: rows of ``n`` up-arrows, negative iff the number of NWNE is odd."""
    return Product([UP_ARROWS] * n)


@lru_cache(maxsize=None)
def pairs(n: int):
    return tuple((p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1))


@lru_cache(maxsize=None)
def _pair_index(n: int):
    return {pq: j for j, pq in enumerate(pairs(n))}


@lru_cache(maxsize=None)
def arrow_patterns(n: int) -> Product:
    """``AP_n``: one down-arrow per pair ``p < q``."""
    return Product([DOWN_ARROWS] * (n * (n - 1) // 2))


def pattern_dict(T, n):
    return dict(zip(pairs(n), T))


def pattern_from_dict(t, n):
    return tuple(t[pq] for pq in pairs(n))


@lru_cache(maxsize=None)
def shifts(T: tuple, n: int):
    """``c_i(T) = sum_{j>i} [t_ij has SW] - sum_{j<i} [t_ji has SE]`` for i = 1..n."""
    c = [0] * n
    for (p, q), a in zip(pairs(n), T):
        if a == SW:
            c[p - 1] += 1
        elif a == SE:
            c[q - 1] -= 1
        else:
            c[p - 1] += 1
            c[q - 1] -= 1
    return tuple(c)


def shifted_row(k, T):
    """``d(k, T) = (k_i + c_i(T))_i``."""
    n = len(k)
    return tuple(v + c for v, c in zip(k, shifts(T, n)))


def deformed_box(k, mu):
    """``e(k, mu) = prod_i [k_i + has_ne(mu_i), k_{i+1} - has_nw(mu_{i+1})]``."""
    return box((k[i] + has_ne(mu[i]), k[i + 1] - has_nw(mu[i + 1])) for i in range(len(k) - 1))


@lru_cache(maxsize=None)
def sgt_set(k: tuple):
    """``SGT(k) = ⊔_{T in AP_n} GT(d(k, T))``."""
    k = tuple(k)
    n = len(k)
    return union(arrow_patterns(n), Fam(lambda T: gt_set(shifted_row(k, T)), ("SGT-fiber", k)))


SGT_FAMILY = Fam(lambda l: sgt_set(l), ("SGT",))


@lru_cache(maxsize=None)
def sgt_counts(k: tuple):
    """``(#positive, #negative)`` of ``SGT(k)``, grouping arrow patterns by their shift vector."""
    k = tuple(k)
    n = len(k)
    # weight[c] = (#positive patterns, #negative patterns) with shift vector c
    weight = {(0,) * n: (1, 0)}
    for p, q in pairs(n):
        nxt = {}
        for c, (pos, neg) in weight.items():
            for a, s in DOWN_ARROWS:
                c2 = list(c)
                c2[p - 1] += has_sw(a)
                c2[q - 1] -= has_se(a)
                c2 = tuple(c2)
                p0, n0 = nxt.get(c2, (0, 0))
                nxt[c2] = (p0 + pos, n0 + neg) if s > 0 else (p0 + neg, n0 + pos)
        weight = nxt
    pos = neg = 0
    for c, (wp, wn) in weight.items():
        gp, gn = gt_set(tuple(v + s for v, s in zip(k, c))).counts()
        pos += wp * gp + wn * gn
        neg += wp * gn + wn * gp
    return pos, neg


def sgt_to_json(element, k):
    A, T = element.v, element.t
    return {"gt": {"rows": [list(r) for r in gt_rows(A, shifted_row(k, T))]},
            "pattern": list(T)}


def sgt_from_json(obj, k):
    try:
        T = tuple(obj["pattern"])
        rows = obj["gt"]["rows"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad shifted pattern: {exc}") from exc
    return Tag(gt_element(rows), T)


# Xi: peel off the bottom row

def xi_target(k):
    n = len(k)
    return union(arrow_rows(n),
                 Fam(lambda mu: union(deformed_box(k, mu), MT_FAMILY), ("e-MT", k), memo=True))


def sgt_target(k):
    n = len(k)
    return union(arrow_rows(n),
                 Fam(lambda mu: union(deformed_box(k, mu), SGT_FAMILY), ("e-SGT", k), memo=True))


def _toggle(mu, i, a, b):
    mu = list(mu)
    mu[i] = b if mu[i] == a else a
    return tuple(mu)


class Xi(Sijection):
    """``MT(k) => ⊔_{mu in AR_n} ⊔_{l in e(k, mu)} MT(l)``: drop the bottom row
    and record how the next row touches it in an arrow row."""

    name = "Xi"

    def __init__(self, k):
        self.k = k = tuple(k)
        if len(k) < 2:
            raise ValueError("Xi needs n >= 2")
        super().__init__(mt_set(k), xi_target(k), params={"k": list(k)})

    def arrows_for(self, l):
        k = self.k
        n = len(k)
        mu = [NW] * n
        mu[-1] = NE
        for i in range(1, n - 1):
            if k[i - 1] <= l[i - 1] == k[i]:
                mu[i] = NE
            elif k[i - 1] > l[i - 1] == k[i] == l[i] > k[i + 1]:
                mu[i] = NWNE
        return tuple(mu)

    def __call__(self, side, x):
        k = self.k
        n = len(k)
        if side == DOM:
            l = x[-2]
            mu = self.arrows_for(l)
            if not deformed_box(k, mu).sign_of(l):
                raise AssertionError(f"row {l} not in e({k}, {mu})")
            return COD, Tag(Tag(x[:-1], l), mu)
        inner, mu = x.v, x.t
        l = inner.t
        if mu[0] != NW:
            return COD, Tag(inner, _toggle(mu, 0, NWNE, NE))
        if mu[-1] != NE:
            return COD, Tag(inner, _toggle(mu, n - 1, NWNE, NW))
        fits = interlaces(l, k)
        if not fits:
            for i in range(1, n - 1):
                if k[i - 1] > l[i - 1] == k[i] != l[i]:
                    return COD, Tag(inner, _toggle(mu, i, NWNE, NW))
                if l[i - 1] != k[i] == l[i] > k[i + 1]:
                    return COD, Tag(inner, _toggle(mu, i, NWNE, NE))
        else:
            for i in range(1, n - 1):
                if mu[i] != NW and l[i - 1] != k[i] and not (k[i - 1] <= l[i - 1] == k[i]) and not (
                        k[i - 1] > l[i - 1] == k[i] == l[i] > k[i + 1]):
                    return COD, Tag(inner, _toggle(mu, i, NWNE, NE))
        # Equal neighbours in k leave pairs the rules above miss.  Toggling an
        # arrow keeps l in the deformed box exactly when l avoids the entry
        # it moves, so cancel at the first position where that is possible.
        for i in range(1, n - 1):
            if l[i - 1] != k[i]:
                if mu[i] != NW:
                    return COD, Tag(inner, _toggle(mu, i, NWNE, NE))
            elif l[i] != k[i] and mu[i] != NE:
                return COD, Tag(inner, _toggle(mu, i, NWNE, NW))
        if not fits:
            raise AssertionError(f"no partner for {l} under {k}")
        return DOM, inner.v + (k,)


@lru_cache(maxsize=None)
def xi_sijection(k: tuple) -> Xi:
    return Xi(tuple(k))


# Psi: insert or delete a row and column of an arrow pattern

class Psi(Sijection):
    """``AP_{n-1} => AP_n``: insert row and column ``i`` (SE above, SW to the right)."""

    name = "Psi"

    def __init__(self, n, i):
        if not 1 <= i <= n:
            raise ValueError("Psi needs 1 <= i <= n")
        self.n, self.i = n, i
        super().__init__(arrow_patterns(n - 1), arrow_patterns(n), params={"n": n, "i": i})

    def __call__(self, side, T):
        n, i = self.n, self.i
        if side == DOM:
            t = pattern_dict(T, n - 1)
            out = []
            for p, q in pairs(n):
                if q < i:
                    out.append(t[p, q])
                elif p < i < q:
                    out.append(t[p, q - 1])
                elif i < p:
                    out.append(t[p - 1, q - 1])
                elif q == i:
                    out.append(SE)
                else:
                    out.append(SW)
            return COD, tuple(out)
        idx = _pair_index(n)
        for p in range(1, i):
            j = idx[p, i]
            if T[j] != SE:
                return COD, T[:j] + ((SW if T[j] == SWSE else SWSE),) + T[j + 1:]
        for q in range(i + 1, n + 1):
            j = idx[i, q]
            if T[j] != SW:
                return COD, T[:j] + ((SE if T[j] == SWSE else SWSE),) + T[j + 1:]
        t = pattern_dict(T, n)
        out = []
        for p, q in pairs(n - 1):
            if q < i:
                out.append(t[p, q])
            elif p < i <= q:
                out.append(t[p, q + 1])
            else:
                out.append(t[p + 1, q + 1])
        return DOM, tuple(out)


@lru_cache(maxsize=None)
def psi(n: int, i: int) -> Psi:
    return Psi(n, i)


# Lambda: collapse arrow rows to a point

class Lambda(Sijection):
    """``AR_n => {()}``: the row with ``i`` NW's then NE's survives."""

    name = "Lambda"

    def __init__(self, n, i):
        if not 1 <= i <= n:
            raise ValueError("Lambda needs 1 <= i <= n")
        self.n, self.i = n, i
        self.survivor = (NW,) * i + (NE,) * (n - i)
        super().__init__(arrow_rows(n), UNIT, params={"n": n, "i": i})

    def __call__(self, side, mu):
        if side == COD:
            return DOM, self.survivor
        if mu == self.survivor:
            return COD, ()
        p = next(j for j, (a, b) in enumerate(zip(mu, self.survivor)) if a != b)
        if p < self.i:
            return DOM, _toggle(mu, p, NE, NWNE)
        return DOM, _toggle(mu, p, NW, NWNE)


@lru_cache(maxsize=None)
def lam(n: int, i: int) -> Lambda:
    return Lambda(n, i)


# Phi: the four stages

def _corners(k, mu):
    """``S_i = {k_i + has_ne(mu_i)}+ ⊔ {k_{i+1} - has_nw(mu_{i+1}) + 1}-`` for i = 1..n-1."""
    return tuple((k[i] + has_ne(mu[i]), k[i + 1] - has_nw(mu[i + 1]) + 1)
                 for i in range(len(k) - 1))


def _moved_targets(k, x, mu, T):
    """Bottom rows after the x-transport, for each i = 1..n."""
    n = len(k)
    c = shifts(T, n)
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j < i:
                row.append(k[j - 1] + has_ne(mu[j - 1]) + c[j - 1])
            elif j == i:
                row.append(x + n - i)
            else:
                row.append(k[j - 1] - has_nw(mu[j - 1]) + c[j - 2])
        out.append(tuple(row))
    return out


@lru_cache(maxsize=None)
def _transport(L: tuple, i: int) -> Sijection:
    """``pi`` at positions n-1, n-2, ..., i: moves the last entry of ``L`` to slot ``i``."""
    n = len(L)
    if i == n:
        return Identity(gt_set(L))
    steps = []
    row = L
    for j in range(n - 1, i - 1, -1):
        step = pi(row, j)
        steps.append(step if len(steps) % 2 == 0 else negate(step))
        row = swapped(row, j)
    return Memoized(compose(*steps, check=False, name="transport",
                            params={"L": list(L), "i": i}))


class CornerCancel(Sijection):
    """Third stage of Phi.

    Corner tuples containing a negative corner followed by a positive one
    cancel through ``pi`` at the first such place, exchanging arrows between
    the row and the pattern when the bottom row changes.  The other corner
    tuples are ``0..0 1..1``; there the last entry ``x`` is carried to its slot.
    """

    name = "Phi3"

    def __init__(self, k, x, domain, codomain):
        super().__init__(domain, codomain, params={"k": list(k), "x": x})
        self.k, self.x = k, x

    def _bottom(self, m, T):
        n = len(self.k)
        c = shifts(T, n)
        return tuple(e.v + ci for e, ci in zip(m, c)) + (self.x,)

    def _corner_row(self, mu, i):
        k = self.k
        n = len(k)
        m = []
        for j in range(n - 1):
            if j < i - 1:
                m.append(Tag(k[j] + has_ne(mu[j]), 0))
            else:
                m.append(Tag(k[j + 1] - has_nw(mu[j + 1]) + 1, 1))
        return tuple(m)

    def __call__(self, side, x):
        k = self.k
        n = len(k)
        if side == COD:
            A, i, T, mu = x.v.v.v, x.v.v.t, x.v.t, x.t
            m = self._corner_row(mu, i)
            s, A2 = _transport(self._bottom(m, T), i)(COD, A)
            if s == COD:
                return COD, Tag(Tag(Tag(A2, i), T), mu)
            return DOM, Tag(Tag(Tag(A2, m), T), mu)
        A, m, T, mu = x.v.v.v, x.v.v.t, x.v.t, x.t
        tags = [e.t for e in m]
        for i in range(1, n - 1):
            if tags[i - 1] == 1 and tags[i] == 0:
                break
        else:
            i = tags.count(0) + 1
            s, A2 = _transport(self._bottom(m, T), i)(DOM, A)
            if s == COD:
                return COD, Tag(Tag(Tag(A2, i), T), mu)
            return DOM, Tag(Tag(Tag(A2, m), T), mu)
        L = self._bottom(m, T)
        s, A2 = pi(L, i)(DOM, A)
        if s == DOM:
            return DOM, Tag(Tag(Tag(A2, m), T), mu)
        # the bottom row changed: trade arrows between pattern and row
        t = pattern_dict(T, n)
        t2 = dict(t)
        for j in range(i + 2, n + 1):
            t2[i, j], t2[i + 1, j] = t[i + 1, j], t[i, j]
        for j in range(1, i):
            t2[j, i], t2[j, i + 1] = t[j, i + 1], t[j, i]
        t2[i, i + 1] = eta(mu[i])
        mu2 = list(mu)
        mu2[i] = eta(t[i, i + 1])
        mu2 = tuple(mu2)
        T2 = pattern_from_dict(t2, n)
        m2 = list(m)
        m2[i - 1] = Tag(k[i] - has_nw(mu2[i]) + 1, 1)
        m2[i] = Tag(k[i] + has_ne(mu2[i]), 0)
        m2 = tuple(m2)
        return DOM, Tag(Tag(Tag(A2, m2), T2), mu2)


def _phi_uncached(k, x):
    n = len(k)
    params = {"k": list(k), "x": x}
    AR = arrow_rows(n)
    AP0, AP = arrow_patterns(n - 1), arrow_patterns(n)
    D0 = sgt_target(k)

    # stage 1: swap unions, shift by c(T), apply rho, shift back
    def rho_for(mu, T):
        c = shifts(T, n - 1)
        a = tuple(k[i] + has_ne(mu[i]) + c[i] for i in range(n - 1))
        b = tuple(k[i + 1] - has_nw(mu[i + 1]) + c[i] for i in range(n - 1))
        return rho(a, b, x)

    y1 = Fam(lambda mu: union(AP0, Fam(lambda T: rho_for(mu, T).domain, ("Phi1-dom", k, x, mu))),
             ("Phi1-dom", k, x), memo=True)
    y2 = Fam(lambda mu: union(AP0, Fam(lambda T: rho_for(mu, T).codomain, ("Phi1-cod", k, x, mu))),
             ("Phi1-cod", k, x), memo=True)
    by_rho = Fiberwise(AR, lambda mu: Fiberwise(AP0, lambda T: rho_for(mu, T), y1(mu).family,
                                               y2(mu).family), y1, y2)

    def shift_in(z):
        A, T, l, mu = z.v.v.v, z.v.v.t, z.v.t, z.t
        c = shifts(T, n - 1)
        return Tag(Tag(Tag(A, tuple(v + s for v, s in zip(l, c))), T), mu)

    def shift_in_back(z):
        A, l, T, mu = z.v.v.v, z.v.v.t, z.v.t, z.t
        c = shifts(T, n - 1)
        return Tag(Tag(Tag(A, T), tuple(v - s for v, s in zip(l, c))), mu)

    swap_in = Retag(D0, by_rho.domain, shift_in, shift_in_back)

    def fiber_set(mu, T):
        corners = Product(corner_set(lo, hi) for lo, hi in _corners(k, mu))
        c = shifts(T, n)[:n - 1]
        return union(corners, Fam(lambda m: gt_set(tuple(e.v + s for e, s in zip(m, c)) + (x,)),
                                  ("corner-GT", x, c)))

    xf = {}

    def x_family(mu):
        f = xf.get(mu)
        if f is None:
            f = xf[mu] = Fam(lambda T: fiber_set(mu, T), ("X", k, x, mu), memo=True)
        return f

    X1 = union(AR, Fam(lambda mu: union(AP0, x_family(mu)), ("X1", k, x), memo=True))
    X2 = union(AR, Fam(lambda mu: union(AP, x_family(mu)), ("X2", k, x), memo=True))

    def unshift(z):
        A, m, T, mu = z.v.v.v, z.v.v.t, z.v.t, z.t
        c = shifts(T, n - 1)
        return Tag(Tag(Tag(A, tuple(Tag(e.v - s, e.t) for e, s in zip(m, c))), T), mu)

    def reshift(z):
        A, m, T, mu = z.v.v.v, z.v.v.t, z.v.t, z.t
        c = shifts(T, n - 1)
        return Tag(Tag(Tag(A, tuple(Tag(e.v + s, e.t) for e, s in zip(m, c))), T), mu)

    swap_out = Retag(by_rho.codomain, X1, unshift, reshift)
    phi1 = compose(swap_in, by_rho, swap_out, name="Phi1", params=params)

    # stage 2: grow the arrow pattern with Psi(n, n); fibers agree
    ins = psi(n, n)
    phi2 = Fiberwise(AR, lambda mu: reindex(ins, x_family(mu), x_family(mu)),
                     X1.family, X2.family, name="Phi2", params=params)

    # stage 3: cancel corner tuples, transport x
    def moved_set(mu, T):
        targets = _moved_targets(k, x, mu, T)
        return union(Interval(1, n), Fam(lambda i: gt_set(targets[i - 1]), ("moved", tuple(targets))))

    X3 = union(AR, Fam(lambda mu: union(AP, Fam(lambda T: moved_set(mu, T), ("X3", k, x, mu))),
                       ("X3", k, x), memo=True))
    phi3 = CornerCancel(k, x, X2, X3)

    # stage 4: collapse the arrow row, move the inserted pattern column, undo tau
    def base_row(T, i):
        c = shifts(T, n)
        return tuple(x + n - i if j == i else (k[j - 1] + c[j - 1] if j < i else k[j - 1] + c[j - 2])
                     for j in range(1, n + 1))

    def target_row(T, i):
        d = shifted_row(k, T)
        return d[:i - 1] + (x + n - i,) + d[i:]

    def by_mu(T, i):
        return Fam(lambda mu: gt_set(_moved_targets(k, x, mu, T)[i - 1]), ("by-mu", k, x, T, i))

    Z1 = union(AP, Fam(lambda T: union(Interval(1, n), Fam(lambda i: union(AR, by_mu(T, i)),
                                                          ("Z1i", k, x, T))), ("Z1", k, x)))
    to_z1 = Retag(X3, Z1,
                  lambda z: Tag(Tag(Tag(z.v.v.v, z.t), z.v.v.t), z.v.t),
                  lambda z: Tag(Tag(Tag(z.v.v.v, z.v.t), z.t), z.v.v.t))

    def collapse(T, i):
        base = gt_set(base_row(T, i))
        lifted = reindex(lam(n, i), by_mu(T, i), Fam(lambda _: base, ("const", base.key)))
        return compose(lifted, to_unit_retag(base))

    z2_inner = Fam(lambda T: union(Interval(1, n), Fam(lambda i: gt_set(base_row(T, i)),
                                                       ("base-rows", k, x, T))), ("Z2", k, x))
    collapse_all = Fiberwise(AP, lambda T: Fiberwise(Interval(1, n), lambda i: collapse(T, i),
                                                      Z1.family(T).family, z2_inner(T).family),
                             Z1.family, z2_inner)
    Z3 = union(Interval(1, n), Fam(lambda i: union(AP, Fam(lambda T: gt_set(base_row(T, i)),
                                                          ("Z3", k, x, i))), ("Z3", k, x)))
    swap2 = Retag(collapse_all.codomain, Z3,
                  lambda z: Tag(Tag(z.v.v, z.t), z.v.t),
                  lambda z: Tag(Tag(z.v.v, z.t), z.v.t))

    def move_column(i):
        return reindex(compose(inverse(psi(n, n)), psi(n, i)),
                       Z3.family(i).family,
                       Fam(lambda T: gt_set(target_row(T, i)), ("Z4", k, x, i)))

    moves = Fiberwise(Interval(1, n), move_column, Z3.family,
                      Fam(lambda i: move_column(i).codomain, ("Z4", k, x)))

    def tau_back(T):
        return inverse(tau(shifted_row(k, T), x))

    Z5 = Fam(lambda T: tau_back(T).domain, ("Z5", k, x))
    swap3 = Retag(moves.codomain, union(AP, Z5),
                  lambda z: Tag(Tag(z.v.v, z.t), z.v.t),
                  lambda z: Tag(Tag(z.v.v, z.t), z.v.t))
    untau = Fiberwise(AP, tau_back, Z5, sgt_set(k).family)
    phi4 = compose(to_z1, collapse_all, swap2, moves, swap3, untau, name="Phi4", params=params)
    return compose(phi1, phi2, phi3, phi4, name="Phi", params=params)


@lru_cache(maxsize=None)
def phi(k: tuple, x: int) -> Sijection:
    """``⊔_{mu in AR_n} ⊔_{l in e(k, mu)} SGT(l) => SGT(k)``."""
    return _phi_uncached(tuple(k), x)


class _GammaBase(Sijection):
    name = "Gamma"

    def __init__(self, k, x):
        super().__init__(mt_set(k), sgt_set(k), params={"k": list(k), "x": x})

    def __call__(self, side, e):
        if side == DOM:
            return COD, Tag((), ())
        return DOM, (tuple(self.params["k"]),)


def _gamma_uncached(k, x):
    n = len(k)
    params = {"k": list(k), "x": x}
    if n == 1:
        return _GammaBase(k, x)
    xi_k = xi_sijection(k)
    fam = xi_k.codomain.family
    cod = sgt_target(k)
    inner = Fiberwise(arrow_rows(n),
                      lambda mu: Fiberwise(deformed_box(k, mu), lambda l: gamma_map(l, x),
                                           MT_FAMILY, SGT_FAMILY),
                      fam, cod.family)
    return compose(xi_k, inner, phi(k, x), name="Gamma", params=params)


@lru_cache(maxsize=None)
def _gamma_memo(k: tuple, x: int) -> Sijection:
    return Memoized(_gamma_uncached(k, x))


def gamma_map(k, x) -> Sijection:
    """``Gamma_{k,x}: MT(k) => SGT(k)``, memoized per ``(k, x)``."""
    return _gamma_memo(tuple(k), x)


def gamma_fresh(k, x) -> Sijection:
    """``Gamma_{k,x}`` without a cache on the outermost level (used for verification)."""
    return _gamma_uncached(tuple(k), x)
