"""Finite signed sets.

A signed set is a pair of disjoint finite sets, the positive and the
negative elements.  Elements are built from three kinds of values: ints,
tuples of elements (members of Cartesian products) and :class:`Tag` pairs
(members of disjoint unions).  Arrow symbols are plain strings.
"""

from __future__ import annotations

import itertools
from functools import cached_property


class NotElementary(ValueError):
    """Raised when the tag-stripping projection is asked of a non-elementary set."""


class Tag:
    """Element ``v`` of the fiber sitting over index element ``t``.

    A tag never compares equal to a plain tuple, so ``Tag(1, 0) != (1, 0)``.
    """

    __slots__ = ("v", "t", "_hash")

    def __init__(self, v, t):
        self.v = v
        self.t = t
        self._hash = None

    def __eq__(self, other):
        if other.__class__ is not Tag:
            return False
        return self is other or (self.t == other.t and self.v == other.v)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((0x7A6, self.v, self.t))
        return h

    def __repr__(self):
        return f"Tag({self.v!r}, {self.t!r})"

    def __reduce__(self):
        return (Tag, (self.v, self.t))


class Fam:
    """A family of signed sets ``t -> S_t`` identified by a hashable key."""

    __slots__ = ("fn", "key", "_memo")

    def __init__(self, fn, key, memo=False):
        self.fn = fn
        self.key = key
        self._memo = {} if memo else None

    def __call__(self, t):
        memo = self._memo
        if memo is None:
            return self.fn(t)
        s = memo.get(t)
        if s is None:
            s = memo[t] = self.fn(t)
        return s


class SignedSet:
    """Base class. Subclasses define iteration, membership and a structural key."""

    def __iter__(self):
        """Yield ``(element, sign)`` pairs in a deterministic order."""
        raise NotImplementedError

    def sign_of(self, x) -> int:
        """Return +1 or -1 for members and 0 for non-members."""
        raise NotImplementedError

    def __contains__(self, x):
        return self.sign_of(x) != 0

    def _key(self):
        raise NotImplementedError

    @cached_property
    def key(self):
        return self._key()

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, SignedSet) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def elements(self):
        """All elements with signs, as a list (cached per set)."""
        cache = self.__dict__.get("_elements")
        if cache is None:
            cache = self.__dict__["_elements"] = list(self)
        return cache

    def counts(self):
        """Return ``(#positive, #negative)``."""
        cache = self.__dict__.get("_counts")
        if cache is None:
            cache = self.__dict__["_counts"] = self._counts()
        return cache

    def _counts(self):
        pos = neg = 0
        for _, s in self:
            if s > 0:
                pos += 1
            else:
                neg += 1
        return pos, neg

    def size(self) -> int:
        """Signed size: positives minus negatives."""
        pos, neg = self.counts()
        return pos - neg

    def cardinality(self) -> int:
        pos, neg = self.counts()
        return pos + neg

    # elementary structure
    dimension = None
    depth = None

    def xi(self, x):
        """Strip all tags from ``x``, returning a tuple of ints."""
        raise NotElementary(f"{type(self).__name__} is not elementary")

    def __repr__(self):
        return f"<{type(self).__name__} {self.key!r}>"


class Interval(SignedSet):
    """Signed interval ``[a, b]``.

    For ``a <= b`` this is ``{a..b}`` with all elements positive.  For
    ``a > b`` it is ``{b+1..a-1}`` with all elements negative, so that the
    indicator is ``[x >= a] - [x >= b+1]`` and the size is ``b - a + 1``.
    """

    dimension = 1
    depth = 0

    def __init__(self, a: int, b: int):
        self.a, self.b = a, b
        if a <= b:
            self.lo, self.hi, self.sign = a, b, 1
        else:
            self.lo, self.hi, self.sign = b + 1, a - 1, -1

    def __iter__(self):
        s = self.sign
        for x in range(self.lo, self.hi + 1):
            yield x, s

    def sign_of(self, x):
        if x.__class__ is int and self.lo <= x <= self.hi:
            return self.sign
        return 0

    def _counts(self):
        n = max(0, self.hi - self.lo + 1)
        return (n, 0) if self.sign > 0 else (0, n)

    def _key(self):
        return ("I", self.a, self.b)

    def xi(self, x):
        return (x,)


class Singleton(SignedSet):
    """A one-element signed set."""

    depth = 0

    def __init__(self, element, sign: int = 1):
        self.element = element
        self.sign = sign

    def __iter__(self):
        yield self.element, self.sign

    def sign_of(self, x):
        return self.sign if x == self.element else 0

    def _counts(self):
        return (1, 0) if self.sign > 0 else (0, 1)

    def _key(self):
        return ("S", self.element, self.sign)

    @property
    def dimension(self):
        e = self.element
        if e.__class__ is int:
            return 1
        if e.__class__ is tuple and all(v.__class__ is int for v in e):
            return len(e)
        return None

    def xi(self, x):
        if self.dimension is None:
            return super().xi(x)
        return x if x.__class__ is tuple else (x,)


class Empty(SignedSet):
    """The empty signed set.  ``dimension`` may be pinned for normality checks."""

    depth = 0

    def __init__(self, dimension=None):
        self.dimension = dimension

    def __iter__(self):
        return iter(())

    def sign_of(self, x):
        return 0

    def _counts(self):
        return 0, 0

    def _key(self):
        return ("E",)


class Opposite(SignedSet):
    """``-S``: positive and negative parts swapped."""

    def __init__(self, inner: SignedSet):
        self.inner = inner

    def __iter__(self):
        for x, s in self.inner:
            yield x, -s

    def sign_of(self, x):
        return -self.inner.sign_of(x)

    def _counts(self):
        pos, neg = self.inner.counts()
        return neg, pos

    def _key(self):
        return ("O", self.inner.key)

    @property
    def dimension(self):
        return self.inner.dimension

    @property
    def depth(self):
        return self.inner.depth

    def xi(self, x):
        return self.inner.xi(x)


class Product(SignedSet):
    """Cartesian product; elements are tuples and signs multiply."""

    def __init__(self, factors):
        self.factors = tuple(factors)

    def __iter__(self):
        lists = [f.elements() for f in self.factors]
        for combo in itertools.product(*lists):
            s = 1
            for _, fs in combo:
                s *= fs
            yield tuple(e for e, _ in combo), s

    def sign_of(self, x):
        fs = self.factors
        if x.__class__ is not tuple or len(x) != len(fs):
            return 0
        s = 1
        for f, e in zip(fs, x):
            s *= f.sign_of(e)
            if not s:
                return 0
        return s

    def _counts(self):
        pos, neg = 1, 0
        for f in self.factors:
            p, n = f.counts()
            pos, neg = pos * p + neg * n, pos * n + neg * p
        return pos, neg

    def _key(self):
        return ("P",) + tuple(f.key for f in self.factors)

    @property
    def dimension(self):
        dims = [f.dimension for f in self.factors]
        return None if None in dims else sum(dims)

    @property
    def depth(self):
        depths = [f.depth for f in self.factors]
        return None if None in depths else max(depths, default=0)

    def xi(self, x):
        out = ()
        for f, e in zip(self.factors, x):
            out += f.xi(e)
        return out


class DisjointUnion(SignedSet):
    """``⊔_{t in T} S_t``; the element ``s`` of ``S_t`` becomes ``Tag(s, t)``
    with sign ``sign(s) * sign(t)``."""

    def __init__(self, index: SignedSet, family: Fam, dimension=None):
        self.index = index
        self.family = family
        self._dimension = dimension

    def __iter__(self):
        fam = self.family
        for t, st in self.index.elements():
            if st > 0:
                for s, ss in fam(t).elements():
                    yield Tag(s, t), ss
            else:
                for s, ss in fam(t).elements():
                    yield Tag(s, t), -ss

    def sign_of(self, x):
        if x.__class__ is not Tag:
            return 0
        st = self.index.sign_of(x.t)
        if not st:
            return 0
        return st * self.family(x.t).sign_of(x.v)

    def _counts(self):
        pos = neg = 0
        fam = self.family
        for t, st in self.index.elements():
            p, n = fam(t).counts()
            if st > 0:
                pos += p
                neg += n
            else:
                pos += n
                neg += p
        return pos, neg

    def _key(self):
        return ("U", self.index.key, self.family.key)

    @property
    def dimension(self):
        if self._dimension is not None:
            return self._dimension
        dims = {self.family(t).dimension for t, _ in self.index.elements()}
        if len(dims) == 1:
            return dims.pop()
        return None

    @property
    def depth(self):
        depths = [self.family(t).depth for t, _ in self.index.elements()]
        if None in depths or self.index.depth != 0:
            return None
        return 1 + max(depths, default=0)

    def xi(self, x):
        return self.family(x.t).xi(x.v)


class FiniteSet(SignedSet):
    """An explicitly listed signed set, for example the three arrow symbols."""

    depth = None

    def __init__(self, name: str, table):
        self.name = name
        self.table = dict(table)

    def __iter__(self):
        return iter(self.table.items())

    def sign_of(self, x):
        try:
            return self.table.get(x, 0)
        except TypeError:
            return 0

    def _key(self):
        return ("F", self.name)


class RuleSet(SignedSet):
    """A signed set given by an enumerator and a sign rule (a ``Family`` set)."""

    def __init__(self, key, enumerate_fn, sign_fn, counts_fn=None):
        self._rule_key = key
        self._enumerate = enumerate_fn
        self._sign = sign_fn
        self._counts_fn = counts_fn

    def __iter__(self):
        return iter(self._enumerate())

    def sign_of(self, x):
        return self._sign(x)

    def _counts(self):
        if self._counts_fn is not None:
            return self._counts_fn()
        return super()._counts()

    def _key(self):
        return ("R", self._rule_key)


UNIT = Singleton((), 1)
"""The one-point set ``({()}, {})``: the empty product and the bullet element."""

BIT = Interval(0, 1)


def interval(a: int, b: int) -> Interval:
    return Interval(a, b)


def product(*factors: SignedSet) -> Product:
    return Product(factors)


def box(pairs) -> Product:
    """Product of signed intervals ``[a1,b1] x ... x [am,bm]``."""
    return Product(Interval(a, b) for a, b in pairs)


def union(index: SignedSet, family: Fam, dimension=None) -> DisjointUnion:
    return DisjointUnion(index, family, dimension)


def pair(first: SignedSet, second: SignedSet) -> DisjointUnion:
    """Binary disjoint union: ``Tag(s, 0)`` for the first part, ``Tag(t, 1)`` for the second."""
    parts = (first, second)
    dims = {first.dimension, second.dimension}
    dim = dims.pop() if len(dims) == 1 else None
    return DisjointUnion(BIT, Fam(parts.__getitem__, ("pair", first.key, second.key)), dim)


def opposite(s: SignedSet) -> SignedSet:
    return s.inner if isinstance(s, Opposite) else Opposite(s)


def size(s: SignedSet) -> int:
    return s.size()


def enumerate_signed(s: SignedSet):
    """List of ``(element, sign)`` in the canonical order."""
    return s.elements()


def xi(s: SignedSet, x):
    return s.xi(x)


def strip_tags(x):
    """Tag-stripping projection on raw elements: ints become 1-tuples,
    tuples concatenate, tags keep only their value part."""
    while x.__class__ is Tag:
        x = x.v
    if x.__class__ is int:
        return (x,)
    if x.__class__ is tuple:
        out = ()
        for e in x:
            out += strip_tags(e)
        return out
    raise NotElementary(f"cannot project {x!r}")
