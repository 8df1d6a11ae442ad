"""Sijections between signed sets and the ways of combining them.

A sijection ``phi: S => T`` is an involution on the disjoint union of the
elements of ``S`` and ``T`` that swaps ``S+ ⊔ T-`` with ``S- ⊔ T+``.  It is
called as ``phi(side, x)`` with ``side`` 0 for ``S`` and 1 for ``T`` and
returns the ``(side, element)`` of the partner.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import asdict, dataclass, field

from .signed import Empty, Fam, Opposite, SignedSet, Tag, UNIT, union

DOM, COD = 0, 1


class ConfigurationError(ValueError):
    """Sijections were combined whose sets do not line up."""


class IterationCapExceeded(RuntimeError):
    """A composition did not terminate within the cardinality bound."""


class Sijection:
    """Base class; subclasses implement ``__call__(side, x)``."""

    name = "sijection"

    def __init__(self, domain: SignedSet, codomain: SignedSet, name=None, params=None):
        self.domain = domain
        self.codomain = codomain
        if name is not None:
            self.name = name
        self.params = dict(params or {})

    def __call__(self, side, x):
        raise NotImplementedError

    def forward(self, x):
        return self(DOM, x)

    def backward(self, y):
        return self(COD, y)

    def side_set(self, side) -> SignedSet:
        return self.codomain if side else self.domain

    def __repr__(self):
        return f"<{self.name} {self.params}>"


class Identity(Sijection):
    name = "identity"

    def __init__(self, s: SignedSet):
        super().__init__(s, s)

    def __call__(self, side, x):
        return 1 - side, x


class Retag(Sijection):
    """Bijection between two presentations of the same signed set.

    ``fwd`` maps domain elements to codomain elements and ``bwd`` is its
    inverse; both default to the identity on elements.
    """

    name = "retag"

    def __init__(self, domain, codomain, fwd=None, bwd=None, name=None, params=None):
        super().__init__(domain, codomain, name, params)
        self.fwd = fwd
        self.bwd = bwd

    def __call__(self, side, x):
        if side:
            return DOM, (x if self.bwd is None else self.bwd(x))
        return COD, (x if self.fwd is None else self.fwd(x))


class Inverse(Sijection):
    def __init__(self, inner: Sijection):
        super().__init__(inner.codomain, inner.domain, "inverse(" + inner.name + ")", inner.params)
        self.inner = inner

    def __call__(self, side, x):
        s, y = self.inner(1 - side, x)
        return 1 - s, y


def inverse(phi: Sijection) -> Sijection:
    if isinstance(phi, Inverse):
        return phi.inner
    return Inverse(phi)


class Negation(Sijection):
    """``-phi: -S => -T`` acts exactly like ``phi``."""

    def __init__(self, inner: Sijection):
        super().__init__(Opposite(inner.domain), Opposite(inner.codomain),
                         "negate(" + inner.name + ")", inner.params)
        self.inner = inner

    def __call__(self, side, x):
        return self.inner(side, x)


def negate(phi: Sijection) -> Sijection:
    return Negation(phi)


class Composition(Sijection):
    """Garsia-Milne composition of ``first: S => T`` and ``second: T => U``."""

    def __init__(self, first: Sijection, second: Sijection, check=True, name=None, params=None):
        if check and first.codomain != second.domain:
            raise ConfigurationError(
                f"cannot compose {first.name} with {second.name}: "
                f"{first.codomain!r} != {second.domain!r}")
        super().__init__(first.domain, second.codomain,
                         name or f"{second.name}∘{first.name}", params)
        self.first = first
        self.second = second
        self._cap = None

    def cap(self):
        if self._cap is None:
            self._cap = (self.first.domain.cardinality() + self.first.codomain.cardinality()
                         + self.second.codomain.cardinality() + 1)
        return self._cap

    def _overrun(self, side, x, steps):
        if steps > 64 and steps > self.cap():
            raise IterationCapExceeded(
                f"{self.name}: no exit after {steps} steps from side {side} element {x!r}")

    def __call__(self, side, x):
        f, g = self.first, self.second
        steps = 0
        if side == DOM:
            s, y = f(DOM, x)
            if s == DOM:
                return DOM, y
            while True:
                s, y = g(DOM, y)
                if s == COD:
                    return COD, y
                s, y = f(COD, y)
                if s == DOM:
                    return DOM, y
                steps += 1
                if steps > 64:
                    self._overrun(side, x, steps)
        else:
            s, y = g(COD, x)
            if s == COD:
                return COD, y
            while True:
                s, y = f(COD, y)
                if s == DOM:
                    return DOM, y
                s, y = g(DOM, y)
                if s == COD:
                    return COD, y
                steps += 1
                if steps > 64:
                    self._overrun(side, x, steps)


def compose(*phis: Sijection, check=True, name=None, params=None) -> Sijection:
    """Compose left to right: ``compose(f, g)`` applies ``f`` first."""
    if not phis:
        raise ConfigurationError("nothing to compose")
    out = phis[0]
    for g in phis[1:]:
        out = Composition(out, g, check=check)
    if name is not None:
        out.name = name
    if params is not None:
        out.params = dict(params)
    return out


class ProductSijection(Sijection):
    """Coordinatewise product of sijections ``phi_i: S_i => T_i``.

    Coordinates are tried in order.  The first one whose partner stays on
    the same side is the only one that changes; if every coordinate crosses
    over, all of them change and the element crosses over.
    """

    def __init__(self, factors, name=None, params=None):
        from .signed import Product
        self.factors = tuple(factors)
        super().__init__(Product(f.domain for f in self.factors),
                         Product(f.codomain for f in self.factors), name or "product", params)
        self._moving = [i for i, f in enumerate(self.factors) if not isinstance(f, Identity)]

    def __call__(self, side, x):
        factors = self.factors
        crossed = list(x)
        for i in self._moving:
            s, y = factors[i](side, x[i])
            if s == side:
                stay = list(x)
                stay[i] = y
                return side, tuple(stay)
            crossed[i] = y
        return 1 - side, tuple(crossed)


def product_sijection(*factors: Sijection) -> Sijection:
    return ProductSijection(factors)


class UnionSijection(Sijection):
    """Disjoint-union sijection over an index sijection ``psi: T => T~``.

    ``fiber(side, t)`` gives ``phi: S_t => S_psi(t)`` for the index element
    ``t`` on ``side``; ``None`` means the identity (the fibers coincide).
    """

    def __init__(self, psi: Sijection, dom_family: Fam, cod_family: Fam, fiber=None,
                 name=None, params=None, dimension=None):
        super().__init__(union(psi.domain, dom_family, dimension),
                         union(psi.codomain, cod_family, dimension),
                         name or "union(" + psi.name + ")", params)
        self.psi = psi
        self.fiber = fiber

    def __call__(self, side, x):
        s, t = x.v, x.t
        ts, t2 = self.psi(side, t)
        if self.fiber is None:
            return ts, Tag(s, t2)
        phi = self.fiber(side, t)
        if phi is None:
            return ts, Tag(s, t2)
        rs, s2 = phi(DOM, s)
        if rs == DOM:
            return side, Tag(s2, t)
        return ts, Tag(s2, t2)


def reindex(psi: Sijection, dom_family: Fam, cod_family: Fam, name=None, params=None):
    """Union sijection with identity fibers; valid when fibers agree along ``psi``."""
    return UnionSijection(psi, dom_family, cod_family, None, name, params)


class Fiberwise(Sijection):
    """``⊔_t phi_t: ⊔_t S_t => ⊔_t T_t`` over a fixed index set."""

    def __init__(self, index: SignedSet, phi_of, dom_family: Fam, cod_family: Fam,
                 name=None, params=None):
        super().__init__(union(index, dom_family), union(index, cod_family),
                         name or "fiberwise", params)
        self.phi_of = phi_of

    def __call__(self, side, x):
        t = x.t
        s, y = self.phi_of(t)(side, x.v)
        return s, Tag(y, t)


class Memoized(Sijection):
    """Cache every call of an inner sijection (both directions of each pair)."""

    def __init__(self, inner: Sijection):
        super().__init__(inner.domain, inner.codomain, inner.name, inner.params)
        self.inner = inner
        self.cache = {}

    def __call__(self, side, x):
        key = (side, x)
        hit = self.cache.get(key)
        if hit is None:
            hit = self.inner(side, x)
            self.cache[key] = hit
            self.cache[hit] = key
        return hit


def to_unit_retag(s: SignedSet) -> Sijection:
    """Retag the one-point union ``⊔_{t in UNIT} S`` down to ``S``."""
    return Retag(union(UNIT, Fam(lambda t: s, ("const", s.key))), s,
                 lambda x: x.v, lambda y: Tag(y, ()))


def empty_sijection() -> Sijection:
    return Identity(Empty())


# verification

@dataclass
class VerifyReport:
    name: str
    params: dict
    domain_size: tuple
    codomain_size: tuple
    ok: bool
    pair_count: int = 0
    failures: list = field(default_factory=list)

    def to_dict(self):
        d = asdict(self)
        d["domain_size"] = list(self.domain_size)
        d["codomain_size"] = list(self.codomain_size)
        return d


def _class_of(side, sign):
    # +1 for S+ ⊔ T-, -1 for S- ⊔ T+
    return sign if side == DOM else -sign


_WORKER_PHI = None
_WORKER_ITEMS = None


def _images_chunk(bounds):
    lo, hi = bounds
    out = []
    for side, x, _ in _WORKER_ITEMS[lo:hi]:
        try:
            out.append(_WORKER_PHI(side, x))
        except Exception as exc:  # reported as a failure by the caller
            out.append(("error", f"{type(exc).__name__}: {exc}"))
    return out


def _compute_images(phi, items, jobs):
    global _WORKER_PHI, _WORKER_ITEMS
    if jobs <= 1 or len(items) < 2 * jobs:
        _WORKER_PHI, _WORKER_ITEMS = phi, items
        try:
            return _images_chunk((0, len(items)))
        finally:
            _WORKER_PHI = _WORKER_ITEMS = None
    _WORKER_PHI, _WORKER_ITEMS = phi, items
    step = -(-len(items) // (4 * jobs))
    bounds = [(i, min(i + step, len(items))) for i in range(0, len(items), step)]
    try:
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            chunks = pool.map(_images_chunk, bounds)
    finally:
        _WORKER_PHI = _WORKER_ITEMS = None
    return [y for chunk in chunks for y in chunk]


def verify(phi: Sijection, max_failures: int = 10, jobs: int = 1) -> VerifyReport:
    """Exhaustively check that ``phi`` is a sijection between its sets."""
    dom = dict(phi.domain.elements())
    cod = dict(phi.codomain.elements())
    sides = (dom, cod)
    items = [(DOM, x, s) for x, s in dom.items()] + [(COD, y, s) for y, s in cod.items()]
    failures = []

    def fail(msg):
        if len(failures) < max_failures:
            failures.append(msg)

    images = _compute_images(phi, items, jobs)
    image_of = {}
    for (side, x, sign), img in zip(items, images):
        if img[0] == "error":
            fail({"element": _show(side, x), "problem": "exception", "detail": img[1]})
            continue
        s2, y = img
        if s2 not in (DOM, COD):
            fail({"element": _show(side, x), "problem": "bad side", "detail": repr(s2)})
            continue
        sign2 = sides[s2].get(y, 0)
        if not sign2:
            fail({"element": _show(side, x), "problem": "image not a member",
                  "detail": _show(s2, y)})
            continue
        if _class_of(s2, sign2) != -_class_of(side, sign):
            fail({"element": _show(side, x), "problem": "image has the wrong sign",
                  "detail": _show(s2, y)})
            continue
        image_of[(side, x)] = (s2, y)
    if not failures:
        for key, img in image_of.items():
            if image_of.get(img) != key:
                fail({"element": _show(*key), "problem": "not an involution",
                      "detail": _show(*img)})
    ok = not failures
    return VerifyReport(
        name=phi.name, params=_jsonable(phi.params),
        domain_size=phi.domain.counts(), codomain_size=phi.codomain.counts(),
        ok=ok, pair_count=(len(items) // 2) if ok else 0, failures=failures)


def _show(side, x):
    from .codec import element_to_json
    return {"side": "domain" if side == DOM else "codomain", "element": element_to_json(x)}


def _jsonable(params):
    out = {}
    for k, v in params.items():
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def is_normal(phi: Sijection, max_failures: int = 10):
    """True when ``phi`` preserves the tag-stripping projection on every element.

    Returns ``(ok, failures)``.
    """
    dom, cod = phi.domain, phi.codomain
    if dom.dimension is not None and cod.dimension is not None and dom.dimension != cod.dimension:
        return False, [f"dimensions differ: {dom.dimension} vs {cod.dimension}"]
    failures = []
    for side, s in ((DOM, dom), (COD, cod)):
        for x, _ in s.elements():
            s2, y = phi(side, x)
            if s.xi(x) != phi.side_set(s2).xi(y):
                failures.append((side, x, s2, y))
                if len(failures) >= max_failures:
                    return False, failures
    return not failures, failures
