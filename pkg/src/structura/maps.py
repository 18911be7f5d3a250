"""Total maps between finite carriers.

A FiniteMap stores its domain and codomain (both SetV) plus an index table:
idx[i] is the position in the codomain of the image of the i-th domain
element, both in canonical order.  Maps are total by construction; the
index representation makes composition, inversion and equality cheap even
for the large maps produced by canonical extension.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator, Mapping

from .errors import CardinalityMismatch, DomainMismatch, NotASubset, NotBijective, SizeExceeded
from .limits import get_limits
from .values import Pair, SetV, Value, mk_set, render_value


class FiniteMap:
    __slots__ = ("domain", "codomain", "idx", "_inj", "_sur", "_hashv")

    def __init__(self, domain: SetV, codomain: SetV, idx):
        idx = tuple(idx)
        if len(idx) != len(domain.elems):
            raise DomainMismatch("index table length does not match the domain")
        self.domain = domain
        self.codomain = codomain
        self.idx = idx
        self._inj = None
        self._sur = None
        self._hashv = None

    # -- basic protocol ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FiniteMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.idx == other.idx
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        h = self._hashv
        if h is None:
            h = self._hashv = hash((self.domain, self.codomain, self.idx))
        return h

    def __repr__(self):
        pairs = ",".join(
            f"({render_value(x)},{render_value(self.codomain.elems[j])})"
            for x, j in zip(self.domain.elems, self.idx)
        )
        return "{" + pairs + "}"

    # -- queries ----------------------------------------------------------

    def apply(self, v: Value) -> Value:
        try:
            i = self.domain.index_of(v)
        except KeyError:
            raise ValueError(f"{render_value(v)} is not in the domain") from None
        return self.codomain.elems[self.idx[i]]

    def graph(self) -> tuple:
        """The graph as ((x, f(x)), ...) in domain order."""
        cod = self.codomain.elems
        return tuple((x, cod[j]) for x, j in zip(self.domain.elems, self.idx))

    def graph_value(self) -> SetV:
        """The graph as a set of pairs, usable as a structure."""
        cod = self.codomain.elems
        return mk_set(Pair(x, cod[j]) for x, j in zip(self.domain.elems, self.idx))

    @property
    def injective(self) -> bool:
        if self._inj is None:
            self._inj = len(set(self.idx)) == len(self.idx)
        return self._inj

    @property
    def surjective(self) -> bool:
        if self._sur is None:
            self._sur = len(set(self.idx)) == len(self.codomain.elems)
        return self._sur

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def verify_flags(f: FiniteMap) -> bool:
    """Recompute the cached injective/surjective flags from the graph."""
    hits = {j for j in f.idx}
    inj = len(hits) == len(f.idx)
    sur = len(hits) == len(f.codomain.elems)
    return f.injective == inj and f.surjective == sur


def finite_map(domain: SetV, codomain: SetV, assignment) -> FiniteMap:
    """Build a total map from a dict {x: y}, an iterable of (x, y), or a callable."""
    if callable(assignment) and not isinstance(assignment, Mapping):
        mapping = {x: assignment(x) for x in domain.elems}
    elif isinstance(assignment, Mapping):
        mapping = dict(assignment)
    else:
        mapping = {}
        for x, y in assignment:
            if x in mapping and mapping[x] != y:
                raise DomainMismatch(f"two images for {render_value(x)}")
            mapping[x] = y
    idx = []
    for x in domain.elems:
        if x not in mapping:
            raise DomainMismatch(f"no image for {render_value(x)}")
        y = mapping[x]
        try:
            idx.append(codomain.index_of(y))
        except KeyError:
            raise DomainMismatch(f"image {render_value(y)} is outside the codomain") from None
    if len(mapping) != len(domain.elems):
        extra = [x for x in mapping if x not in domain]
        raise DomainMismatch(f"assignment mentions values outside the domain: {extra}")
    return FiniteMap(domain, codomain, idx)


def identity_map(a: SetV) -> FiniteMap:
    return FiniteMap(a, a, range(len(a.elems)))


def compose(g: FiniteMap, f: FiniteMap) -> FiniteMap:
    """g after f; the codomain of f must equal the domain of g exactly."""
    if f.codomain != g.domain:
        raise DomainMismatch("codomain of the inner map differs from the domain of the outer")
    return FiniteMap(f.domain, g.codomain, tuple(g.idx[j] for j in f.idx))


def invert(f: FiniteMap) -> FiniteMap:
    if not f.bijective:
        raise NotBijective("only bijections can be inverted")
    inv = [0] * len(f.idx)
    for i, j in enumerate(f.idx):
        inv[j] = i
    return FiniteMap(f.codomain, f.domain, inv)


def image(f: FiniteMap, s: SetV) -> SetV:
    """Elementwise image f[s] of a subset of the domain."""
    out = []
    cod = f.codomain.elems
    for x in s.elems:
        try:
            i = f.domain.index_of(x)
        except KeyError:
            raise NotASubset(f"{render_value(x)} is not in the domain of the map") from None
        out.append(cod[f.idx[i]])
    return mk_set(out)


def enumerate_bijections(a: SetV, b: SetV) -> Iterator[FiniteMap]:
    """All bijections a -> b in a fixed order.

    The order is: domain in canonical order, codomain positions run through
    itertools.permutations, which is lexicographic.  Two equal empty
    carriers yield exactly the empty map.
    """
    n = len(a.elems)
    if n != len(b.elems):
        raise CardinalityMismatch(f"|A| = {n} but |B| = {len(b.elems)}")
    if n > get_limits().max_bijection_size:
        raise SizeExceeded(f"bijection enumeration over {n} elements exceeds the bound")
    for perm in itertools.permutations(range(n)):
        yield FiniteMap(a, b, perm)


def all_maps(a: SetV, b: SetV) -> Iterator[FiniteMap]:
    """All total maps a -> b, in lexicographic index order."""
    n, m = len(a.elems), len(b.elems)
    if n == 0:
        yield FiniteMap(a, b, ())
        return
    if m == 0:
        return  # no map out of a nonempty set into the empty set
    for idx in itertools.product(range(m), repeat=n):
        yield FiniteMap(a, b, idx)
