"""Echelon types and their realization on finite carriers.

An echelon type over n base slots is built from projections pr_i, powerset
P(T) and binary product T1 * T2.  The arity n is part of the type: pr1 over
one slot and pr1 over two slots are different types, and the slot-1
projection of arity 1 doubles as the ambient type of the identity carrier.

Realizing a type on concrete carriers materializes the corresponding set;
`estimated_size` predicts the exact cardinality without materializing, and
`contains_structure` decides membership structurally, so it keeps working
far beyond the materialization bounds.
"""

from __future__ import annotations

from .errors import ArityMismatch, SizeExceeded
from .limits import get_limits
from .values import Pair, SetV, Value, _setv_sorted

# realizations get big; interning type nodes keeps the cache keys cheap
_type_intern: dict[tuple, "EchelonType"] = {}

# exponent cap for estimated_size: beyond this a power-set tower is
# astronomically large and the big int itself becomes unmanageable
_TOWER_CAP = 1 << 26


class EchelonType:
    """Base class; construct through Proj, Pow or Prod."""

    __slots__ = ("key", "_hash", "arity")

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, EchelonType) and self.key == other.key

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .dsl import pretty_type

        return pretty_type(self)


class Proj(EchelonType):
    __slots__ = ("index",)

    def __new__(cls, index: int, arity: int = 1):
        key = ("pr", arity, index)
        t = _type_intern.get(key)
        if t is None:
            if not 1 <= index <= arity:
                raise ValueError(f"projection index {index} outside arity {arity}")
            t = object.__new__(cls)
            t.key = key
            t._hash = hash(key)
            t.arity = arity
            t.index = index
            _type_intern[key] = t
        return t


class Pow(EchelonType):
    __slots__ = ("inner",)

    def __new__(cls, inner: EchelonType):
        key = ("pow", inner.key)
        t = _type_intern.get(key)
        if t is None:
            t = object.__new__(cls)
            t.key = key
            t._hash = hash(key)
            t.arity = inner.arity
            t.inner = inner
            _type_intern[key] = t
        return t


class Prod(EchelonType):
    __slots__ = ("left", "right")

    def __new__(cls, left: EchelonType, right: EchelonType):
        if left.arity != right.arity:
            raise ValueError("product factors must have the same arity")
        key = ("prod", left.key, right.key)
        t = _type_intern.get(key)
        if t is None:
            t = object.__new__(cls)
            t.key = key
            t._hash = hash(key)
            t.arity = left.arity
            t.left = left
            t.right = right
            _type_intern[key] = t
        return t


class Realization:
    """A realized type: the set plus index tables reused by extensions.

    For Pow nodes, `mask_of[p]` gives the bitmask of the p-th subset over
    the base realization, and `pos_of_mask` the inverse table.
    """

    __slots__ = ("set", "base", "left", "right", "mask_of", "pos_of_mask")

    def __init__(self, set_, base=None, left=None, right=None, mask_of=None, pos_of_mask=None):
        self.set = set_
        self.base = base
        self.left = left
        self.right = right
        self.mask_of = mask_of
        self.pos_of_mask = pos_of_mask


_realizations: dict[tuple, Realization] = {}


def _check_arity(t: EchelonType, carriers) -> tuple:
    carriers = tuple(carriers)
    if len(carriers) != t.arity:
        raise ArityMismatch(f"type has arity {t.arity} but {len(carriers)} carriers were given")
    for c in carriers:
        if not isinstance(c, SetV):
            raise TypeError("carriers must be finite sets")
    return carriers


def estimated_size(t: EchelonType, carriers) -> int:
    """Exact cardinality of realize(t, carriers), computed arithmetically."""
    carriers = _check_arity(t, carriers)
    return _size(t, carriers)


def _size(t: EchelonType, carriers) -> int:
    if isinstance(t, Proj):
        return len(carriers[t.index - 1].elems)
    if isinstance(t, Pow):
        inner = _size(t.inner, carriers)
        if inner > _TOWER_CAP:
            raise SizeExceeded("realization size is astronomically large")
        return 1 << inner
    if isinstance(t, Prod):
        return _size(t.left, carriers) * _size(t.right, carriers)
    raise TypeError(f"not an echelon type: {t!r}")


def realization(t: EchelonType, carriers) -> Realization:
    """Memoized realization with index tables; the workhorse behind realize."""
    carriers = _check_arity(t, carriers)
    return _realize(t, carriers)


def realize(t: EchelonType, carriers) -> SetV:
    """Materialize the realization of t on the given carriers."""
    return realization(t, carriers).set


def _realize(t: EchelonType, carriers) -> Realization:
    cache_key = (t, carriers)
    r = _realizations.get(cache_key)
    if r is not None:
        return r
    max_cells = get_limits().max_cells
    if isinstance(t, Proj):
        r = Realization(carriers[t.index - 1])
    elif isinstance(t, Pow):
        base = _realize(t.inner, carriers)
        n = len(base.set.elems)
        if 1 << n > max_cells:
            raise SizeExceeded(f"powerset over a {n}-element realization exceeds the cell bound")
        elems = base.set.elems
        subsets = []
        for mask in range(1 << n):
            members = [elems[j] for j in range(n) if mask >> j & 1]
            subsets.append((_setv_sorted(members), mask))
        subsets.sort(key=lambda sm: sm[0].key)
        mask_of = [mask for _, mask in subsets]
        pos_of_mask = [0] * (1 << n)
        for p, (_, mask) in enumerate(subsets):
            pos_of_mask[mask] = p
        r = Realization(
            _setv_sorted([s for s, _ in subsets]),
            base=base,
            mask_of=mask_of,
            pos_of_mask=pos_of_mask,
        )
    elif isinstance(t, Prod):
        # a factor of size zero empties the product; skip realizing the other
        if _size(t.left, carriers) == 0 or _size(t.right, carriers) == 0:
            r = Realization(SetV(()), left=None, right=None)
        else:
            left = _realize(t.left, carriers)
            right = _realize(t.right, carriers)
            if len(left.set.elems) * len(right.set.elems) > max_cells:
                raise SizeExceeded("product realization exceeds the cell bound")
            pairs = [Pair(x, y) for x in left.set.elems for y in right.set.elems]
            r = Realization(_setv_sorted(pairs), left=left, right=right)
    else:
        raise TypeError(f"not an echelon type: {t!r}")
    _realizations[cache_key] = r
    return r


def contains_structure(t: EchelonType, carriers, s: Value) -> bool:
    """Structural membership of s in the realization of t.

    Recursive on the type, so it never materializes a powerset: a set
    belongs to P(T) iff each element belongs to T.
    """
    carriers = _check_arity(t, carriers)
    return _contains(t, carriers, s)


def _contains(t: EchelonType, carriers, s: Value) -> bool:
    if isinstance(t, Proj):
        return s in carriers[t.index - 1]
    if isinstance(t, Pow):
        if not isinstance(s, SetV):
            return False
        return all(_contains(t.inner, carriers, e) for e in s.elems)
    if isinstance(t, Prod):
        if not isinstance(s, Pair):
            return False
        return _contains(t.left, carriers, s.left) and _contains(t.right, carriers, s.right)
    raise TypeError(f"not an echelon type: {t!r}")


def clear_realization_cache() -> None:
    _realizations.clear()
