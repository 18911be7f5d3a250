"""Hereditarily finite values.

A Value is an atom, an integer, an ordered pair, or a finite set of values.
Pairs are primitive, never encoded as nested sets.  Every value carries a
structural key that induces one global total order:

  * constructor rank first: Atom < Int < Pair < SetV;
  * within a rank: atoms by name, integers numerically, pairs
    lexicographically by (left, right), sets by cardinality first and then
    lexicographically over their ordered elements.

Set elements are kept strictly increasing under that order, so structural
equality coincides with extensional equality and the rendered text of any
value is canonical.  All values are interned: equal values are the same
object, which makes equality, hashing and membership cheap in the big
sweeps.  Values are immutable; sharing them across threads is safe.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .errors import SizeExceeded
from .limits import get_limits

_ATOM, _INT, _PAIR, _SET = 0, 1, 2, 3

_ATOM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# key tuple -> value; the single source of identity for every Value
_intern: dict[tuple, "Value"] = {}


class Value:
    """Base class; construct through Atom, Int, Pair, SetV or mk_set."""

    __slots__ = ("key", "_hash")

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Value) and self.key == other.key

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def __repr__(self):
        return render_value(self)


class Atom(Value):
    __slots__ = ("name",)

    def __new__(cls, name: str):
        key = (_ATOM, name)
        v = _intern.get(key)
        if v is None:
            if not _ATOM_NAME.match(name):
                raise ValueError(f"atom name must be an identifier: {name!r}")
            v = object.__new__(cls)
            v.key = key
            v._hash = hash(key)
            v.name = name
            _intern[key] = v
        return v


class Int(Value):
    __slots__ = ("value",)

    def __new__(cls, value: int):
        key = (_INT, value)
        v = _intern.get(key)
        if v is None:
            v = object.__new__(cls)
            v.key = key
            v._hash = hash(key)
            v.value = value
            _intern[key] = v
        return v


class Pair(Value):
    __slots__ = ("left", "right")

    def __new__(cls, left: Value, right: Value):
        key = (_PAIR, left.key, right.key)
        v = _intern.get(key)
        if v is None:
            v = object.__new__(cls)
            v.key = key
            v._hash = hash(key)
            v.left = left
            v.right = right
            _intern[key] = v
        return v


class SetV(Value):
    __slots__ = ("elems", "_keyset", "_index", "_fn_index")

    def __new__(cls, elems: Iterable[Value] = ()):
        ordered = sorted(set(elems), key=lambda v: v.key)
        return _setv_sorted(ordered)

    # -- set-as-carrier helpers -------------------------------------------

    def __len__(self):
        return len(self.elems)

    def __iter__(self) -> Iterator[Value]:
        return iter(self.elems)

    def __contains__(self, v):
        return isinstance(v, Value) and v.key in self._members()

    def _members(self) -> frozenset:
        ks = self._keyset
        if ks is None:
            ks = self._keyset = frozenset(e.key for e in self.elems)
        return ks

    def index_of(self, v: Value) -> int:
        """Position of v in the canonical element order; KeyError if absent."""
        idx = self._index
        if idx is None:
            idx = self._index = {e.key: i for i, e in enumerate(self.elems)}
        return idx[v.key]

    def fn_index(self) -> dict:
        """left-component key -> list of right components, for pair sets.

        Used by function application on graph-like sets; cached because the
        same table is consulted thousands of times in a sweep.
        """
        fi = self._fn_index
        if fi is None:
            fi = {}
            for e in self.elems:
                if isinstance(e, Pair):
                    fi.setdefault(e.left.key, []).append(e.right)
            self._fn_index = fi
        return fi


def _setv_sorted(ordered: list) -> SetV:
    """Build a SetV from an already sorted, duplicate-free element list."""
    key = (_SET, len(ordered), tuple(e.key for e in ordered))
    v = _intern.get(key)
    if v is None:
        v = object.__new__(SetV)
        v.key = key
        v._hash = hash(key)
        v.elems = tuple(ordered)
        v._keyset = None
        v._index = None
        v._fn_index = None
        _intern[key] = v
    return v


# carriers are just sets; the alias marks intent in signatures
FiniteSet = SetV

EMPTY_SET = SetV(())


def mk_set(elems: Iterable[Value] = ()) -> SetV:
    """Canonicalize an iterable of values into a SetV (sorts, deduplicates)."""
    return SetV(elems)


def value_cmp(a: Value, b: Value) -> int:
    """Three-way comparison in the global structural order: -1, 0 or 1."""
    if a.key == b.key:
        return 0
    return -1 if a.key < b.key else 1


def render_value(v: Value) -> str:
    """Canonical text: atoms bare, integers decimal, pairs (a,b), sets {..}.

    No whitespace; set elements in canonical order.  This rendering is the
    interchange format: equal values render identically byte for byte.
    """
    if isinstance(v, Atom):
        return v.name
    if isinstance(v, Int):
        return str(v.value)
    if isinstance(v, Pair):
        return f"({render_value(v.left)},{render_value(v.right)})"
    if isinstance(v, SetV):
        return "{" + ",".join(render_value(e) for e in v.elems) + "}"
    raise TypeError(f"not a Value: {v!r}")


def powerset(a: SetV) -> SetV:
    """All subsets of a, as a set of sets."""
    n = len(a.elems)
    if 1 << n > get_limits().max_cells:
        raise SizeExceeded(f"powerset of a {n}-element set exceeds the cell bound")
    elems = a.elems
    subsets = []
    for mask in range(1 << n):
        members = [elems[j] for j in range(n) if mask >> j & 1]
        subsets.append(_setv_sorted(members))  # bit order is element order
    subsets.sort(key=lambda s: s.key)
    return _setv_sorted(subsets)


def cartesian(a: SetV, b: SetV) -> SetV:
    """All ordered pairs (x, y) with x in a, y in b."""
    if len(a.elems) * len(b.elems) > get_limits().max_cells:
        raise SizeExceeded("cartesian product exceeds the cell bound")
    pairs = [Pair(x, y) for x in a.elems for y in b.elems]
    return _setv_sorted(pairs)  # row-major over sorted factors is sorted


def set_union(a: SetV, b: SetV) -> SetV:
    return mk_set(a.elems + b.elems)


def is_subset(a: SetV, b: SetV) -> bool:
    return a._members() <= b._members()


def clear_caches() -> None:
    """Drop the intern table (and with it all cached indexes).

    Existing values stay valid: equality falls back to key comparison.
    """
    _intern.clear()
