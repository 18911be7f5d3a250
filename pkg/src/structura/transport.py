"""Transport of structures along bijections.

A typification fixes the echelon type of a structure over n main carriers
plus a list of named auxiliary carriers.  Transport pushes a structure of
that type through the canonical extension of the given bijections, with
the auxiliary carriers held fixed by identity maps.  The typification is
mandatory: the same set transports differently under different types, so
nothing is ever transported "as a bare set".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .echelon import EchelonType, contains_structure
from .errors import ArityMismatch, DomainMismatch, NotAStructureOfType, NotBijective
from .extension import apply_extension
from .maps import FiniteMap, identity_map, invert
from .values import SetV, Value, render_value


@dataclass(frozen=True)
class Typification:
    """Echelon type plus the split of its slots into main and auxiliary.

    Slots 1..n_main are the main carriers; the remaining slots are the
    auxiliary carriers, bound here by name with their concrete sets.
    Auxiliary carriers never move under transport.
    """

    type: EchelonType
    n_main: int
    aux: tuple = field(default_factory=tuple)  # ((name, SetV), ...)

    def __post_init__(self):
        if self.n_main < 1:
            raise ValueError("a typification needs at least one main slot")
        object.__setattr__(self, "aux", tuple(self.aux))
        for name, a in self.aux:
            if not isinstance(a, SetV):
                raise TypeError(f"auxiliary carrier {name} must be a finite set")
        if self.type.arity != self.n_main + len(self.aux):
            raise ArityMismatch(
                f"type arity {self.type.arity} != {self.n_main} main + {len(self.aux)} auxiliary slots"
            )

    @property
    def aux_sets(self) -> tuple:
        return tuple(a for _, a in self.aux)

    def carriers(self, mains) -> tuple:
        mains = tuple(mains)
        if len(mains) != self.n_main:
            raise ArityMismatch(f"{self.n_main} main carriers expected, got {len(mains)}")
        return mains + self.aux_sets


def _check_bijections(typ: Typification, mains, fs) -> tuple:
    fs = tuple(fs)
    mains = tuple(mains)
    if len(fs) != typ.n_main:
        raise ArityMismatch(f"{typ.n_main} bijections expected, got {len(fs)}")
    for i, (f, x) in enumerate(zip(fs, mains), start=1):
        if f.domain != x:
            raise DomainMismatch(f"bijection {i} is not defined on main carrier {i}")
        if not f.bijective:
            raise NotBijective(f"map {i} is not a bijection")
    return fs


def transport(s: Value, typ: Typification, mains, fs) -> Value:
    """Transport s along the bijections fs, auxiliaries fixed."""
    mains = tuple(mains)
    fs = _check_bijections(typ, mains, fs)
    carriers = typ.carriers(mains)
    if not contains_structure(typ.type, carriers, s):
        raise NotAStructureOfType(
            f"{render_value(s)} is not a structure of the stated type on the given carriers"
        )
    full = fs + tuple(identity_map(a) for a in typ.aux_sets)
    return apply_extension(typ.type, full, s)


def transport_back(s2: Value, typ: Typification, mains, fs) -> Value:
    """Transport s2 back along the inverses of fs; inverse of `transport`."""
    mains = tuple(mains)
    fs = _check_bijections(typ, mains, fs)
    image_mains = tuple(f.codomain for f in fs)
    inverses = tuple(invert(f) for f in fs)
    return transport(s2, typ, image_mains, inverses)
