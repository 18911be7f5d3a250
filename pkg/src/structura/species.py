"""Species of structures: axioms over a typification, their models on
concrete carriers, isomorphism, and bounded transportability checking.

A species packages a typification with a closed axiom.  Models live on
tuples of finite main carriers; auxiliary carriers are part of the species
and never vary.  Transportability of a formula is checked by exhausting
carriers up to a size bound: the permutations of each canonical carrier
act on the formula's truth set, and the formula is transportable on that
carrier iff the truth set is closed under the action.  Closure under all
permutations of every carrier of a given size is equivalent to the
preserved-iff statement over all bijections between same-size carriers,
because any bijection factors through a relabeling onto the canonical
carrier.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Iterator, Optional

from .echelon import Pow, Prod, Proj, contains_structure, estimated_size, realize
from .errors import NotAStructureOfType, SizeExceeded
from .extension import apply_extension
from .limits import get_limits
from .logic import (
    Const,
    Formula,
    Fst,
    SetRef,
    Snd,
    StructRef,
    Var,
    ForAll,
    Implies,
    Eq,
    and_all,
    associative_rel,
    binary_operation_tables,
    commutative_rel,
    entry,
    evaluate,
    has_inverses_rel,
    has_neutral_rel,
    irreflexive_rel,
    is_operation,
    operation_type,
    pair_of,
    partial_order_rel,
    reflexive_rel,
    relation_type,
    family_type,
    symmetric_rel,
    table_value,
    topology_axioms,
    transitive_rel,
)
from .maps import enumerate_bijections, identity_map
from .transport import Typification, transport
from .values import Atom, Int, Pair, SetV, Value, mk_set, render_value

# ---------------------------------------------------------------------------
# species and models


@dataclass(frozen=True)
class Species:
    name: str
    typification: Typification
    axiom: Formula
    sweep_candidates: Optional[Callable] = field(default=None, compare=False, repr=False)
    candidates_verified: bool = field(default=False, compare=False)
    struct_name: str = "s"
    note: str = ""

    @property
    def n_main(self) -> int:
        return self.typification.n_main


@dataclass(frozen=True)
class Model:
    mains: tuple
    structure: Value

    def __post_init__(self):
        object.__setattr__(self, "mains", tuple(self.mains))


_PREFIXES = "abcdefgh"


def canonical_carrier(k: int, prefix: str = "a") -> SetV:
    """The canonical k-element carrier {a0, .., a(k-1)}."""
    return mk_set(Atom(f"{prefix}{i}") for i in range(k))


def canonical_mains(sizes) -> tuple:
    """One canonical carrier per main slot, on disjoint atom alphabets."""
    return tuple(
        canonical_carrier(k, _PREFIXES[i % len(_PREFIXES)])
        for i, k in enumerate(sizes)
    )


def check_model(species: Species, mains, structure: Value) -> bool:
    """Whether the structure is a model of the species on these carriers.

    Raises NotAStructureOfType when the structure is not even in the
    realization of the species' type; a well-typed structure that fails
    the axiom just returns False.
    """
    typ = species.typification
    carriers = typ.carriers(tuple(mains))
    if not contains_structure(typ.type, carriers, structure):
        raise NotAStructureOfType(
            f"{render_value(structure)} is not of the species' type on the given carriers"
        )
    return evaluate(
        species.axiom, tuple(mains), typ.aux, structure,
        struct_name=species.struct_name,
    )


def enumerate_models(species: Species, mains, *, candidates=None) -> Iterator[Model]:
    """All models on the given carriers, in canonical structure order.

    The search space is the full realization of the species' type; when
    that exceeds the cell budget, the species' candidate generator stands
    in for it (the generator covers every structure that can satisfy the
    axiom).  An explicit `candidates` iterable overrides both; its
    members are type-checked and filtered by the axiom in the order
    given.
    """
    typ = species.typification
    mains = tuple(mains)
    carriers = typ.carriers(mains)
    trusted = False
    if candidates is None:
        try:
            est = estimated_size(typ.type, carriers)
        except SizeExceeded:
            est = None
        if est is not None and est <= get_limits().max_cells:
            candidates = realize(typ.type, carriers).elems
        elif species.sweep_candidates is not None:
            candidates = species.sweep_candidates(carriers)
            trusted = species.candidates_verified
        else:
            raise SizeExceeded(
                f"realization of {species.name} on these carriers exceeds the cell budget"
            )
    for s in candidates:
        if not contains_structure(typ.type, carriers, s):
            raise NotAStructureOfType(
                f"candidate {render_value(s)} is not of the species' type"
            )
        if trusted or evaluate(
            species.axiom, mains, typ.aux, s, struct_name=species.struct_name
        ):
            yield Model(mains, s)


def are_isomorphic(species: Species, m1: Model, m2: Model):
    """First bijection tuple carrying m1's structure onto m2's, else None.

    Enumeration order is the lexicographic product of per-slot bijection
    orders, so the witness is deterministic.
    """
    typ = species.typification
    if len(m1.mains) != typ.n_main or len(m2.mains) != typ.n_main:
        raise ValueError("model carrier count does not match the species")
    if any(len(a) != len(b) for a, b in zip(m1.mains, m2.mains)):
        return None
    if not contains_structure(typ.type, typ.carriers(m2.mains), m2.structure):
        raise NotAStructureOfType("second model's structure is not of the species' type")
    slot_maps = [list(enumerate_bijections(a, b)) for a, b in zip(m1.mains, m2.mains)]
    for fs in itertools.product(*slot_maps):
        if transport(m1.structure, typ, m1.mains, fs) == m2.structure:
            return tuple(fs)
    return None


# ---------------------------------------------------------------------------
# transportability


@dataclass(frozen=True)
class Counterexample:
    mains: tuple
    maps: tuple
    structure: Value
    transported: Value

    def as_dict(self) -> dict:
        return {
            "mains": [render_value(x) for x in self.mains],
            "maps": [
                [[render_value(a), render_value(b)] for a, b in f.graph()]
                for f in self.maps
            ],
            "structure": render_value(self.structure),
            "transported": render_value(self.transported),
        }


@dataclass(frozen=True)
class SweepStats:
    sizes: tuple
    candidates: int
    models: int
    bijection_tuples: int


@dataclass(frozen=True)
class Verdict:
    transportable: bool
    max_size: int
    counterexample: Optional[Counterexample]
    stats: tuple

    def summary(self) -> str:
        if self.transportable:
            return f"verified_up_to({self.max_size})"
        c = self.counterexample
        return (
            f"counterexample on {', '.join(render_value(x) for x in c.mains)}: "
            f"{render_value(c.structure)} -> {render_value(c.transported)}"
        )

    def as_dict(self) -> dict:
        out = {
            "transportable": self.transportable,
            "max_size": self.max_size,
            "stats": [
                {
                    "sizes": list(st.sizes),
                    "candidates": st.candidates,
                    "models": st.models,
                    "bijection_tuples": st.bijection_tuples,
                }
                for st in self.stats
            ],
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.as_dict()
        return out


def _subject_parts(subject):
    formula = getattr(subject, "formula", None)
    if formula is None:
        formula = subject.axiom
    gen = getattr(subject, "sweep_candidates", None)
    verified = getattr(subject, "candidates_verified", False)
    sname = getattr(subject, "struct_name", "s")
    return subject.typification, formula, gen, verified, sname


def check_transportability(subject, max_size: int = 3) -> Verdict:
    """Exhaustive transport check on all carriers up to max_size.

    `subject` is a PropertySpec or a Species; its formula is checked for
    preservation in both directions under every bijection of every main
    carrier combination with sizes 1..max_size.  Verdicts are
    deterministic: sizes ascend lexicographically, permutations and
    structures are tried in canonical order, and the first violation is
    reported with its carrier, maps, structure and transported image.
    """
    typ, formula, gen, verified, sname = _subject_parts(subject)
    stats = []
    for sizes in itertools.product(range(1, max_size + 1), repeat=typ.n_main):
        st, cex = _sweep_one_size(typ, formula, gen, verified, sname, sizes)
        stats.append(st)
        if cex is not None:
            return Verdict(False, max_size, cex, tuple(stats))
    return Verdict(True, max_size, None, tuple(stats))


def _sweep_one_size(typ, formula, gen, verified, sname, sizes):
    mains = canonical_mains(sizes)
    carriers = typ.carriers(mains)
    try:
        est = estimated_size(typ.type, carriers)
    except SizeExceeded:
        est = None
    full_space = est is not None and est <= get_limits().max_cells
    if full_space:
        space = realize(typ.type, carriers).elems
    elif gen is not None:
        space = gen(carriers)
    else:
        raise SizeExceeded(
            f"realization on carriers of sizes {sizes} exceeds the cell budget "
            "and no candidate generator is available"
        )
    # permutation closure of the truth set == preserved-iff under all
    # bijections at this size, since truth sets on any other same-size
    # carriers are relabelings of this one
    truths = []
    n_cand = 0
    if verified and not full_space:
        truths = list(space)
        n_cand = len(truths)
    else:
        for s in space:
            n_cand += 1
            if evaluate(formula, mains, typ.aux, s, struct_name=sname):
                truths.append(s)
    truth_keys = {s.key for s in truths}
    slot_perms = [list(enumerate_bijections(x, x)) for x in mains]
    n_tuples = prod(len(p) for p in slot_perms)
    aux_ids = tuple(identity_map(a) for a in typ.aux_sets)
    st = SweepStats(tuple(sizes), n_cand, len(truths), n_tuples)
    for fs in itertools.product(*slot_perms):
        full = tuple(fs) + aux_ids
        memo: dict = {}
        for s in truths:
            image = apply_extension(typ.type, full, s, memo)
            if image.key not in truth_keys:
                # candidate generators cover the truth set but need not be
                # closed under transport; re-deciding the formula keeps the
                # verdict exact either way
                if not evaluate(formula, mains, typ.aux, image, struct_name=sname):
                    return st, Counterexample(mains, tuple(fs), s, image)
    return st, None


# ---------------------------------------------------------------------------
# builtin species


GF2_SET = mk_set((Int(0), Int(1)))

GF2_ADD = mk_set(
    Pair(Pair(Int(a), Int(b)), Int(a ^ b)) for a in (0, 1) for b in (0, 1)
)
GF2_MUL = mk_set(
    Pair(Pair(Int(a), Int(b)), Int(a & b)) for a in (0, 1) for b in (0, 1)
)


def _abelian_group_neutral(flat, n) -> Optional[int]:
    """Neutral index of the table, or None when it is not an abelian group."""
    e = next(
        (
            c
            for c in range(n)
            if all(flat[c * n + j] == j and flat[j * n + c] == j for j in range(n))
        ),
        None,
    )
    if e is None:
        return None
    rng = range(n)
    for i in rng:
        for j in rng:
            if flat[i * n + j] != flat[j * n + i]:
                return None
            for k in rng:
                if flat[flat[i * n + j] * n + k] != flat[i * n + flat[j * n + k]]:
                    return None
    if any(all(flat[i * n + j] != e for j in rng) for i in rng):
        return None
    return e


def _gf2_candidates(carriers) -> Iterator[Value]:
    """Pairs (addition, scalar action) that can satisfy the axioms.

    The axioms force the addition to be an abelian group table, the
    action of 1 to be the identity and the action of 0 to be constantly
    the additive neutral, so those pairs are the whole search space.
    """
    v = carriers[0]
    elems = v.elems
    n = len(elems)
    zero, one = Int(0), Int(1)
    for flat in itertools.product(range(n), repeat=n * n):
        e = _abelian_group_neutral(flat, n)
        if e is None:
            continue
        smul = [Pair(Pair(zero, x), elems[e]) for x in elems]
        smul += [Pair(Pair(one, x), x) for x in elems]
        yield Pair(table_value(flat, elems), mk_set(smul))


def _op_order_pair_candidates(carriers) -> Iterator[Value]:
    """All (operation table, partial order) pairs; exactly the truth set."""
    x = carriers[0]
    po = partial_order_rel(StructRef(), SetRef("X1"))
    posets = [
        r for r in realize(relation_type(), (x,)).elems if evaluate(po, (x,), None, r)
    ]
    for t in binary_operation_tables(x):
        for r in posets:
            yield Pair(t, r)


def _gf2_axiom() -> Formula:
    s = StructRef()
    a, m = Fst(s), Snd(s)
    X, K = SetRef("X1"), SetRef("K")
    add_c, mul_c = Const(GF2_ADD), Const(GF2_MUL)
    k1, k2, kk = Var("k1"), Var("k2"), Var("kk")
    v, w, u = Var("v"), Var("w"), Var("u")
    l, p, q, r = Var("l"), Var("p"), Var("q"), Var("r")

    # m(k, a(v, w)) = a(m(k, v), m(k, w))
    c = Implies(entry(p, q, r, a), Eq(l, r))
    c = ForAll("r", X, c)
    c = Implies(entry(k1, w, q, m), c)
    c = ForAll("q", X, c)
    c = Implies(entry(k1, v, p, m), c)
    c = ForAll("p", X, c)
    c = Implies(entry(k1, u, l, m), c)
    c = ForAll("l", X, c)
    c = Implies(entry(v, w, u, a), c)
    c = ForAll("u", X, c)
    c = ForAll("w", X, c)
    c = ForAll("v", X, c)
    vec_dist = ForAll("k1", K, c)

    # m(k1 + k2, v) = a(m(k1, v), m(k2, v)), the sum taken in the field
    c = Implies(entry(p, q, r, a), Eq(l, r))
    c = ForAll("r", X, c)
    c = Implies(entry(k2, v, q, m), c)
    c = ForAll("q", X, c)
    c = Implies(entry(k1, v, p, m), c)
    c = ForAll("p", X, c)
    c = Implies(entry(kk, v, l, m), c)
    c = ForAll("l", X, c)
    c = ForAll("v", X, c)
    c = Implies(entry(k1, k2, kk, add_c), c)
    c = ForAll("kk", K, c)
    c = ForAll("k2", K, c)
    scal_dist = ForAll("k1", K, c)

    # m(k1 * k2, v) = m(k1, m(k2, v)), the product taken in the field
    c = Implies(entry(k1, w, r, m), Eq(l, r))
    c = ForAll("r", X, c)
    c = Implies(entry(k2, v, w, m), c)
    c = ForAll("w", X, c)
    c = Implies(entry(kk, v, l, m), c)
    c = ForAll("l", X, c)
    c = ForAll("v", X, c)
    c = Implies(entry(k1, k2, kk, mul_c), c)
    c = ForAll("kk", K, c)
    c = ForAll("k2", K, c)
    scal_assoc = ForAll("k1", K, c)

    unit = ForAll("v", X, entry(Const(Int(1)), v, v, m))

    return and_all(
        is_operation(a, X, X, X),
        associative_rel(a, X),
        commutative_rel(a, X),
        has_inverses_rel(a, X),
        is_operation(m, K, X, X),
        unit,
        vec_dist,
        scal_dist,
        scal_assoc,
    )


_species_cache = None


def builtin_species() -> dict:
    global _species_cache
    if _species_cache is None:
        _species_cache = _build_species()
    return dict(_species_cache)


def _build_species() -> dict:
    s = StructRef()
    X = SetRef("X1")
    rel_typ = Typification(relation_type(), 1)
    op_typ = Typification(operation_type(), 1)
    is_op = is_operation(s, X, X, X)

    def op_cands(carriers):
        return binary_operation_tables(carriers[0])

    # scalar action: subsets of (K x V) x V with K in the auxiliary slot
    pv, pk = Proj(1, 2), Proj(2, 2)
    vadd_t = Pow(Prod(Prod(pv, pv), pv))
    smul_t = Pow(Prod(Prod(pk, pv), pv))
    gf2_typ = Typification(Prod(vadd_t, smul_t), 1, (("K", GF2_SET),))

    species = [
        Species(
            "equivalence_relation",
            rel_typ,
            and_all(reflexive_rel(s, X), symmetric_rel(s, X), transitive_rel(s, X)),
        ),
        Species("partial_order", rel_typ, partial_order_rel(s, X)),
        Species(
            "graph",
            rel_typ,
            and_all(irreflexive_rel(s, X), symmetric_rel(s, X)),
            note="adjacency relation of a simple undirected graph",
        ),
        Species(
            "monoid",
            op_typ,
            and_all(is_op, associative_rel(s, X), has_neutral_rel(s, X)),
            op_cands,
        ),
        Species(
            "group",
            op_typ,
            and_all(is_op, associative_rel(s, X), has_inverses_rel(s, X)),
            op_cands,
        ),
        Species(
            "topological_space",
            Typification(family_type(), 1),
            topology_axioms(s, X),
        ),
        Species(
            "op_order_pair",
            Typification(pair_of(operation_type(), relation_type()), 1),
            and_all(
                is_operation(Fst(s), X, X, X),
                partial_order_rel(Snd(s), X),
            ),
            _op_order_pair_candidates,
            candidates_verified=True,
            note="a binary operation paired with a partial order",
        ),
        Species(
            "gf2_vector_space",
            gf2_typ,
            _gf2_axiom(),
            _gf2_candidates,
            note="two-element scalar field held fixed as an auxiliary carrier",
        ),
    ]
    return {sp.name: sp for sp in species}
