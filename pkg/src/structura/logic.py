"""First-order formulas over finite interpretations.

Terms denote values; formulas denote truth under an interpretation that
binds the main carriers (named X1..Xn by default), the named auxiliary
carriers, and the structure symbol.  Quantifiers range over terms that
denote finite sets, so evaluation is total and decidable by enumeration.

Function application on a pair-set is defined only where exactly one pair
matches the argument; anything else raises ApplyUndefined rather than
evaluating to false, so operationhood stays expressible as a membership
formula that guards later clauses.  Connectives evaluate left to right and
short-circuit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .echelon import EchelonType, Pow, Prod, Proj
from .errors import ApplyUndefined, CaptureDetected, EvaluationError
from .transport import Typification
from .values import (
    EMPTY_SET,
    Int,
    Pair,
    SetV,
    Value,
    cartesian,
    mk_set,
    powerset,
    render_value,
)

# ---------------------------------------------------------------------------
# terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    value: Value


@dataclass(frozen=True)
class PairT(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Fst(Term):
    inner: Term


@dataclass(frozen=True)
class Snd(Term):
    inner: Term


@dataclass(frozen=True)
class SetRef(Term):
    """Reference to a carrier by name: a main slot (X1..Xn) or an auxiliary."""

    name: str


@dataclass(frozen=True)
class StructRef(Term):
    """The structure symbol."""

    name: str = "s"


@dataclass(frozen=True)
class PowT(Term):
    """Powerset of a set-denoting term, usable as a quantifier domain."""

    inner: Term


@dataclass(frozen=True)
class ProdT(Term):
    """Cartesian product of two set-denoting terms."""

    left: Term
    right: Term


# ---------------------------------------------------------------------------
# formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: str
    domain: Term
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    domain: Term
    body: Formula


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Member(Formula):
    left: Term
    right: Term


# ---------------------------------------------------------------------------
# evaluation

_MISSING = object()


def evaluate(phi: Formula, mains, aux=None, structure: Optional[Value] = None,
             *, main_names=None, struct_name: str = "s") -> bool:
    """Truth of phi with mains bound to X1..Xn, auxiliaries by name.

    `main_names` overrides the default slot names (useful after renaming).
    """
    mains = tuple(mains)
    if main_names is None:
        main_names = tuple(f"X{i}" for i in range(1, len(mains) + 1))
    names = {}
    for n, x in zip(main_names, mains):
        names[n] = x
    if aux:
        items = aux.items() if hasattr(aux, "items") else aux
        for n, x in items:
            if n in names:
                raise ValueError(f"carrier name {n} bound twice")
            names[n] = x
    env: dict = {}
    return _eval_formula(phi, env, names, struct_name, structure)


def _eval_term(t: Term, env, names, sname, s) -> Value:
    if isinstance(t, Var):
        v = env.get(t.name, _MISSING)
        if v is _MISSING:
            raise EvaluationError(f"unbound variable {t.name}")
        return v
    if isinstance(t, Const):
        return t.value
    if isinstance(t, PairT):
        return Pair(_eval_term(t.left, env, names, sname, s),
                    _eval_term(t.right, env, names, sname, s))
    if isinstance(t, StructRef):
        if t.name != sname or s is None:
            raise EvaluationError(f"no structure bound to symbol {t.name}")
        return s
    if isinstance(t, SetRef):
        x = names.get(t.name)
        if x is None:
            raise EvaluationError(f"no carrier named {t.name}")
        return x
    if isinstance(t, App):
        fn = _eval_term(t.fn, env, names, sname, s)
        arg = _eval_term(t.arg, env, names, sname, s)
        if not isinstance(fn, SetV):
            raise EvaluationError("application target does not denote a set")
        matches = fn.fn_index().get(arg.key, ())
        if len(matches) != 1:
            raise ApplyUndefined(
                f"application undefined at {render_value(arg)}: "
                f"{len(matches)} matching pairs"
            )
        return matches[0]
    if isinstance(t, Fst):
        v = _eval_term(t.inner, env, names, sname, s)
        if not isinstance(v, Pair):
            raise EvaluationError("fst of a non-pair")
        return v.left
    if isinstance(t, Snd):
        v = _eval_term(t.inner, env, names, sname, s)
        if not isinstance(v, Pair):
            raise EvaluationError("snd of a non-pair")
        return v.right
    if isinstance(t, PowT):
        v = _eval_term(t.inner, env, names, sname, s)
        if not isinstance(v, SetV):
            raise EvaluationError("powerset of a non-set")
        return powerset(v)
    if isinstance(t, ProdT):
        a = _eval_term(t.left, env, names, sname, s)
        b = _eval_term(t.right, env, names, sname, s)
        if not isinstance(a, SetV) or not isinstance(b, SetV):
            raise EvaluationError("product of non-sets")
        return cartesian(a, b)
    raise TypeError(f"not a term: {t!r}")


def _eval_formula(phi: Formula, env, names, sname, s) -> bool:
    if isinstance(phi, Member):
        v = _eval_term(phi.left, env, names, sname, s)
        d = _eval_term(phi.right, env, names, sname, s)
        if not isinstance(d, SetV):
            raise EvaluationError("membership in a non-set")
        return v.key in d._members()
    if isinstance(phi, Eq):
        return _eval_term(phi.left, env, names, sname, s) == _eval_term(
            phi.right, env, names, sname, s
        )
    if isinstance(phi, ForAll):
        d = _eval_term(phi.domain, env, names, sname, s)
        if not isinstance(d, SetV):
            raise EvaluationError("quantifier domain is not a set")
        prev = env.get(phi.var, _MISSING)
        try:
            for v in d.elems:
                env[phi.var] = v
                if not _eval_formula(phi.body, env, names, sname, s):
                    return False
            return True
        finally:
            if prev is _MISSING:
                env.pop(phi.var, None)
            else:
                env[phi.var] = prev
    if isinstance(phi, Exists):
        d = _eval_term(phi.domain, env, names, sname, s)
        if not isinstance(d, SetV):
            raise EvaluationError("quantifier domain is not a set")
        prev = env.get(phi.var, _MISSING)
        try:
            for v in d.elems:
                env[phi.var] = v
                if _eval_formula(phi.body, env, names, sname, s):
                    return True
            return False
        finally:
            if prev is _MISSING:
                env.pop(phi.var, None)
            else:
                env[phi.var] = prev
    if isinstance(phi, Implies):
        if not _eval_formula(phi.left, env, names, sname, s):
            return True
        return _eval_formula(phi.right, env, names, sname, s)
    if isinstance(phi, And):
        return _eval_formula(phi.left, env, names, sname, s) and _eval_formula(
            phi.right, env, names, sname, s
        )
    if isinstance(phi, Or):
        return _eval_formula(phi.left, env, names, sname, s) or _eval_formula(
            phi.right, env, names, sname, s
        )
    if isinstance(phi, Not):
        return not _eval_formula(phi.body, env, names, sname, s)
    if isinstance(phi, Iff):
        return _eval_formula(phi.left, env, names, sname, s) == _eval_formula(
            phi.right, env, names, sname, s
        )
    if isinstance(phi, TrueF):
        return True
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# renaming


def rename_formula(phi: Formula, mapping: dict) -> Formula:
    """Rename carrier references and the structure symbol.

    The mapping must be injective; a target name that is bound by a
    quantifier enclosing a renamed occurrence raises CaptureDetected.
    Bound variables themselves are left alone.
    """
    values = list(mapping.values())
    if len(set(values)) != len(values):
        raise ValueError("renaming must be injective")
    clash = (free_symbols(phi) - set(mapping)) & set(values)
    if clash:
        raise ValueError(
            "renaming would merge with untouched symbols: " + ", ".join(sorted(clash))
        )
    return _rename_f(phi, mapping, frozenset())


def _rename_t(t: Term, mapping, bound):
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, SetRef):
        new = mapping.get(t.name)
        if new is None:
            return t
        if new in bound:
            raise CaptureDetected(f"renaming {t.name} to {new} under a binder of {new}")
        return SetRef(new)
    if isinstance(t, StructRef):
        new = mapping.get(t.name)
        if new is None:
            return t
        if new in bound:
            raise CaptureDetected(f"renaming {t.name} to {new} under a binder of {new}")
        return StructRef(new)
    if isinstance(t, PairT):
        return PairT(_rename_t(t.left, mapping, bound), _rename_t(t.right, mapping, bound))
    if isinstance(t, App):
        return App(_rename_t(t.fn, mapping, bound), _rename_t(t.arg, mapping, bound))
    if isinstance(t, Fst):
        return Fst(_rename_t(t.inner, mapping, bound))
    if isinstance(t, Snd):
        return Snd(_rename_t(t.inner, mapping, bound))
    if isinstance(t, PowT):
        return PowT(_rename_t(t.inner, mapping, bound))
    if isinstance(t, ProdT):
        return ProdT(_rename_t(t.left, mapping, bound), _rename_t(t.right, mapping, bound))
    raise TypeError(f"not a term: {t!r}")


def _rename_f(phi: Formula, mapping, bound):
    if isinstance(phi, TrueF):
        return phi
    if isinstance(phi, Not):
        return Not(_rename_f(phi.body, mapping, bound))
    if isinstance(phi, And):
        return And(_rename_f(phi.left, mapping, bound), _rename_f(phi.right, mapping, bound))
    if isinstance(phi, Or):
        return Or(_rename_f(phi.left, mapping, bound), _rename_f(phi.right, mapping, bound))
    if isinstance(phi, Implies):
        return Implies(_rename_f(phi.left, mapping, bound), _rename_f(phi.right, mapping, bound))
    if isinstance(phi, Iff):
        return Iff(_rename_f(phi.left, mapping, bound), _rename_f(phi.right, mapping, bound))
    if isinstance(phi, ForAll):
        return ForAll(
            phi.var,
            _rename_t(phi.domain, mapping, bound),
            _rename_f(phi.body, mapping, bound | {phi.var}),
        )
    if isinstance(phi, Exists):
        return Exists(
            phi.var,
            _rename_t(phi.domain, mapping, bound),
            _rename_f(phi.body, mapping, bound | {phi.var}),
        )
    if isinstance(phi, Eq):
        return Eq(_rename_t(phi.left, mapping, bound), _rename_t(phi.right, mapping, bound))
    if isinstance(phi, Member):
        return Member(_rename_t(phi.left, mapping, bound), _rename_t(phi.right, mapping, bound))
    raise TypeError(f"not a formula: {phi!r}")


def free_symbols(phi: Formula) -> set:
    """Carrier and structure names the formula refers to."""
    out: set = set()
    _collect_symbols(phi, out)
    return out


def _collect_symbols(node, out):
    if isinstance(node, (SetRef, StructRef)):
        out.add(node.name)
    for f in getattr(node, "__dataclass_fields__", {}):
        v = getattr(node, f)
        if isinstance(v, (Term, Formula)):
            _collect_symbols(v, out)


# ---------------------------------------------------------------------------
# formula builders (shared by the catalogue and the builtin species)


def and_all(*parts: Formula) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def forall_all(vars_, domain: Term, body: Formula) -> Formula:
    for v in reversed(vars_):
        body = ForAll(v, domain, body)
    return body


def _m(a: Term, b: Term) -> Formula:
    return Member(a, b)


def _p(a: Term, b: Term) -> Term:
    return PairT(a, b)


def entry(x: Term, y: Term, z: Term, table: Term) -> Formula:
    """((x, y), z) in table."""
    return Member(PairT(PairT(x, y), z), table)


def reflexive_rel(r: Term, dom: Term) -> Formula:
    x = Var("x")
    return ForAll("x", dom, _m(_p(x, x), r))


def irreflexive_rel(r: Term, dom: Term) -> Formula:
    x = Var("x")
    return ForAll("x", dom, Not(_m(_p(x, x), r)))


def symmetric_rel(r: Term, dom: Term) -> Formula:
    x, y = Var("x"), Var("y")
    return forall_all(["x", "y"], dom, Implies(_m(_p(x, y), r), _m(_p(y, x), r)))


def asymmetric_rel(r: Term, dom: Term) -> Formula:
    x, y = Var("x"), Var("y")
    return forall_all(["x", "y"], dom, Implies(_m(_p(x, y), r), Not(_m(_p(y, x), r))))


def antisymmetric_rel(r: Term, dom: Term) -> Formula:
    x, y = Var("x"), Var("y")
    return forall_all(
        ["x", "y"], dom, Implies(And(_m(_p(x, y), r), _m(_p(y, x), r)), Eq(x, y))
    )


def transitive_rel(r: Term, dom: Term) -> Formula:
    x, y, z = Var("x"), Var("y"), Var("z")
    return forall_all(
        ["x", "y", "z"], dom,
        Implies(And(_m(_p(x, y), r), _m(_p(y, z), r)), _m(_p(x, z), r)),
    )


def partial_order_rel(r: Term, dom: Term) -> Formula:
    return and_all(reflexive_rel(r, dom), antisymmetric_rel(r, dom), transitive_rel(r, dom))


def is_operation(table: Term, left: Term, right: Term, out: Term) -> Formula:
    """table is the graph of a total map left x right -> out."""
    x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")
    unique = ForAll("w", out, Implies(entry(x, y, w, table), Eq(w, z)))
    return ForAll(
        "x", left,
        ForAll("y", right, Exists("z", out, And(entry(x, y, z, table), unique))),
    )


def associative_rel(table: Term, dom: Term) -> Formula:
    """Relational associativity; on operation graphs it is associativity."""
    x, y, z = Var("x"), Var("y"), Var("z")
    xy, yz, l, r = Var("xy"), Var("yz"), Var("l"), Var("r")
    core = Implies(
        entry(x, yz, r, table),  # guards nested for early exit
        Eq(l, r),
    )
    core = ForAll("r", dom, core)
    core = Implies(entry(y, z, yz, table), core)
    core = ForAll("yz", dom, core)
    core = Implies(entry(xy, z, l, table), core)
    core = ForAll("l", dom, core)
    core = Implies(entry(x, y, xy, table), core)
    core = ForAll("xy", dom, core)
    return forall_all(["x", "y", "z"], dom, core)


def commutative_rel(table: Term, dom: Term) -> Formula:
    x, y, z = Var("x"), Var("y"), Var("z")
    body = Iff(entry(x, y, z, table), entry(y, x, z, table))
    return forall_all(["x", "y", "z"], dom, body)


def neutral_clause(e: Term, table: Term, dom: Term) -> Formula:
    x = Var("x")
    return ForAll("x", dom, And(entry(e, x, x, table), entry(x, e, x, table)))


def has_neutral_rel(table: Term, dom: Term) -> Formula:
    return Exists("e", dom, neutral_clause(Var("e"), table, dom))


def has_inverses_rel(table: Term, dom: Term) -> Formula:
    e, x, y = Var("e"), Var("x"), Var("y")
    inv = Exists("y", dom, And(entry(x, y, e, table), entry(y, x, e, table)))
    return Exists(
        "e", dom,
        And(neutral_clause(e, table, dom), ForAll("x", dom, inv)),
    )


def distributive_rel(a: Term, b: Term, dom: Term) -> Formula:
    """a(x, b(y, z)) = b(a(x, y), a(x, z)), stated on graphs."""
    x, y, z = Var("x"), Var("y"), Var("z")
    u, l, p, q, r = Var("u"), Var("l"), Var("p"), Var("q"), Var("r")
    core = Implies(entry(p, q, r, b), Eq(l, r))
    core = ForAll("r", dom, core)
    core = Implies(entry(x, z, q, a), core)
    core = ForAll("q", dom, core)
    core = Implies(entry(x, y, p, a), core)
    core = ForAll("p", dom, core)
    core = Implies(entry(x, u, l, a), core)
    core = ForAll("l", dom, core)
    core = Implies(entry(y, z, u, b), core)
    core = ForAll("u", dom, core)
    return forall_all(["x", "y", "z"], dom, core)


def topology_axioms(fam: Term, dom: Term) -> Formula:
    """Empty set, whole carrier, binary unions and intersections.

    On a finite carrier the binary closures give arbitrary unions and
    finite intersections.
    """
    u, v, w, x = Var("u"), Var("v"), Var("w"), Var("x")
    union = Iff(Member(x, w), Or(Member(x, u), Member(x, v)))
    union = Exists("w", fam, ForAll("x", dom, union))
    inter = Iff(Member(x, w), And(Member(x, u), Member(x, v)))
    inter = Exists("w", fam, ForAll("x", dom, inter))
    closed = ForAll("u", fam, ForAll("v", fam, And(union, inter)))
    return and_all(Member(Const(EMPTY_SET), fam), Member(dom, fam), closed)


def hausdorff_sep(fam: Term, dom: Term) -> Formula:
    x, y, u, v, z = Var("x"), Var("y"), Var("u"), Var("v"), Var("z")
    disjoint = ForAll("z", dom, Not(And(Member(z, u), Member(z, v))))
    witness = Exists(
        "u", fam, Exists("v", fam, and_all(Member(x, u), Member(y, v), disjoint))
    )
    return ForAll("x", dom, ForAll("y", dom, Implies(Not(Eq(x, y)), witness)))


def connected_clause(fam: Term, dom: Term) -> Formula:
    """Only the empty set and the carrier are clopen."""
    u, v, x = Var("u"), Var("v"), Var("x")
    complement = ForAll("x", dom, Iff(Member(x, v), Not(Member(x, u))))
    trivial = Or(Eq(u, Const(EMPTY_SET)), Eq(u, dom))
    return ForAll("u", fam, ForAll("v", fam, Implies(complement, trivial)))


# ---------------------------------------------------------------------------
# the property catalogue


@dataclass(frozen=True)
class PropertySpec:
    name: str
    typification: Typification
    formula: Formula
    # optional sweep hint: enumerates a superset of the formula's truth
    # set when the full realization is too large; the builtin generators
    # mirror the guard conjuncts of their formulas
    sweep_candidates: Optional[Callable] = field(default=None, compare=False, repr=False)
    # True when the generator emits exactly the truth set, so sweeps can
    # skip re-evaluating the formula on every candidate
    candidates_verified: bool = field(default=False, compare=False)
    note: str = ""


def relation_type() -> EchelonType:
    p = Proj(1, 1)
    return Pow(Prod(p, p))


def operation_type() -> EchelonType:
    p = Proj(1, 1)
    return Pow(Prod(Prod(p, p), p))


def family_type() -> EchelonType:
    p = Proj(1, 1)
    return Pow(Pow(p))


def pair_of(t1: EchelonType, t2: EchelonType) -> EchelonType:
    return Prod(t1, t2)


def table_value(flat, elems) -> SetV:
    n = len(elems)
    return mk_set(
        Pair(Pair(elems[i], elems[j]), elems[flat[i * n + j]])
        for i in range(n)
        for j in range(n)
    )


def binary_operation_tables(carrier: SetV) -> Iterator[SetV]:
    """All graphs of total binary operations on the carrier, n^(n^2) of them."""
    elems = carrier.elems
    n = len(elems)
    for flat in itertools.product(range(n), repeat=n * n):
        yield table_value(flat, elems)


def _op_candidates(carriers) -> Iterator[Value]:
    return binary_operation_tables(carriers[0])


def _endomorphisms(flat, n):
    """Unary maps h with h(t(i, j)) = t(h(i), h(j)) for the table t."""
    out = []
    for h in itertools.product(range(n), repeat=n):
        if all(h[flat[i * n + j]] == flat[h[i] * n + h[j]] for i in range(n) for j in range(n)):
            out.append(h)
    return out


def _distributive_pair_candidates(carriers) -> Iterator[Value]:
    """All pairs (a, b) of operation tables with a distributive over b.

    a(x, b(y, z)) = b(a(x, y), a(x, z)) says each slice a(x, -) is an
    endomorphism of the magma (X, b), and the slices are independent; so
    the pairs are enumerated per b-table from its endomorphism monoid.
    The per-size sweep cross-checks this against the full realization
    wherever the latter fits in the cell bound.
    """
    x = carriers[0]
    elems = x.elems
    n = len(elems)
    for flat_b in itertools.product(range(n), repeat=n * n):
        b_val = table_value(flat_b, elems)
        ends = _endomorphisms(flat_b, n)
        for slices in itertools.product(ends, repeat=n):
            flat_a = tuple(slices[i][j] for i in range(n) for j in range(n))
            yield Pair(table_value(flat_a, elems), b_val)


_catalogue = None


def builtin_properties() -> dict:
    """Name -> PropertySpec for the bundled relation, operation and
    topology properties.  Operation properties conjoin operationhood, so
    their truth sets live inside the functional tables their sweep
    generators enumerate."""
    global _catalogue
    if _catalogue is None:
        _catalogue = _build_catalogue()
    return dict(_catalogue)


def _build_catalogue() -> dict:
    s = StructRef()
    X = SetRef("X1")

    rel_typ = Typification(relation_type(), 1)
    op_typ = Typification(operation_type(), 1)
    top_typ = Typification(family_type(), 1)
    dist_typ = Typification(pair_of(operation_type(), operation_type()), 1)

    is_op = is_operation(s, X, X, X)

    specs = [
        PropertySpec("reflexive", rel_typ, reflexive_rel(s, X)),
        PropertySpec("irreflexive", rel_typ, irreflexive_rel(s, X)),
        PropertySpec("symmetric", rel_typ, symmetric_rel(s, X)),
        PropertySpec("asymmetric", rel_typ, asymmetric_rel(s, X)),
        PropertySpec("antisymmetric", rel_typ, antisymmetric_rel(s, X)),
        PropertySpec("transitive", rel_typ, transitive_rel(s, X)),
        PropertySpec(
            "is_binary_operation", op_typ, is_op, _op_candidates,
            candidates_verified=True, note="functional total tables",
        ),
        PropertySpec(
            "associative", op_typ, And(is_op, associative_rel(s, X)), _op_candidates,
        ),
        PropertySpec(
            "commutative", op_typ, And(is_op, commutative_rel(s, X)), _op_candidates,
        ),
        PropertySpec(
            "has_neutral", op_typ, And(is_op, has_neutral_rel(s, X)), _op_candidates,
        ),
        PropertySpec(
            "has_inverses", op_typ, And(is_op, has_inverses_rel(s, X)), _op_candidates,
        ),
        PropertySpec(
            "distributive_pair",
            dist_typ,
            and_all(
                is_operation(Fst(s), X, X, X),
                is_operation(Snd(s), X, X, X),
                distributive_rel(Fst(s), Snd(s), X),
            ),
            _distributive_pair_candidates,
            candidates_verified=True,
            note="first component distributes over the second",
        ),
        PropertySpec("is_topology", top_typ, topology_axioms(s, X)),
        PropertySpec(
            "hausdorff", top_typ, And(topology_axioms(s, X), hausdorff_sep(s, X)),
            note="on a finite carrier this is exactly discreteness",
        ),
        PropertySpec(
            "connected", top_typ, And(topology_axioms(s, X), connected_clause(s, X)),
        ),
        PropertySpec(
            "compact", top_typ, And(topology_axioms(s, X), TrueF()),
            note="degenerate: every finite space is compact",
        ),
    ]
    return {p.name: p for p in specs}
