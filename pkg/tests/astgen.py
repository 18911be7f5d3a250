"""Seeded random AST generator for round-trip testing.

Generates formulas, terms, types and values that the concrete syntax can
express verbatim.  Two constructions are deliberately never produced at
term top level because the grammar canonicalizes them to something else:
a constant holding a bare pair (prints as a pair term) and variable
names that shadow a declared carrier (the reference would re-resolve).
"""

import random

from structura.echelon import Pow, Prod, Proj
from structura.logic import (
    And,
    App,
    Const,
    Eq,
    Exists,
    ForAll,
    Fst,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    PairT,
    PowT,
    ProdT,
    SetRef,
    Snd,
    StructRef,
    TrueF,
    Var,
)
from structura.values import Atom, Int, Pair, mk_set

SETS = ("X1", "X2", "K")
STRUCT = "s"
VAR_POOL = ("u", "v", "w", "t0", "t1")


class Gen:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def value(self, depth: int):
        r = self.rng
        if depth <= 0 or r.random() < 0.4:
            if r.random() < 0.5:
                return Int(r.randrange(10))
            return Atom(r.choice(("p", "q", "r0")))
        if r.random() < 0.5:
            return Pair(self.value(depth - 1), self.value(depth - 1))
        return mk_set(self.value(depth - 1) for _ in range(r.randrange(4)))

    def term(self, depth: int, bound: tuple):
        r = self.rng
        if depth <= 0:
            choices = ["const", "setref", "structref"]
            if bound:
                choices += ["var", "var"]
            kind = r.choice(choices)
            if kind == "var":
                return Var(r.choice(bound))
            if kind == "setref":
                return SetRef(r.choice(SETS))
            if kind == "structref":
                return StructRef(STRUCT)
            v = self.value(2)
            while isinstance(v, Pair):  # a pair constant prints as a pair term
                v = self.value(2)
            return Const(v)
        kind = r.choice(("pair", "app", "fst", "snd", "pow", "prod", "leaf"))
        if kind == "pair":
            return PairT(self.term(depth - 1, bound), self.term(depth - 1, bound))
        if kind == "app":
            fn = self.term(depth - 1, bound)
            if r.random() < 0.5:
                arg = PairT(self.term(depth - 1, bound), self.term(depth - 1, bound))
            else:
                arg = self.term(depth - 1, bound)
            return App(fn, arg)
        if kind == "fst":
            return Fst(self.term(depth - 1, bound))
        if kind == "snd":
            return Snd(self.term(depth - 1, bound))
        if kind == "pow":
            return PowT(self.term(depth - 1, bound))
        if kind == "prod":
            return ProdT(self.term(depth - 1, bound), self.term(depth - 1, bound))
        return self.term(0, bound)

    def formula(self, depth: int, bound: tuple = ()):
        r = self.rng
        if depth <= 0:
            kind = r.choice(("true", "eq", "member", "member"))
            if kind == "true":
                return TrueF()
            if kind == "eq":
                return Eq(self.term(1, bound), self.term(1, bound))
            return Member(self.term(1, bound), self.term(1, bound))
        kind = r.choice(
            ("not", "and", "or", "implies", "iff", "forall", "exists", "leaf")
        )
        if kind == "not":
            return Not(self.formula(depth - 1, bound))
        if kind == "and":
            return And(self.formula(depth - 1, bound), self.formula(depth - 1, bound))
        if kind == "or":
            return Or(self.formula(depth - 1, bound), self.formula(depth - 1, bound))
        if kind == "implies":
            return Implies(
                self.formula(depth - 1, bound), self.formula(depth - 1, bound)
            )
        if kind == "iff":
            return Iff(self.formula(depth - 1, bound), self.formula(depth - 1, bound))
        if kind in ("forall", "exists"):
            var = r.choice(VAR_POOL)
            dom = self.term(1, bound)
            body = self.formula(depth - 1, bound + (var,))
            return (ForAll if kind == "forall" else Exists)(var, dom, body)
        return self.formula(0, bound)

    def echelon_type(self, depth: int, arity: int):
        r = self.rng
        if depth <= 0 or r.random() < 0.3:
            return Proj(r.randrange(1, arity + 1), arity)
        if r.random() < 0.5:
            return Pow(self.echelon_type(depth - 1, arity))
        return Prod(
            self.echelon_type(depth - 1, arity), self.echelon_type(depth - 1, arity)
        )
