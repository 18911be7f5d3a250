"""Textual syntax for types, values, formulas and species blocks.

The grammar in brief:

  type     :=  factor ('*' factor)*            products associate left
  factor   :=  'pr' INT  |  'P' '(' type ')'  |  '(' type ')'
  full     :=  type ['@' INT]                   declared slot count

  value    :=  INT  |  IDENT                    bare identifiers are atoms
            |  '(' value ',' value ')'
            |  '{' [elem (',' elem)*] '}'       elem may be INT '..' INT

  formula  :=  iff
  iff      :=  implies ['<->' iff]
  implies  :=  disj ['->' implies]
  disj     :=  conj ('|' conj)*
  conj     :=  unary ('&' unary)*
  unary    :=  '!' unary  |  quantifier  |  'true'
            |  '(' formula ')'  |  term ('in' | '=') term
  quantifier := ('forall' | 'exists') IDENT 'in' term '.' formula

  term     :=  appterm ('*' appterm)*           products of sets
  appterm  :=  atomterm ['(' term [',' term] ')']*
  atomterm :=  IDENT  |  QUOTED  |  INT  |  '{' ... '}'
            |  'fst' '(' term ')'  |  'snd' '(' term ')'  |  'P' '(' term ')'
            |  '(' term ')'  |  '(' term ',' term ')'

  species  :=  'species' IDENT '{'
                 'mains' INT ';'
                 ('aux' IDENT '=' value ';')*
                 'typing' IDENT 'in' full ';'
                 'axiom' formula ';'
               '}'

Comments run from '#' to end of line.  In formulas a bare identifier
resolves as a bound variable first, then as a carrier name, then as the
structure symbol; quoted identifiers are always atom constants.  Inside
braces everything is a constant, so atoms there stay bare.  Parsing and
pretty printing are inverse on ASTs, and pretty output is canonical.
"""

from __future__ import annotations

import re
from typing import Optional

from .echelon import EchelonType, Pow, Prod, Proj
from .errors import ArityError, ParseError, UnboundSymbol
from .logic import (
    And,
    App,
    Const,
    Eq,
    Exists,
    ForAll,
    Formula,
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
    Term,
    TrueF,
    Var,
)
from .species import Species
from .transport import Typification
from .values import Atom, Int, Pair, SetV, Value, mk_set, render_value

# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>\#[^\n]*)
      | (?P<arrow2><->)
      | (?P<arrow>->)
      | (?P<dotdot>\.\.)
      | (?P<quoted>'[A-Za-z_][A-Za-z0-9_]*')
      | (?P<int>[0-9]+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[{}(),;=.@*!&|])
    """,
    re.VERBOSE,
)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"{self.kind}({self.text!r})@{self.line}:{self.col}"


def _lex(text: str):
    toks = []
    line, col = 1, 1
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok_text = m.group()
        if kind not in ("ws", "comment"):
            if kind == "arrow2":
                toks.append(_Tok("<->", tok_text, line, col))
            elif kind == "arrow":
                toks.append(_Tok("->", tok_text, line, col))
            elif kind == "dotdot":
                toks.append(_Tok("..", tok_text, line, col))
            elif kind == "punct":
                toks.append(_Tok(tok_text, tok_text, line, col))
            else:
                toks.append(_Tok(kind, tok_text, line, col))
        nl = tok_text.count("\n")
        if nl:
            line += nl
            col = len(tok_text) - tok_text.rfind("\n")
        else:
            col += len(tok_text)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parser core

_QUANT = ("forall", "exists")
_RESERVED_FNS = ("fst", "snd", "P")
_KEYWORDS = frozenset(
    ("species", "mains", "aux", "typing", "axiom",
     "forall", "exists", "in", "true", "fst", "snd", "P")
)


class _Parser:
    def __init__(self, text: str, sets=(), struct_names=("s",), auto_slots=False):
        self.toks = _lex(text)
        self.pos = 0
        self.sets = tuple(sets)
        self.struct_names = tuple(struct_names)
        # standalone formulas accept any X<k> as a carrier reference;
        # species bodies pass the declared names and turn this off
        self.auto_slots = auto_slots
        self.bound: list = []
        self._furthest: Optional[ParseError] = None

    def peek(self, k=0) -> _Tok:
        i = min(self.pos + k, len(self.toks) - 1)
        return self.toks[i]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def at(self, kind, text=None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def accept(self, kind, text=None) -> Optional[_Tok]:
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind, expected=None) -> _Tok:
        t = self.peek()
        if t.kind == kind:
            return self.next()
        self.fail(expected or (kind,))

    def expect_kw(self, word, expected=None) -> _Tok:
        if not self.at("ident", word):
            self.fail(expected or (word,))
        return self.next()

    def expect_name(self, what) -> str:
        t = self.expect("ident", (what,))
        if t.text in _KEYWORDS:
            raise ParseError(f"{t.text} is a reserved word", t.line, t.col, (what,))
        return t.text

    def fail(self, expected=()):
        t = self.peek()
        got = t.text if t.kind != "eof" else "end of input"
        err = ParseError(f"unexpected {got!r}", t.line, t.col, tuple(expected))
        if self._furthest is None or t.line > self._furthest.line or (
            t.line == self._furthest.line and t.col >= self._furthest.col
        ):
            self._furthest = err
        raise err

    def expect_eof(self):
        if not self.at("eof"):
            self.fail(("end of input",))

    # -- types ------------------------------------------------------------

    def parse_type_full(self):
        """Type expression with optional '@n'; returns (tree, max_slot, declared)."""
        tree, hi = self._type_expr()
        declared = None
        at_tok = None
        if self.accept("@"):
            at_tok = self.peek()
            declared = int(self.expect("int", ("slot count",)).text)
            if declared < 1:
                raise ArityError("slot count must be at least 1", at_tok.line, at_tok.col)
            if declared < hi:
                raise ArityError(
                    f"type mentions pr{hi} but declares only {declared} slots",
                    at_tok.line,
                    at_tok.col,
                )
        return tree, hi, declared

    def _type_expr(self):
        tree, hi = self._type_factor()
        while True:
            if self.at("*"):
                self.next()
                right, h2 = self._type_factor()
                tree = ("prod", tree, right)
                hi = max(hi, h2)
            else:
                return tree, hi

    def _type_factor(self):
        t = self.peek()
        if t.kind == "ident":
            m = re.fullmatch(r"pr([0-9]+)", t.text)
            if m:
                self.next()
                i = int(m.group(1))
                if i < 1:
                    raise ArityError("slot indices start at 1", t.line, t.col)
                return ("proj", i), i
            if t.text == "P":
                self.next()
                self.expect("(", ("(",))
                inner, hi = self._type_expr()
                self.expect(")", (")",))
                return ("pow", inner), hi
            self.fail(("pr<i>", "P(", "("))
        if self.accept("("):
            tree, hi = self._type_expr()
            self.expect(")", (")",))
            return tree, hi
        self.fail(("pr<i>", "P(", "("))

    # -- values -----------------------------------------------------------

    def parse_value(self) -> Value:
        t = self.peek()
        if t.kind == "int":
            self.next()
            return Int(int(t.text))
        if t.kind == "ident":
            self.next()
            return Atom(t.text)
        if self.accept("("):
            left = self.parse_value()
            self.expect(",", (",",))
            right = self.parse_value()
            self.expect(")", (")",))
            return Pair(left, right)
        if self.accept("{"):
            elems = []
            if not self.at("}"):
                self._set_elem(elems)
                while self.accept(","):
                    self._set_elem(elems)
            self.expect("}", ("}", ","))
            return mk_set(elems)
        self.fail(("a value",))

    def _set_elem(self, out):
        # int ranges expand inline: 0..3 is 0, 1, 2, 3
        if self.at("int") and self.peek(1).kind == "..":
            lo_tok = self.next()
            self.next()
            hi_tok = self.expect("int", ("range end",))
            lo, hi = int(lo_tok.text), int(hi_tok.text)
            if hi < lo:
                raise ParseError("empty range", lo_tok.line, lo_tok.col)
            out.extend(Int(k) for k in range(lo, hi + 1))
        else:
            out.append(self.parse_value())

    # -- formulas ---------------------------------------------------------

    def parse_formula(self) -> Formula:
        left = self._implies()
        if self.accept("<->"):
            return Iff(left, self.parse_formula())
        return left

    def _implies(self) -> Formula:
        left = self._disj()
        if self.accept("->"):
            return Implies(left, self._implies())
        return left

    def _disj(self) -> Formula:
        out = self._conj()
        while self.accept("|"):
            out = Or(out, self._conj())
        return out

    def _conj(self) -> Formula:
        out = self._unary()
        while self.accept("&"):
            out = And(out, self._unary())
        return out

    def _unary(self) -> Formula:
        t = self.peek()
        if self.accept("!"):
            return Not(self._unary())
        if t.kind == "ident" and t.text in _QUANT:
            self.next()
            var = self.expect_name("a variable name")
            self.expect_kw("in")
            dom = self.parse_term()
            self.expect(".", (".",))
            self.bound.append(var)
            try:
                body = self.parse_formula()
            finally:
                self.bound.pop()
            return (ForAll if t.text == "forall" else Exists)(var, dom, body)
        if t.kind == "ident" and t.text == "true":
            self.next()
            return TrueF()
        return self._atom_formula()

    def _atom_formula(self) -> Formula:
        # a '(' may open a parenthesized formula or a term; try the
        # relation first and fall back, keeping the furthest diagnostic
        start = self.pos
        try:
            left = self.parse_term()
            t = self.peek()
            if t.kind == "ident" and t.text == "in":
                self.next()
                return Member(left, self.parse_term())
            if self.accept("="):
                return Eq(left, self.parse_term())
            self.fail(("in", "="))
        except ParseError:
            self.pos = start
        self.expect("(", ("(", "a term"))
        out = self.parse_formula()
        self.expect(")", (")",))
        return out

    # -- terms ------------------------------------------------------------

    def parse_term(self) -> Term:
        out = self._app_term()
        while self.at("*"):
            self.next()
            out = ProdT(out, self._app_term())
        return out

    def _app_term(self) -> Term:
        out = self._atom_term()
        while self.at("("):
            self.next()
            arg = self.parse_term()
            if self.accept(","):
                arg = PairT(arg, self.parse_term())
            self.expect(")", (")", ","))
            out = App(out, arg)
        return out

    def _atom_term(self) -> Term:
        t = self.peek()
        if t.kind == "quoted":
            self.next()
            return Const(Atom(t.text[1:-1]))
        if t.kind == "int":
            self.next()
            return Const(Int(int(t.text)))
        if t.kind == "ident":
            if t.text in _RESERVED_FNS:
                self.next()
                self.expect("(", ("(",))
                inner = self.parse_term()
                self.expect(")", (")",))
                return {"fst": Fst, "snd": Snd, "P": PowT}[t.text](inner)
            if t.text in _KEYWORDS:
                self.fail(("a term",))
            self.next()
            return self._resolve(t)
        if self.at("{"):
            return Const(self.parse_value())
        if self.accept("("):
            first = self.parse_term()
            if self.accept(","):
                second = self.parse_term()
                self.expect(")", (")",))
                return PairT(first, second)
            self.expect(")", (")", ","))
            return first
        self.fail(("a term",))

    def _resolve(self, tok: _Tok) -> Term:
        name = tok.text
        if name in self.bound:
            return Var(name)
        if name in self.sets:
            return SetRef(name)
        if self.auto_slots and re.fullmatch(r"X[0-9]+", name):
            return SetRef(name)
        if name in self.struct_names:
            return StructRef(name)
        raise UnboundSymbol(
            f"{name} is not a bound variable, carrier or structure symbol",
            tok.line,
            tok.col,
        )

    # -- species ----------------------------------------------------------

    def parse_species(self) -> Species:
        self.expect_kw("species")
        name = self.expect_name("a species name")
        self.expect("{", ("{",))

        self.expect_kw("mains")
        n_tok = self.expect("int", ("main carrier count",))
        n_main = int(n_tok.text)
        if n_main < 1:
            raise ParseError("a species needs at least one main carrier",
                             n_tok.line, n_tok.col)
        self.expect(";", (";",))

        aux = []
        aux_names = []
        while self.at("ident", "aux"):
            self.next()
            a_tok = self.peek()
            a_name = self.expect_name("an auxiliary carrier name")
            if a_name in aux_names or re.fullmatch(r"X[0-9]+", a_name):
                raise ParseError(f"carrier name {a_name} is taken",
                                 a_tok.line, a_tok.col)
            self.expect("=", ("=",))
            v_tok = self.peek()
            v = self.parse_value()
            if not isinstance(v, SetV):
                raise ParseError("auxiliary carriers must be sets",
                                 v_tok.line, v_tok.col)
            self.expect(";", (";",))
            aux.append((a_name, v))
            aux_names.append(a_name)

        self.expect_kw("typing", ("typing", "aux"))
        s_tok = self.peek()
        struct_name = self.expect_name("a structure symbol")
        if struct_name in aux_names or re.fullmatch(r"X[0-9]+", struct_name):
            raise ParseError(f"structure symbol {struct_name} is taken",
                             s_tok.line, s_tok.col)
        self.expect_kw("in")
        ty_tok = self.peek()
        tree, hi, declared = self.parse_type_full()
        n_slots = n_main + len(aux)
        if declared is not None and declared != n_slots:
            raise ArityError(
                f"typing declares {declared} slots but the species has {n_slots}",
                ty_tok.line, ty_tok.col,
            )
        if hi > n_slots:
            raise ArityError(
                f"typing mentions pr{hi} but the species has {n_slots} slots",
                ty_tok.line, ty_tok.col,
            )
        self.expect(";", (";",))

        self.expect_kw("axiom")
        self.sets = tuple(f"X{i}" for i in range(1, n_main + 1)) + tuple(aux_names)
        self.struct_names = (struct_name,)
        self.auto_slots = False
        axiom = self.parse_formula()
        self.expect(";", (";",))
        self.expect("}", ("}",))
        self.expect_eof()

        typ = Typification(_build_type(tree, n_slots), n_main, tuple(aux))
        return Species(name, typ, axiom, struct_name=struct_name)


def _build_type(tree, arity: int) -> EchelonType:
    tag = tree[0]
    if tag == "proj":
        return Proj(tree[1], arity)
    if tag == "pow":
        return Pow(_build_type(tree[1], arity))
    return Prod(_build_type(tree[1], arity), _build_type(tree[2], arity))


# ---------------------------------------------------------------------------
# entry points


def _finish(p: _Parser, fn):
    # backtracking leaves the most advanced diagnostic in p._furthest;
    # prefer it over whatever position the final attempt died at
    try:
        out = fn()
        return out
    except ParseError as e:
        f = p._furthest
        if (
            f is not None
            and not isinstance(e, ArityError)
            and (f.line, f.col) > (e.line or 0, e.col or 0)
        ):
            raise f from None
        raise


def parse_type(text: str) -> EchelonType:
    """Parse a type; without '@n' the slot count is the highest pr index."""
    p = _Parser(text)

    def go():
        tree, hi, declared = p.parse_type_full()
        p.expect_eof()
        return _build_type(tree, declared if declared is not None else hi)

    return _finish(p, go)


def parse_value(text: str) -> Value:
    p = _Parser(text)

    def go():
        v = p.parse_value()
        p.expect_eof()
        return v

    return _finish(p, go)


def parse_formula(text: str, *, sets=(), struct_names=("s",)) -> Formula:
    """Parse a closed formula.

    `sets` names the auxiliary carriers in scope; main carriers X1, X2, ..
    are always recognized here.  Inside species blocks only the declared
    slots resolve.
    """
    p = _Parser(text, sets=sets, struct_names=struct_names, auto_slots=True)

    def go():
        phi = p.parse_formula()
        p.expect_eof()
        return phi

    return _finish(p, go)


def parse_species(text: str) -> Species:
    p = _Parser(text)
    return _finish(p, p.parse_species)


# ---------------------------------------------------------------------------
# pretty printers


def pretty_type(t: EchelonType, *, slots: bool = True) -> str:
    s = _ptype(t)
    return f"{s} @{t.arity}" if slots else s


def _ptype(t: EchelonType) -> str:
    if isinstance(t, Proj):
        return f"pr{t.index}"
    if isinstance(t, Pow):
        return f"P({_ptype(t.inner)})"
    # products associate left, so only a right-nested product needs parens
    right = _ptype(t.right)
    if isinstance(t.right, Prod):
        right = f"({right})"
    return f"{_ptype(t.left)} * {right}"


pretty_value = render_value


# formula precedence levels, matching the parser
_LVL_IFF, _LVL_IMP, _LVL_OR, _LVL_AND, _LVL_NOT, _LVL_ATOM = 1, 2, 3, 4, 5, 6


def pretty_formula(phi: Formula) -> str:
    return _pf(phi, _LVL_IFF)


def _pf(phi: Formula, min_lvl: int) -> str:
    if isinstance(phi, TrueF):
        return "true"
    if isinstance(phi, Member):
        return f"{_pt(phi.left, 1)} in {_pt(phi.right, 1)}"
    if isinstance(phi, Eq):
        return f"{_pt(phi.left, 1)} = {_pt(phi.right, 1)}"
    if isinstance(phi, Not):
        s = f"!{_pf(phi.body, _LVL_NOT)}"
        lvl = _LVL_NOT
    elif isinstance(phi, And):
        s = f"{_pf(phi.left, _LVL_AND)} & {_pf(phi.right, _LVL_AND + 1)}"
        lvl = _LVL_AND
    elif isinstance(phi, Or):
        s = f"{_pf(phi.left, _LVL_OR)} | {_pf(phi.right, _LVL_OR + 1)}"
        lvl = _LVL_OR
    elif isinstance(phi, Implies):
        s = f"{_pf(phi.left, _LVL_IMP + 1)} -> {_pf(phi.right, _LVL_IMP)}"
        lvl = _LVL_IMP
    elif isinstance(phi, Iff):
        s = f"{_pf(phi.left, _LVL_IFF + 1)} <-> {_pf(phi.right, _LVL_IFF)}"
        lvl = _LVL_IFF
    elif isinstance(phi, (ForAll, Exists)):
        kw = "forall" if isinstance(phi, ForAll) else "exists"
        s = f"{kw} {phi.var} in {_pt(phi.domain, 1)}. {_pf(phi.body, _LVL_IFF)}"
        lvl = _LVL_IFF
    else:
        raise TypeError(f"not a formula: {phi!r}")
    if lvl < min_lvl:
        return f"({s})"
    return s


# term levels: products bind looser than application
_TLVL_PROD, _TLVL_APP = 1, 2


def pretty_term(t: Term) -> str:
    return _pt(t, _TLVL_PROD)


def _pt(t: Term, min_lvl: int) -> str:
    if isinstance(t, (Var, SetRef, StructRef)):
        return t.name
    if isinstance(t, Const):
        v = t.value
        if isinstance(v, Atom):
            return f"'{v.name}'"
        return render_value(v)
    if isinstance(t, PairT):
        return f"({_pt(t.left, _TLVL_PROD)}, {_pt(t.right, _TLVL_PROD)})"
    if isinstance(t, Fst):
        return f"fst({_pt(t.inner, _TLVL_PROD)})"
    if isinstance(t, Snd):
        return f"snd({_pt(t.inner, _TLVL_PROD)})"
    if isinstance(t, PowT):
        return f"P({_pt(t.inner, _TLVL_PROD)})"
    if isinstance(t, App):
        arg = t.arg
        if isinstance(arg, PairT):
            inner = f"{_pt(arg.left, _TLVL_PROD)}, {_pt(arg.right, _TLVL_PROD)}"
        else:
            inner = _pt(arg, _TLVL_PROD)
        return f"{_pt(t.fn, _TLVL_APP)}({inner})"
    if isinstance(t, ProdT):
        s = f"{_pt(t.left, _TLVL_PROD)} * {_pt(t.right, _TLVL_APP)}"
        if _TLVL_PROD < min_lvl:
            return f"({s})"
        return s
    raise TypeError(f"not a term: {t!r}")


def pretty_species(sp: Species) -> str:
    typ = sp.typification
    lines = [f"species {sp.name} {{"]
    lines.append(f"  mains {typ.n_main};")
    for name, v in typ.aux:
        lines.append(f"  aux {name} = {render_value(v)};")
    lines.append(f"  typing {sp.struct_name} in {pretty_type(typ.type)};")
    lines.append(f"  axiom {pretty_formula(sp.axiom)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
