"""Command-line interface.

Exit codes are a contract:

  0  success (for `check`, a valid model; for `iso`, the expected outcome)
  1  `check` on a well-typed structure that fails the axiom, or `iso`
     finding the opposite of what was expected
  2  parse errors, unbound symbols, malformed or mismatched arguments
  3  a size guard tripped
  4  structure not in the realization of the stated type
  5  a map literal that is not total, not functional, or not a bijection
  6  `transportable` found a counterexample

STRUCTURA_MAX_CELLS overrides the realization cell budget for one run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import dsl
from .echelon import estimated_size, realize
from .errors import (
    ArityMismatch,
    CardinalityMismatch,
    DomainMismatch,
    NotAStructureOfType,
    NotBijective,
    ParseError,
    SizeExceeded,
    StructuraError,
    UnboundSymbol,
)
from .limits import limited
from .maps import FiniteMap, finite_map
from .species import Model, are_isomorphic, check_model, check_transportability, enumerate_models
from .transport import Typification, transport
from .values import Pair, SetV, mk_set, render_value


def _parse_carrier(text: str) -> SetV:
    v = dsl.parse_value(text)
    if not isinstance(v, SetV):
        raise ParseError(f"carrier literal {text!r} is not a set", 1, 1)
    return v


def _load_species(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}", 1, 1)
    return dsl.parse_species(text)


def _map_from_literal(domain: SetV, text: str) -> FiniteMap:
    lit = dsl.parse_value(text)
    if not isinstance(lit, SetV):
        raise NotBijective(f"map literal {text!r} is not a set of pairs")
    assignment = {}
    rights = []
    for p in lit.elems:
        if not isinstance(p, Pair):
            raise NotBijective("map literal must contain only pairs")
        if p.left in assignment:
            raise NotBijective(f"map literal sends {render_value(p.left)} twice")
        assignment[p.left] = p.right
        rights.append(p.right)
    if set(assignment) != set(domain.elems):
        raise NotBijective("map literal is not total on the carrier")
    return finite_map(domain, mk_set(rights), assignment)


def _graph_json(f: FiniteMap):
    return [[render_value(a), render_value(b)] for a, b in f.graph()]


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif human:
        print(human)


# ---------------------------------------------------------------------------
# subcommands


def cmd_realize(args) -> int:
    t = dsl.parse_type(args.type)
    carriers = tuple(_parse_carrier(s) for s in args.set)
    if len(carriers) != t.arity:
        raise ArityMismatch(
            f"type has {t.arity} slots but {len(carriers)} carriers were given"
        )
    if args.count:
        n = estimated_size(t, carriers)
        _emit(args, {"type": dsl.pretty_type(t), "estimated_size": n}, str(n))
        return 0
    r = realize(t, carriers)
    payload = {
        "type": dsl.pretty_type(t),
        "carriers": [render_value(c) for c in carriers],
        "count": len(r.elems),
        "elements": [render_value(e) for e in r.elems],
    }
    _emit(args, payload, render_value(r))
    return 0


def cmd_transport(args) -> int:
    if args.species:
        sp = _load_species(args.species)
        typ = sp.typification
    else:
        t = dsl.parse_type(args.type)
        typ = Typification(t, t.arity)
    mains = tuple(_parse_carrier(s) for s in args.set)
    if len(mains) != typ.n_main:
        raise ArityMismatch(
            f"{typ.n_main} main carriers expected, got {len(mains)}"
        )
    if len(args.map) != typ.n_main:
        raise ArityMismatch(f"{typ.n_main} bijections expected, got {len(args.map)}")
    fs = tuple(_map_from_literal(x, m) for x, m in zip(mains, args.map))
    s = dsl.parse_value(args.structure)
    out = transport(s, typ, mains, fs)
    payload = {
        "input": render_value(s),
        "typification": dsl.pretty_type(typ.type),
        "bijections": [_graph_json(f) for f in fs],
        "output": render_value(out),
    }
    _emit(args, payload, render_value(out))
    return 0


def cmd_check(args) -> int:
    sp = _load_species(args.file)
    mains = tuple(_parse_carrier(s) for s in args.set)
    s = dsl.parse_value(args.structure)
    ok = check_model(sp, mains, s)
    payload = {
        "species": sp.name,
        "mains": [render_value(x) for x in mains],
        "structure": render_value(s),
        "model": ok,
    }
    _emit(args, payload, "model" if ok else "not a model")
    return 0 if ok else 1


def cmd_models(args) -> int:
    sp = _load_species(args.file)
    mains = tuple(_parse_carrier(s) for s in args.set)
    models = list(enumerate_models(sp, mains))
    payload = {
        "species": sp.name,
        "mains": [render_value(x) for x in mains],
        "count": len(models),
    }
    if args.count:
        _emit(args, payload, str(len(models)))
        return 0
    payload["models"] = [render_value(m.structure) for m in models]
    if args.json:
        _emit(args, payload, "")
    else:
        for m in models:
            print(render_value(m.structure))
    return 0


def cmd_iso(args) -> int:
    sp = _load_species(args.file)
    mains1 = tuple(_parse_carrier(s) for s in args.set)
    mains2 = tuple(_parse_carrier(s) for s in args.set2) if args.set2 else mains1
    s1 = dsl.parse_value(args.structure1)
    s2 = dsl.parse_value(args.structure2)
    witness = are_isomorphic(sp, Model(mains1, s1), Model(mains2, s2))
    found = witness is not None
    payload = {
        "species": sp.name,
        "isomorphic": found,
        "witness": [_graph_json(f) for f in witness] if found else None,
    }
    if found:
        human = "; ".join(render_value(f.graph_value()) for f in witness)
    else:
        human = "none"
    _emit(args, payload, human)
    expected = not found if args.expect_none else found
    return 0 if expected else 1


def cmd_transportable(args) -> int:
    sp = _load_species(args.file)
    verdict = check_transportability(sp, max_size=args.max_size)
    payload = {"species": sp.name}
    payload.update(verdict.as_dict())
    _emit(args, payload, verdict.summary())
    return 0 if verdict.transportable else 6


def cmd_fmt(args) -> int:
    sp = _load_species(args.file)
    sys.stdout.write(dsl.pretty_species(sp))
    return 0


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="structura",
        description="finite structures: realize types, transport, check species",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("realize", help="realize a type on concrete carriers")
    p.add_argument("type", help="type expression, e.g. 'P(pr1) @1'")
    p.add_argument("--set", action="append", required=True, help="carrier literal, repeatable")
    p.add_argument("--count", action="store_true", help="print the size estimate only")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_realize)

    p = sub.add_parser("transport", help="transport a structure along bijections")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--type", help="type expression; every slot is a main carrier")
    g.add_argument("--species", help="species file supplying the typification")
    p.add_argument("--set", action="append", required=True, help="main carrier, repeatable")
    p.add_argument("--map", action="append", required=True,
                   help="bijection as a set of pairs, repeatable")
    p.add_argument("structure", help="structure literal to transport")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_transport)

    p = sub.add_parser("check", help="check a structure against a species")
    p.add_argument("file", help=".species file")
    p.add_argument("--set", action="append", required=True)
    p.add_argument("structure")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("models", help="enumerate models on given carriers")
    p.add_argument("file")
    p.add_argument("--set", action="append", required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_models)

    p = sub.add_parser("iso", help="search for an isomorphism witness")
    p.add_argument("file")
    p.add_argument("--set", action="append", required=True,
                   help="carriers of the first model")
    p.add_argument("--set2", action="append",
                   help="carriers of the second model (defaults to --set)")
    p.add_argument("structure1")
    p.add_argument("structure2")
    p.add_argument("--expect-none", action="store_true",
                   help="succeed when no witness exists")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("transportable", help="bounded transportability sweep")
    p.add_argument("file")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_transportable)

    p = sub.add_parser("fmt", help="pretty-print a species file canonically")
    p.add_argument("file")
    p.set_defaults(fn=cmd_fmt)

    return top


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    overrides = {}
    env = os.environ.get("STRUCTURA_MAX_CELLS")
    if env is not None:
        try:
            overrides["max_cells"] = int(env)
        except ValueError:
            print(f"error: STRUCTURA_MAX_CELLS={env!r} is not an integer", file=sys.stderr)
            return 2
    try:
        with limited(**overrides):
            return args.fn(args)
    except (ParseError, UnboundSymbol, DomainMismatch, ArityMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SizeExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except NotAStructureOfType as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (NotBijective, CardinalityMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return 5
    except StructuraError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
