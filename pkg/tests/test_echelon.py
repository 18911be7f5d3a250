import pytest

from structura.echelon import (
    Pow,
    Prod,
    Proj,
    contains_structure,
    estimated_size,
    realization,
    realize,
)
from structura.errors import ArityMismatch, SizeExceeded
from structura.limits import limited
from structura.values import Int, Pair, mk_set, render_value


def nset(*xs):
    return mk_set(Int(x) for x in xs)


def test_type_nodes_are_interned():
    assert Proj(1, 2) is Proj(1, 2)
    assert Pow(Proj(1, 1)) is Pow(Proj(1, 1))
    t = Prod(Proj(1, 2), Pow(Proj(2, 2)))
    assert t is Prod(Proj(1, 2), Pow(Proj(2, 2)))
    assert Proj(1, 1) is not Proj(1, 2)


def test_arity_is_carried_by_the_tree():
    assert Proj(2, 3).arity == 3
    assert Pow(Proj(1, 2)).arity == 2
    assert Prod(Proj(1, 2), Proj(2, 2)).arity == 2


def test_mixed_arity_components_are_rejected():
    # malformed type expressions are construction bugs, not data errors
    with pytest.raises(ValueError):
        Prod(Proj(1, 1), Proj(2, 2))


def test_projection_bounds():
    with pytest.raises(ValueError):
        Proj(0, 1)
    with pytest.raises(ValueError):
        Proj(3, 2)


def test_realize_projection_is_the_carrier():
    x = nset(0, 1)
    assert realize(Proj(1, 1), (x,)) is x
    assert realize(Proj(1, 1), (mk_set(),)) is mk_set()


def test_realize_powerset_golden():
    out = realize(Pow(Proj(1, 1)), (nset(0, 1),))
    assert render_value(out) == "{{},{0},{1},{0,1}}"


def test_realize_product():
    out = realize(Prod(Proj(1, 2), Proj(2, 2)), (nset(0), nset(1, 2)))
    assert render_value(out) == "{(0,1),(0,2)}"


def test_realize_wrong_carrier_count():
    with pytest.raises(ArityMismatch):
        realize(Proj(1, 2), (nset(0),))


def test_estimated_size_matches_realization():
    cases = [
        (Pow(Prod(Proj(1, 1), Proj(1, 1))), (nset(0, 1, 2),)),
        (Prod(Pow(Proj(1, 1)), Pow(Proj(1, 1))), (nset(0, 1),)),
        (Pow(Pow(Proj(1, 1))), (nset(0, 1),)),
    ]
    for t, cs in cases:
        assert estimated_size(t, cs) == len(realize(t, cs))


def test_estimated_size_does_not_materialize():
    # 2^16 cells sits exactly at the default budget; the estimate is instant
    t = Pow(Prod(Proj(1, 1), Proj(1, 1)))
    assert estimated_size(t, (nset(0, 1, 2, 3),)) == 65536


def test_size_guard_trips():
    t = Pow(Pow(Prod(Proj(1, 1), Proj(1, 1))))
    with pytest.raises(SizeExceeded):
        realize(t, (nset(0, 1, 2, 3),))


def test_size_guard_is_configurable():
    # fresh carriers: the guard applies when work would actually be done,
    # a cached realization is served regardless of the current budget
    t = Pow(Proj(1, 1))
    cs = (nset(41, 42),)
    with limited(max_cells=3):
        with pytest.raises(SizeExceeded):
            realize(t, cs)
    assert len(realize(t, cs)) == 4


def test_tower_estimate_gives_up_rather_than_overflowing():
    t = Proj(1, 1)
    for _ in range(6):
        t = Pow(t)
    with pytest.raises(SizeExceeded):
        estimated_size(t, (nset(0, 1),))


def test_realization_is_cached():
    t = Pow(Proj(1, 1))
    cs = (nset(0, 1, 2),)
    assert realization(t, cs) is realization(t, cs)


def test_contains_structure():
    t = Pow(Prod(Proj(1, 1), Proj(1, 1)))
    x = nset(0, 1)
    good = mk_set((Pair(Int(0), Int(1)),))
    bad = mk_set((Pair(Int(0), Int(7)),))
    assert contains_structure(t, (x,), good)
    assert not contains_structure(t, (x,), bad)
    assert not contains_structure(t, (x,), Int(0))
    # an element of the carrier is a structure of projection type
    assert contains_structure(Proj(1, 1), (x,), Int(0))
    assert not contains_structure(Proj(1, 1), (x,), Int(9))


def test_contains_structure_avoids_materializing():
    # 2^27 cells would blow the budget; membership checking still works
    op = Pow(Prod(Prod(Proj(1, 1), Proj(1, 1)), Proj(1, 1)))
    x = nset(0, 1, 2)
    tbl = mk_set(
        Pair(Pair(Int(a), Int(b)), Int(0)) for a in range(3) for b in range(3)
    )
    assert contains_structure(op, (x,), tbl)
    bad = mk_set((Pair(Pair(Int(0), Int(0)), Int(5)),))
    assert not contains_structure(op, (x,), bad)
