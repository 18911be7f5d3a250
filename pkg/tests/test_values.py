import pytest

from structura.values import (
    Atom,
    Int,
    Pair,
    SetV,
    cartesian,
    is_subset,
    mk_set,
    powerset,
    render_value,
    set_union,
    value_cmp,
)


def test_interning_returns_identical_objects():
    assert Atom("a0") is Atom("a0")
    assert Int(3) is Int(3)
    assert Pair(Int(0), Int(1)) is Pair(Int(0), Int(1))
    s1 = mk_set((Int(1), Int(0)))
    s2 = mk_set((Int(0), Int(1), Int(0)))
    assert s1 is s2


def test_atom_names_are_identifiers():
    Atom("x_1")
    with pytest.raises(ValueError):
        Atom("not ok")
    with pytest.raises(ValueError):
        Atom("")
    with pytest.raises(ValueError):
        Atom("1abc")


def test_set_elements_are_sorted_and_deduplicated():
    s = mk_set((Int(2), Int(0), Int(2), Int(1)))
    assert [render_value(e) for e in s.elems] == ["0", "1", "2"]


def test_render_golden():
    assert render_value(Int(7)) == "7"
    assert render_value(Atom("a0")) == "a0"
    assert render_value(Pair(Int(0), Atom("b"))) == "(0,b)"
    assert render_value(mk_set()) == "{}"
    inner = mk_set((Int(0),))
    assert render_value(mk_set((inner, mk_set()))) == "{{},{0}}"


def test_powerset_order_is_graded():
    # subsets come out by cardinality first, then lexicographically
    p = powerset(mk_set((Int(0), Int(1))))
    assert render_value(p) == "{{},{0},{1},{0,1}}"
    p3 = powerset(mk_set((Int(0), Int(1), Int(2))))
    assert render_value(p3) == "{{},{0},{1},{2},{0,1},{0,2},{1,2},{0,1,2}}"


def test_cartesian_product_order():
    a = mk_set((Int(0), Int(1)))
    b = mk_set((Atom("p"), Atom("q")))
    c = cartesian(a, b)
    assert render_value(c) == "{(0,p),(0,q),(1,p),(1,q)}"


def test_total_order_laws_on_mixed_sample():
    sample = [
        Atom("a"),
        Atom("b"),
        Int(0),
        Int(5),
        Pair(Int(0), Int(0)),
        Pair(Int(0), Atom("a")),
        mk_set(),
        mk_set((Int(0),)),
        mk_set((Int(1),)),
        mk_set((Int(0), Int(1))),
    ]
    for x in sample:
        assert value_cmp(x, x) == 0
        for y in sample:
            assert value_cmp(x, y) == -value_cmp(y, x)
            if x is not y:
                assert value_cmp(x, y) != 0
            for z in sample:
                if value_cmp(x, y) <= 0 and value_cmp(y, z) <= 0:
                    assert value_cmp(x, z) <= 0


def test_set_order_is_graded_not_lexicographic():
    # {1} before {0,1}: cardinality dominates element order
    small = mk_set((Int(1),))
    big = mk_set((Int(0), Int(1)))
    assert value_cmp(small, big) < 0


def test_union_and_subset():
    a = mk_set((Int(0), Int(1)))
    b = mk_set((Int(1), Int(2)))
    assert render_value(set_union(a, b)) == "{0,1,2}"
    assert is_subset(a, set_union(a, b))
    assert not is_subset(a, b)
    assert is_subset(mk_set(), a)


def test_membership_lookup():
    a = mk_set((Int(0), Pair(Int(1), Int(2))))
    assert Int(0) in a
    assert Pair(Int(1), Int(2)) in a
    assert Int(9) not in a
    assert a.index_of(Int(0)) == 0
    with pytest.raises(KeyError):
        a.index_of(Int(9))
