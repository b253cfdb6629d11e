from math import factorial

import pytest

from invcensus.engine import enumerate_closure, involution_count
from invcensus.errors import DegreeMismatch, UnknownName
from invcensus.perms import (
    Permutation,
    expected_order,
    load_sporadic_generators,
    perm_compose,
    perm_order,
    standard_generators,
)


def P(text, degree=5):
    return Permutation.parse(text, degree)


def test_compose_examples():
    e = Permutation.identity(5)
    p = P("(0 3 1)(2 4)")
    assert perm_compose(e, p) == p
    assert perm_compose(P("(0 1)"), P("(0 1)")) == e
    # right factor first: 0 -> 1 -> 2, 1 -> 0 -> 1, 2 -> 2 -> 0
    assert perm_compose(P("(0 1 2)"), P("(0 1)")) == P("(0 2)")
    # (1 2) is the left-first product
    assert perm_compose(P("(0 1)"), P("(0 1 2)")) == P("(1 2)")


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        perm_compose(Permutation.identity(3), Permutation.identity(4))


def test_order_examples():
    assert perm_order(Permutation.identity(4)) == 1
    assert perm_order(P("(0 1)(2 3 4)")) == 6
    assert perm_order(P("(0 1 2 3 4)")) == 5


def test_parse_and_format():
    p = P("(0 4 2)(1,3)")
    assert p.images == (4, 3, 0, 1, 2)
    assert str(p) == "(0 4 2)(1 3)"
    assert str(Permutation.identity(3)) == "()"
    for bad in ["(0 1", "0 1", "(0 0)", "(0 7)"]:
        with pytest.raises(ValueError):
            P(bad)


def test_inverse_and_associativity():
    a, b, c = P("(0 1 2)"), P("(1 3)(2 4)"), P("(0 4 3 2 1)")
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Permutation.identity(5)


def test_sporadic_data_file():
    recs = load_sporadic_generators()
    assert recs["m11"].degree == 11 and recs["m11"].expected_order == 7920
    assert [str(g) for g in recs["m11"].generators] == ["(0 1 2 3 4 5 6 7 8 9 10)", "(2 6 10 7)(3 9 4 5)"]
    assert recs["m12"].expected_order == 95040
    assert len(recs["m12"].generators) == 2


def test_sporadic_parser_rejects_garbage():
    with pytest.raises(ValueError):
        load_sporadic_generators("m11 eleven 7920 (0 1)")


@pytest.mark.parametrize("name", ["alt:3", "alt:5", "alt:6", "alt:7", "m11", "m12", "cyclic:2"])
def test_closure_order_matches_published(name):
    assert enumerate_closure(standard_generators(name)).order == expected_order(name)


def test_alt_generators_are_three_cycles():
    gens = standard_generators("alt:6")
    assert [str(g) for g in gens] == ["(0 1 2)", "(0 1 3)", "(0 1 4)", "(0 1 5)"]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_alt_closure_is_even(n):
    G = enumerate_closure(standard_generators(f"alt:{n}"))
    assert G.order == factorial(n) // 2
    assert all(G.element(int(c)).is_even() for c in G.elements)


def test_cyclic2():
    G = enumerate_closure(standard_generators("cyclic:2"))
    assert G.order == 2 and involution_count(G) == 1


def test_unknown():
    for name in ["m13", "alt:2", "alt:11", "alt:x"]:
        with pytest.raises(UnknownName):
            standard_generators(name)
