import itertools
from collections import Counter

import numpy as np
import pytest

from invcensus.engine import (
    check_closure,
    centralizer_order,
    conjugacy_class,
    conjugacy_classes,
    direct_centralizer_order,
    direct_centralizer_orders,
    element_order,
    enumerate_closure,
    involution_class_decomposition,
    involution_count,
    order_spectrum,
)
from invcensus.errors import CapExceeded
from invcensus.fields import field_make
from invcensus.linear import Matrix, center_scalars, generators
from invcensus.perms import Permutation, perm_order, standard_generators

SMALL_IDS = ["alt:5", "psl2:7", "psl2:8", "alt:6", "psl2:11"]
MID_IDS = ["psl2:13", "psl2:17", "alt:7", "psl2:19", "psl2:16", "psl3:3", "psu3:3", "psl2:23", "psl2:25", "m11", "psl2:27"]


def a5_oracle():
    """A5 by filtering all of S5 for even permutations."""
    perms = [Permutation(p) for p in itertools.permutations(range(5))]
    return [p for p in perms if p.is_even()]


def test_a5_spectrum_oracle_frozen():
    a5 = a5_oracle()
    assert len(a5) == 60
    assert Counter(perm_order(p) for p in a5) == {1: 1, 2: 15, 3: 20, 5: 24}
    classes = set()
    for x in a5:
        classes.add(frozenset(h * x * h.inverse() for h in a5))
    assert sorted(len(c) for c in classes) == [1, 12, 12, 15, 20]


def test_closure_of_three_cycle():
    G = enumerate_closure([Permutation.parse("(0 1 2)", 3)])
    assert G.order == 3
    assert conjugacy_classes(G) == sorted(conjugacy_classes(G), key=lambda t: (t[1], t[0]))
    assert [s for _, s in conjugacy_classes(G)] == [1, 1, 1]
    report = involution_class_decomposition(G)
    assert report.classes == () and report.total_involutions == 0 and report.k2 == 0


def test_counterexample_orders(group):
    assert group("psp4:3").order == 25920
    assert group("psl3:4").order == 20160


def test_element_order_examples(group):
    G = group("psp4:3")
    minus_i = Matrix.scalar(field_make(3)(2), 4)
    assert element_order(minus_i, G) == 1
    assert element_order(G.identity, G) == 1
    A4 = enumerate_closure(standard_generators("alt:4"))
    assert element_order(Permutation.parse("(0 1)(2 3)", 4), A4) == 2


def test_alt5_spectrum_and_classes(group):
    G = group("alt:5")
    assert order_spectrum(G).entries == {1: 1, 2: 15, 3: 20, 5: 24}
    assert sorted(s for _, s in conjugacy_classes(G)) == [1, 12, 12, 15, 20]
    assert order_spectrum(G).primes == [2, 3, 5]


def test_alt5_generator_independence(group):
    other = enumerate_closure([Permutation.parse("(0 1 2 3 4)", 5), Permutation.parse("(2 3 4)", 5)])
    assert np.array_equal(other.elements, group("alt:5").elements)
    assert order_spectrum(other) == order_spectrum(group("alt:5"))


def test_result_independent_of_generator_order():
    gens = generators("SL2", 5)
    scal = center_scalars("SL2", 5)
    a = enumerate_closure(gens, center_scalars=scal)
    b = enumerate_closure(list(reversed(gens)), center_scalars=scal)
    assert np.array_equal(a.elements, b.elements)


def test_involution_count_examples(group):
    assert involution_count(group("psp4:3")) == 315
    assert involution_count(group("psl3:4")) == 315
    assert involution_count(group("alt:8")) == 315
    assert involution_count(group("cyclic:2")) == 1
    assert order_spectrum(group("cyclic:2")).entries == {1: 1, 2: 1}
    assert order_spectrum(group("alt:7"))[2] == 105


def test_psp43_classes(group):
    G = group("psp4:3")
    report = involution_class_decomposition(G)
    assert [(c.class_size, c.centralizer_order) for c in report.classes] == [(45, 576), (270, 96)]
    assert report.k2 == 2 and report.total_involutions == 315 == report.index_sum()
    t, u = report.classes
    assert centralizer_order(G, t.representative) == 576
    assert centralizer_order(G, u.representative) == 96
    assert direct_centralizer_order(G, t.representative) == 576
    assert direct_centralizer_order(G, u.representative) == 96
    inv_classes = [c for c in conjugacy_classes(G) if element_order(c[0], G) == 2]
    assert len(inv_classes) == 2


def test_psl34_classes(group):
    report = involution_class_decomposition(group("psl3:4"))
    assert [(c.class_size, c.centralizer_order) for c in report.classes] == [(315, 64)]


def test_cap_exceeded():
    with pytest.raises(CapExceeded) as exc:
        enumerate_closure(standard_generators("alt:7"), cap=100, group_id="alt:7")
    assert exc.value.cap == 100 and "alt:7" in str(exc.value)


@pytest.mark.parametrize("gid", SMALL_IDS + MID_IDS + ["psp4:3", "psl3:4"])
def test_group_invariants(group, gid):
    G = group(gid)
    check_closure(G)
    sp = order_spectrum(G)
    assert sum(sp.entries.values()) == G.order
    assert sp[1] == 1
    assert all(G.order % k == 0 for k in sp.entries)
    classes = conjugacy_classes(G)
    assert sum(s for _, s in classes) == G.order
    for rep, size in classes:
        assert G.order % size == 0
        assert size * centralizer_order(G, rep) == G.order
    report = involution_class_decomposition(G)
    assert report.total_involutions == involution_count(G) == report.index_sum()
    for c in report.classes:
        assert c.class_size * c.centralizer_order == G.order


@pytest.mark.parametrize("gid", SMALL_IDS)
def test_direct_centralizer_every_element_small(group, gid):
    G = group(gid)
    labels = G.class_labels
    sizes = np.bincount(labels)
    direct = direct_centralizer_orders(G, G.elements)
    assert np.array_equal(direct, G.order // sizes[labels])


@pytest.mark.slow
@pytest.mark.parametrize("gid", MID_IDS)
def test_direct_centralizer_every_element_mid(group, gid):
    G = group(gid)
    labels = G.class_labels
    sizes = np.bincount(labels)
    direct = direct_centralizer_orders(G, G.elements)
    assert np.array_equal(direct, G.order // sizes[labels])


def test_single_class_matches_full_partition(group):
    G = group("m11")
    for rep, size in conjugacy_classes(G):
        assert len(conjugacy_class(G, rep)) == size


def test_element_orders_match_repeated_multiplication(group):
    G = group("psl2:9")
    rng = np.random.default_rng(3)
    for c in G.elements[rng.integers(0, G.order, 40)]:
        m = G.element(int(c))
        power, k = m, 1
        while not G.kind.is_identity(G.kind.to_batch([power]))[0]:
            power, k = power @ m, k + 1
        assert element_order(int(c), G) == k
