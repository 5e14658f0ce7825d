import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ntc import lattice, oracles
from ntc.lattice import Cycle, GraphError, WeightedDualGraph

F = Fraction


def test_forms(fx, d5_vertex):
    assert d5_vertex.form == ((-5,),)
    assert fx("ex4_4_m").form == ((-2, 1), (1, -1))
    g = fx("ex5_11_1")
    assert [g.form[i][i] for i in range(6)] == [-10, -1, -2, -2, -2, -2]
    for i in range(6):
        for j in range(6):
            if abs(i - j) > 1:
                assert g.form[i][j] == 0
            elif i != j:
                assert g.form[i][j] == 1


def test_negative_definite():
    assert lattice.is_negative_definite([[-5]])
    assert lattice.is_negative_definite([[-2, 1], [1, -1]])
    assert not lattice.is_negative_definite([[-1, 2], [2, -1]])
    assert lattice.leading_minors([[2, -1], [-1, 1]]) == [2, 1]


def test_indefinite_graph_rejected():
    with pytest.raises(GraphError) as err:
        WeightedDualGraph.build([("A", -1, 0), ("B", -1, 0)], [("A", "B"), ("A", "B")])
    assert err.value.code == "E_NOT_NEGDEF"


def test_canonical_values(fx, d5_vertex, rational_vertex):
    assert d5_vertex.kvals == (15,)
    assert rational_vertex.kvals == (0,)
    assert fx("ex4_4_m").kvals == (2, -1)


def test_pairings(fx):
    g = fx("ex4_4_m")
    assert lattice.pairing(g.form, [0, 0], [3, 4]) == 0
    assert lattice.canonical_pairing(g, [1, 2]) == 0
    g1 = fx("ex5_11_1")
    z = lattice.dual_cycle(g1, "E5")
    assert lattice.pairing(g1.form, z, z) == -10
    assert lattice.chi(g1, z) == 0


def test_chi_examples(d5_vertex, fx):
    assert lattice.chi(d5_vertex, [0]) == 0
    assert lattice.chi(d5_vertex, [2]) == -5


def test_duals(fx, d5_vertex):
    assert list(lattice.dual_cycle(d5_vertex, "C")) == [F(1, 5)]
    assert list(lattice.dual_cycle(fx("ex4_4_m"), "E2")) == [1, 2]
    g = fx("ex5_11_1")
    assert list(lattice.dual_cycle(g, "E5")) == [1, 10, 8, 6, 4, 2]
    assert [v.id for v in g.vertices] == ["E0", "E5", "E4", "E3", "E2", "E1"]


def test_cycle_from_arrows(fx):
    assert list(lattice.cycle_from_arrows(fx("ex4_4_m"))) == [1, 2]
    assert list(lattice.cycle_from_arrows(fx("ex4_4_m2"))) == [2]
    g = WeightedDualGraph.build([("v", -3, 0), ("w", -2, 0)], [("v", "w")], [("v", 1), ("v", 1)])
    assert lattice.cycle_from_arrows(g) == lattice.dual_cycle(g, "v").scale(2)


def test_cycle_from_arrows_needs_arrows(a2):
    with pytest.raises(GraphError) as err:
        lattice.cycle_from_arrows(a2)
    assert err.value.code == "E_NO_ARROWS"


def test_antinef(fx):
    g = fx("ex4_4_m")
    for v in g.vertices:
        assert lattice.is_antinef(g, lattice.dual_cycle(g, v.id))
    assert lattice.is_antinef(g, [1, 1])
    assert lattice.products(g, [1, 1]) == [-1, 0]
    assert not lattice.is_antinef(g, [1, 0])


def test_fundamental_cycle(fx, d5_vertex, a2):
    assert list(lattice.fundamental_cycle(d5_vertex)) == [1]
    assert list(lattice.fundamental_cycle(a2)) == [1, 1]
    assert list(lattice.fundamental_cycle(fx("ex4_4_m"))) == [1, 1]
    assert lattice.chi(fx("ex4_4_m"), [1, 1]) == 0


def test_canonical_cycle(fx, d5_vertex, rational_vertex):
    assert list(lattice.canonical_cycle(d5_vertex)) == [3]
    assert list(lattice.canonical_cycle(rational_vertex)) == [0]
    assert list(lattice.canonical_cycle(fx("ex4_4_m"))) == [1, 0]
    assert list(lattice.canonical_cycle(fx("ex5_11_1"))) == [3, 10, 8, 6, 4, 2]


def test_enumerate_below(d5_vertex, a2):
    assert [list(z) for z in lattice.enumerate_antinef_below(d5_vertex, [3])] == [[1], [2]]
    assert lattice.enumerate_antinef_below(d5_vertex, [1]) == []
    assert lattice.enumerate_antinef_below(a2, [1, 1]) == []
    with pytest.raises(GraphError):
        lattice.enumerate_antinef_below(a2, [-1, 2])
    with pytest.raises(GraphError):
        lattice.enumerate_antinef_below(a2, [F(1, 2), 2])


def test_enumerate_canonical(d5_vertex, rational_vertex, fx):
    res = lattice.enumerate_antinef_not_exceeding_canonical(d5_vertex)
    assert [(list(z), c) for z, c in res.entries] == [([1], -5), ([2], -5), ([3], 0)]
    assert res.warnings == [lattice.FIXED_COMPONENT_NOTE]
    empty = lattice.enumerate_antinef_not_exceeding_canonical(rational_vertex)
    assert empty.entries == [] and len(empty.warnings) == 2


def test_enumerate_canonical_cross_oracle(fx):
    # the Z_K list is the below-list for W = ceil(Z_K) + 1 filtered by the predicate
    for name in ("ex4_4_m", "ex5_11_1", "homog_d5", "double_edge"):
        g = fx(name)
        res = lattice.enumerate_antinef_not_exceeding_canonical(g)
        zk = res.zk
        w = [max(c, 0) + 1 for c in zk.ceil()]
        ref = [z for z in lattice.enumerate_antinef_below(g, w) if not lattice.exceeds(z, zk)]
        assert [z for z, _ in res.entries] == ref, name
        assert all(chi == lattice.chi(g, z) for z, chi in res.entries)


def test_ex4_4_m_zk_enumeration_is_empty(fx):
    # Z_K = E_1; E_1 + E_2 exceeds it and E_1 is not anti-nef
    res = lattice.enumerate_antinef_not_exceeding_canonical(fx("ex4_4_m"))
    assert res.entries == []


def test_chi_min(d5_vertex, rational_vertex, fx):
    r = lattice.chi_min(d5_vertex, [3])
    assert (r.value, list(r.witness)) == (-5, [1])
    r = lattice.chi_min(rational_vertex, [2])
    assert (r.value, list(r.witness)) == (1, [1])
    r = lattice.chi_min(fx("ex4_4_m"), [2, 2])
    assert r.value == 0
    assert list(r.witness) == [1, 0]
    assert lattice.chi(fx("ex4_4_m"), [1, 1]) == 0
    with pytest.raises(GraphError):
        lattice.chi_min(d5_vertex, [0])


def test_default_chi_bound(fx):
    assert list(lattice.default_chi_bound(fx("ex4_4_m"))) == [3, 1]


graph_seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=60, deadline=None)
@given(graph_seeds, st.lists(st.integers(-8, 8), min_size=5, max_size=5))
def test_chi_integral_on_integral_cycles(seed, coeffs):
    g = oracles.random_graph(random.Random(seed))
    z = coeffs[: len(g)]
    s = lattice.pairing(g.form, z, z) + lattice.canonical_pairing(g, z)
    assert s.denominator == 1 and s % 2 == 0


@settings(max_examples=60, deadline=None)
@given(graph_seeds)
def test_duals_positive_antinef(seed):
    g = oracles.random_graph(random.Random(seed))
    for j, d in enumerate(g.duals):
        assert all(c > 0 for c in d)
        assert lattice.products(g, d) == [-1 if i == j else 0 for i in range(len(g))]


@settings(max_examples=40, deadline=None)
@given(graph_seeds)
def test_fundamental_cycle_matches_brute_force(seed):
    g = oracles.random_graph(random.Random(seed), max_vertices=4)
    fc = lattice.fundamental_cycle(g)
    if max(fc) <= 5:
        assert tuple(fc) == oracles.minimal_antinef_box(g, 5)


@settings(max_examples=40, deadline=None)
@given(graph_seeds)
def test_below_enumeration_matches_box_oracle(seed):
    g = oracles.random_graph(random.Random(seed), max_vertices=3)
    w = lattice.fundamental_cycle(g).scale(2)
    got = [tuple(z) for z in lattice.enumerate_antinef_below(g, w)]
    # every boxed anti-nef cycle that is not >= W must be listed
    box = [4 * int(max(w))] * len(g)
    ref = {tuple(F(c) for c in z) for z in oracles.antinef_in_box(g, box) if not Cycle(z).geq(w)}
    assert set(got) >= ref
    for z in got:
        assert lattice.is_antinef(g, z) and not Cycle(z).geq(w)
    assert got == sorted(set(got))
