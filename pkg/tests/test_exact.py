import random

import pytest
from hypothesis import given, settings, strategies as st

from multicount.degrees import Multigraph, MultiplicitySet
from multicount.errors import BudgetExceeded, OddTotalDegree
from multicount.exact import (
    ClassSignature,
    class_census,
    count_class,
    count_exact,
    count_region,
    enumerate_multigraphs,
    iter_multigraphs,
)
from oracles import brute_count, brute_graphs

SETS = [("0,1", "0"), ("0,1,2", "0,1"), ("0,1,+3", "0,+2"), ("+0", "+0"), ("0,1,3", "0,2")]


def test_k4_forced():
    assert count_exact((3, 3, 3, 3), "0,1", "0") == 1


def test_two_vertices_degree_two():
    assert count_exact((2, 2), "0,1,2", "0,1") == 2


@pytest.mark.parametrize("method", ["dp", "backtrack"])
def test_cubic_six(method):
    assert count_exact((3,) * 6, "0,1", "0", method=method) == 70


def test_odd_total():
    with pytest.raises(OddTotalDegree):
        count_exact((1, 1, 1), "0,1", "0")


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_exact((3,) * 10, "0,1", "0", method="backtrack", budget=50)
    with pytest.raises(BudgetExceeded):
        count_exact((3,) * 10, "0,1", "0", budget=5)


instances = st.tuples(
    st.lists(st.integers(0, 4), min_size=1, max_size=5),
    st.sampled_from(SETS),
).filter(lambda x: sum(x[0]) % 2 == 0)


@settings(max_examples=120, deadline=None)
@given(instances)
def test_both_strategies_match_brute_force(inst):
    degs, (J, Js) = inst
    J, Js = MultiplicitySet.parse(J), MultiplicitySet.parse(Js)
    truth = brute_count(degs, J, Js)
    assert count_exact(degs, J, Js, method="dp") == truth
    assert count_exact(degs, J, Js, method="backtrack") == truth


def test_strategies_agree_up_to_seven_vertices():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 7)
        degs = [rng.randint(0, 4) for _ in range(n)]
        if sum(degs) % 2:
            degs[0] = degs[0] + 1 if degs[0] < 4 else degs[0] - 1
        J, Js = rng.choice(SETS)
        assert count_exact(degs, J, Js, method="dp") == count_exact(degs, J, Js, method="backtrack")


@settings(max_examples=60, deadline=None)
@given(instances, st.randoms(use_true_random=False))
def test_permutation_invariance(inst, rnd):
    degs, (J, Js) = inst
    shuffled = list(degs)
    rnd.shuffle(shuffled)
    assert count_exact(shuffled, J, Js) == count_exact(degs, J, Js)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=5).filter(lambda d: sum(d) % 2 == 0))
def test_monotone_in_sets(degs):
    chain = [("0,1", "0"), ("0,1,2", "0"), ("0,1,2", "0,1"), ("+0", "+0")]
    counts = [count_exact(degs, J, Js) for J, Js in chain]
    assert counts == sorted(counts)


def test_enumerate_examples():
    e = enumerate_multigraphs((2, 2), "+0", "+0")
    assert not e.truncated
    assert {g.mult for g in e.graphs} == {((0, 2), (2, 0)), ((1, 0), (0, 1))}
    e = enumerate_multigraphs((0, 0), "0,1", "0")
    assert [g.mult for g in e.graphs] == [((0, 0), (0, 0))]
    e = enumerate_multigraphs((2, 2), "+0", "+0", cap=1)
    assert len(e.graphs) == 1 and e.truncated


@settings(max_examples=60, deadline=None)
@given(instances)
def test_enumeration_is_lexicographic_and_complete(inst):
    degs, (J, Js) = inst
    graphs = list(iter_multigraphs(degs, J, Js))
    keys = [g.upper() for g in graphs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    J, Js = MultiplicitySet.parse(J), MultiplicitySet.parse(Js)
    assert {g.mult for g in graphs} == set(brute_graphs(degs, J, Js))
    assert len(graphs) == count_exact(degs, J, Js)


def test_class_examples():
    assert count_class((2, 2), ClassSignature(2, 0, 0)) == 1
    assert count_class((2, 2), ClassSignature(0, 1, 0)) == 1
    assert count_class((3, 3), ClassSignature(0, 0, 1)) == 1


def _signature(G: Multigraph):
    loops = [G.loop(i) for i in range(G.n)]
    links = [G.link(i, j) for i in range(G.n) for j in range(i + 1, G.n)]
    if any(x >= 2 for x in loops) or any(x >= 4 for x in links):
        return None
    return ClassSignature(loops.count(1), links.count(2), links.count(3))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=5).filter(lambda d: sum(d) % 2 == 0 and sum(d) <= 12))
def test_census_partitions_low_multiplicity_graphs(degs):
    census = class_census(degs)
    brute = {}
    for G in iter_multigraphs(degs, "+0", "+0"):
        sig = _signature(G)
        if sig is not None:
            brute[sig] = brute.get(sig, 0) + 1
    assert census == brute
    assert sum(census.values()) == count_exact(degs, "0,1,2,3", "0,1")


def test_region_examples():
    assert count_region((2, 2), "0,1", "0", "G0") == 0
    assert count_region((2, 2), "0,1,2", "0", "G0") == 1


def _region_brute(degs, J, Js, caps):
    from multicount.exact import g0_sets

    links, loops = g0_sets(J, Js)
    total = 0
    for G in iter_multigraphs(degs, links, loops):
        sig = _signature(G)
        if sig is not None and sig.ell <= caps[0] and sig.d <= caps[1] and sig.t <= caps[2]:
            total += 1
    return total


@settings(max_examples=80, deadline=None)
@given(instances)
def test_sandwich_and_region_brute_force(inst):
    from multicount.switching import thresholds

    degs, (J, Js) = inst
    if sum(degs) == 0:
        return
    inner = count_region(degs, J, Js, "G0_minus_Y")
    middle = count_exact(degs, J, Js)
    outer = count_region(degs, J, Js, "G0")
    z = count_region(degs, J, Js, "Z")
    assert z <= inner <= middle <= outer
    th = thresholds(degs)
    assert inner == _region_brute(degs, J, Js, (th.N1, th.N2, th.N3))
    assert z == _region_brute(degs, J, Js, (th.half_N1, th.half_N2, th.half_N3))


def test_tiny_caps_separate_z_from_complement():
    # with M large relative to M2 the caps bind: one vertex of degree 2 among many leaves
    from multicount.switching import thresholds

    degs = (2,) + (1,) * 40
    th = thresholds(degs)
    assert th.half_N1 < th.N1
    assert count_region(degs, "0,1", "0,1", "Z") <= count_region(degs, "0,1", "0,1", "G0_minus_Y")
