import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multicount.errors import InvalidBound, SetOverlap, StructuralViolation
from multicount.flow import (
    CountingSetup,
    Edge,
    FlowNetwork,
    feasible,
    from_counting_setup,
    hat_alpha_path,
    one_colour_check,
    switching_setup,
    verify_bound,
)
from generators import adversarial_network, random_counting_setup, random_lambda, random_network, structural_sets

F = Fraction


def single_edge(Ny=2):
    return FlowNetwork({"y": Ny, "z": 4}, [Edge("y", "z", 1, F(1, 2), 4)])


def test_single_edge_feasible():
    assert feasible(single_edge()).ok


def test_single_edge_violation():
    report = feasible(single_edge(3))
    assert not report.ok
    (v,) = report.violations
    assert (v.family, v.vertex, v.colour) == ("alpha*out>=N", "y", 1)


def test_empty_network_feasible():
    assert feasible(FlowNetwork({"a": 0, "b": 0}, [])).ok


def test_path_chain():
    net = FlowNetwork({"y": 1, "u": 1, "z": 1}, [Edge("y", "u", 1, F(1, 2)), Edge("u", "z", 1, F(1, 3))])
    assert hat_alpha_path(net, ["y"], ["z"]) == (F(1, 6), 0)


def test_path_direct_and_return():
    net = FlowNetwork({"y": 1, "y2": 1, "z": 1}, [Edge("y", "z", 1, F(3, 4)), Edge("y", "y2", 1, F(1, 4))])
    assert hat_alpha_path(net, ["y", "y2"], ["z"]) == (F(3, 4), F(1, 4))


def test_path_empty_set():
    net = FlowNetwork({"y": 1, "z": 1}, [Edge("z", "y", 1, F(1, 2))])
    assert hat_alpha_path(net, ["y"], ["z"])[0] == 0


def test_path_overlap():
    with pytest.raises(SetOverlap):
        hat_alpha_path(single_edge(), ["y"], ["y", "z"])


def test_path_uses_lambda():
    # two colours enter z, so the default lambda is 1/2 and hat-alpha doubles
    net = FlowNetwork({"y": 1, "z": 1}, [Edge("y", "z", 1, F(1, 4)), Edge("y", "z", 2, F(1, 8))])
    assert hat_alpha_path(net, ["y"], ["z"]) == (F(1, 2), 0)


def test_verify_single_edge_equality():
    cert = verify_bound(single_edge(), ["y"], ["z"])
    assert cert.lhs == 2 and cert.rhs == 2 and cert.holds and cert.feasible


def test_verify_sink_outside_z():
    net = FlowNetwork({"y": 1, "u": 1, "z": 1}, [Edge("y", "z", 1, F(1, 2)), Edge("y", "u", 1, F(1, 2))])
    with pytest.raises(StructuralViolation, match="sink"):
        verify_bound(net, ["y"], ["z"])


def test_verify_large_alpha_outside_z():
    net = FlowNetwork({"y": 1, "z": 1}, [Edge("y", "z", 1, F(2)), Edge("z", "y", 1, F(1, 2))])
    with pytest.raises(StructuralViolation, match="hat-alpha"):
        verify_bound(net, ["y"], ["z"])


def test_verify_empty_z():
    with pytest.raises(StructuralViolation):
        verify_bound(single_edge(), ["y"], [])


def test_return_path_weight_stays_below_one():
    # once the structural check passes every step out of Y has hat-alpha < 1,
    # so a Y->Y cycle weight of 1 is caught as a structural failure first
    net = FlowNetwork(
        {"y": 1, "u": 1, "z": 1},
        [Edge("y", "u", 1, F(9, 10)), Edge("u", "y", 2, F(9, 10)), Edge("y", "z", 1, F(1, 2)), Edge("u", "z", 1, F(1, 2))],
        lam={"u": {1: F(1)}, "y": {2: F(1)}, "z": {1: F(1)}},
    )
    assert verify_bound(net, ["y"], ["z"]).pYY == F(81, 100)
    heavier = FlowNetwork(net.N, net.edges, {"u": {1: F(9, 10)}, "y": {2: F(9, 10)}, "z": {1: F(1)}})
    with pytest.raises(StructuralViolation):
        verify_bound(heavier, ["y"], ["z"])


def test_counting_setup_example():
    cs = CountingSetup(
        {1: ["a", "b", "c"], 2: ["p", "q", "r", "s", "t"]},
        {"c": [("a", "p"), ("a", "q"), ("b", "q"), ("b", "r"), ("c", "s"), ("c", "t")]},
        a={(1, "c"): 2},
        b={(2, "c"): 2},
    )
    net = from_counting_setup(cs, lam=1)
    (e,) = net.edges
    assert e.s == 3 and e.alpha == 1
    assert feasible(net).ok


def test_counting_setup_bad_claim():
    cs = CountingSetup({1: ["a", "b"], 2: ["p"]}, {0: [("a", "p"), ("a", "p"), ("b", "p")]}, a={(1, 0): 2})
    with pytest.raises(InvalidBound, match="a at"):
        from_counting_setup(cs)
    cs = CountingSetup({1: ["a", "b"], 2: ["p"]}, {0: [("a", "p"), ("b", "p")]}, b={(2, 0): 1})
    with pytest.raises(InvalidBound, match="b at"):
        from_counting_setup(cs)


def test_switching_setup_is_feasible():
    cs, Y, Z = switching_setup((4, 1, 1, 1, 1), "0,1", "0", colours=[9, 13])
    net = from_counting_setup(cs)
    assert feasible(net).ok
    assert Z and set(Y).isdisjoint(Z)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_setups_satisfy_bound(seed):
    rng = random.Random(seed)
    cs = random_counting_setup(rng)
    net = from_counting_setup(cs)
    net = from_counting_setup(cs, random_lambda(rng, net))
    assert feasible(net).ok
    assert one_colour_check(net).ok
    Y, Z = structural_sets(rng, net)
    cert = verify_bound(net, Y, Z)
    assert cert.holds, cert.to_json()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adversarial_rejected(seed):
    net, Y, Z = adversarial_network(random.Random(seed))
    with pytest.raises(StructuralViolation, match="condition 2"):
        verify_bound(net, Y, Z)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_paths_monotone_under_new_edge(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    vs = list(net.N)
    rng.shuffle(vs)
    cut = rng.randint(1, len(vs) - 1)
    Y, Z = vs[:cut], vs[cut:]
    # fixed lambda so that the new edge cannot lower existing hat-alphas
    lam = {v: {c: F(1, 3) for c in (1, 2, 3)} for v in net.N}
    before = hat_alpha_path(FlowNetwork(net.N, net.edges, lam), Y, Z)
    extra = Edge(rng.choice(vs), rng.choice(vs), rng.randint(1, 3), F(rng.randint(1, 9), 10))
    after = hat_alpha_path(FlowNetwork(net.N, net.edges + [extra], lam), Y, Z)
    assert after[0] >= before[0] and after[1] >= before[1]


def test_bound_without_return_paths():
    # no Y->Y path, so the bound is pYZ * sum_Z N
    net = FlowNetwork({"y": 2, "z": 4}, [Edge("y", "z", 1, F(1, 2), 4)])
    cert = verify_bound(net, ["y"], ["z"])
    assert cert.pYY == 0 and cert.rhs == cert.pYZ * 4


def test_json_round_trip():
    net = FlowNetwork(
        {"y": 2, "z": 4}, [Edge("y", "z", "c1", F(1, 2), 4), Edge("z", "y", "c2", F(1, 3), 1)],
        lam={"z": {"c1": F(1, 2)}, "y": {"c2": F(1)}},
    )
    data = json.loads(json.dumps(net.to_json(["y"], ["z"])))
    back, Y, Z = FlowNetwork.from_json(data)
    assert (Y, Z) == (["y"], ["z"])
    assert back.N == net.N and back.edges == net.edges
    assert all(back.lambda_(e.dst, e.colour) == net.lambda_(e.dst, e.colour) for e in net.edges)
