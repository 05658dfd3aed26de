"""Random instances shared by the property tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

from multicount.flow import CountingSetup, Edge, FlowNetwork


def _layered_relations(rng: random.Random) -> tuple[dict, dict]:
    """Classes growing layer by layer, moves pointing forward; most classes end up with hat-alpha < 1."""
    sizes = [rng.randint(1, 2)]
    while len(sizes) < rng.randint(2, 6) and sum(sizes) < 40:
        sizes.append(min(sizes[-1] * rng.randint(2, 4), 40 - sum(sizes)))
    sizes = [x for x in sizes if x > 0]
    classes, obj = {}, 0
    for v, size in enumerate(sizes):
        classes[v] = [f"q{obj + i}" for i in range(size)]
        obj += size
    relations: dict = {}
    colours = list(range(rng.randint(1, 3)))
    for v in range(len(sizes) - 1):
        for c in rng.sample(colours, rng.randint(1, len(colours))):
            pool = [q for w in range(v + 1, len(sizes)) if w == v + 1 or rng.random() < 0.3 for q in classes[w]]
            rng.shuffle(pool)
            turn = 0
            d = rng.randint(min(2, len(pool)), min(4, len(pool)))
            for q in classes[v]:
                for _ in range(d):
                    relations.setdefault(c, []).append((q, pool[turn % len(pool)]))
                    turn += 1
    return classes, relations


def _scattered_relations(rng: random.Random) -> tuple[dict, dict]:
    """Arbitrary classes and moves; hat-alpha is usually at least 1 here."""
    n_classes = rng.randint(1, 8)
    classes = {}
    obj = 0
    for v in range(n_classes):
        size = rng.randint(1, max(1, min(5, 40 - obj - (n_classes - v - 1))))
        classes[v] = [f"q{obj + i}" for i in range(size)]
        obj += size
    relations = {}
    for c in range(rng.randint(1, 3)):
        sources = [v for v in classes if rng.random() < 0.6]
        targets = rng.sample(list(classes), rng.randint(1, n_classes))
        pool = [q for v in targets for q in classes[v]]
        pairs = [(q, rng.choice(pool)) for v in sources for q in classes[v] for _ in range(rng.randint(1, 3))]
        if pairs:
            relations[c] = pairs
    return classes, relations


def random_counting_setup(rng: random.Random) -> CountingSetup:
    """At most 8 classes, 3 colours and 40 objects; each claimed a/b is valid, sometimes slack."""
    classes, relations = (_layered_relations if rng.random() < 0.8 else _scattered_relations)(rng)
    cs = CountingSetup(classes, relations)
    # loosen some bounds: a smaller than the true minimum, b larger than the true maximum
    out_count, in_count = {}, {}
    for c, pairs in relations.items():
        for q, r in pairs:
            out_count[(q, c)] = out_count.get((q, c), 0) + 1
            in_count[(r, c)] = in_count.get((r, c), 0) + 1
    for v, objs in classes.items():
        for c in relations:
            outs = [out_count.get((q, c), 0) for q in objs]
            if min(outs) > 0 and rng.random() < 0.3:
                cs.a[(v, c)] = Fraction(min(outs)) * Fraction(rng.randint(1, 4), 4)
            ins = [in_count.get((r, c), 0) for r in objs]
            if max(ins) > 0 and rng.random() < 0.3:
                cs.b[(v, c)] = max(ins) + Fraction(rng.randint(0, 8), 4)
    return cs


def random_lambda(rng: random.Random, net: FlowNetwork):
    """None, a constant, or per-vertex weights summing to at most 1."""
    choice = rng.random()
    if choice < 0.4:
        return None
    if choice < 0.6:
        most = max((len(net.colours_in(v)) for v in net.N), default=1) or 1
        return Fraction(1, most + rng.randint(0, 2))
    table = {}
    for v in net.N:
        cs = sorted(net.colours_in(v))
        if not cs:
            continue
        raw = [Fraction(rng.randint(1, 6)) for _ in cs]
        scale = sum(raw) * Fraction(rng.randint(4, 6), 4)
        table[v] = {c: x / scale for c, x in zip(cs, raw)}
    return table


def structural_sets(rng: random.Random, net: FlowNetwork) -> tuple[list, list]:
    """Z holds every sink and every vertex with an outgoing hat-alpha >= 1; Y is random among the rest."""
    Z = set(net.sinks())
    for e in net.edges:
        if net.hat_alpha(e) >= 1:
            Z.add(e.src)
    rest = [v for v in net.N if v not in Z]
    if not Z:
        pick = rng.choice(rest)
        Z.add(pick)
        rest.remove(pick)
    Y = [v for v in rest if rng.random() < 0.6]
    return Y, sorted(Z, key=str)


def random_network(rng: random.Random, n: int | None = None) -> FlowNetwork:
    n = n or rng.randint(2, 7)
    N = {v: Fraction(rng.randint(0, 9)) for v in range(n)}
    edges = []
    for _ in range(rng.randint(1, 3 * n)):
        a, b = rng.randrange(n), rng.randrange(n)
        edges.append(Edge(a, b, rng.randint(1, 3), Fraction(rng.randint(1, 12), rng.randint(1, 12)), Fraction(rng.randint(0, 5))))
    return FlowNetwork(N, edges)


def adversarial_network(rng: random.Random) -> tuple[FlowNetwork, list, list]:
    """A network plus Y, Z that break the second structural condition."""
    net = random_network(rng)
    Y, Z = structural_sets(rng, net)
    outside = [v for v in net.N if v not in Z]
    if rng.random() < 0.5 or not outside:
        # a fresh sink that is left out of Z
        sink = len(net.N)
        N = dict(net.N)
        N[sink] = Fraction(rng.randint(0, 9))
        src = rng.choice(list(net.N))
        edges = net.edges + [Edge(src, sink, 1, Fraction(1, 2), Fraction(1))]
        net = FlowNetwork(N, edges)
        Z = [z for z in Z if z != sink] or [src]
        Y = [y for y in Y if y not in Z]
        return net, Y, Z
    # an edge out of a non-Z vertex with hat-alpha pushed to at least 1
    v = rng.choice(outside)
    edges = list(net.edges)
    idx = next((i for i, e in enumerate(edges) if e.src == v), None)
    if idx is None:
        edges.append(Edge(v, rng.choice(Z), 1, Fraction(1), Fraction(0)))
    else:
        e = edges[idx]
        edges[idx] = Edge(e.src, e.dst, e.colour, e.alpha * rng.randint(20, 200), e.s)
    net = FlowNetwork(net.N, edges)
    return net, [y for y in Y if y not in Z], Z
