"""Coloured flow networks and the multi-colour switching bound.

A network has vertices with totals N(v) and coloured directed edges with
weights alpha > 0 and loads s >= 0.  The linear system checked by
:func:`feasible` is

* N(v) >= 0 and s(e) >= 0,
* for every (v, c): the loads of colour-c edges entering v sum to at most N(v),
* for every (v, c) with a colour-c edge leaving v: sum of alpha * s over
  those edges is at least N(v).

For sets Y, Z satisfying the structural conditions, every solution obeys
``sum_Y N <= pYZ / (1 - pYY) * sum_Z N``, where pYZ (pYY) is the largest
product of hat-alpha along a path from Y to Z (Y to Y) with no interior
vertex in Y or Z.  All arithmetic is exact (Fractions).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable

from .errors import DivergentBound, InvalidBound, SetOverlap, StructuralViolation


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


@dataclass(frozen=True)
class Edge:
    src: Hashable
    dst: Hashable
    colour: Hashable
    alpha: Fraction
    s: Fraction = Fraction(0)


@dataclass
class FlowNetwork:
    N: dict
    edges: list[Edge]
    lam: dict | None = None
    _colours_in: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        self.N = {v: as_fraction(x) for v, x in self.N.items()}
        self.edges = [Edge(e.src, e.dst, e.colour, as_fraction(e.alpha), as_fraction(e.s)) for e in self.edges]
        for e in self.edges:
            if e.src not in self.N or e.dst not in self.N:
                raise ValueError(f"edge {e.src}->{e.dst} references an unknown vertex")
            if e.alpha <= 0:
                raise ValueError(f"edge {e.src}->{e.dst} has non-positive alpha")
        cin = defaultdict(set)
        for e in self.edges:
            cin[e.dst].add(e.colour)
        self._colours_in = dict(cin)
        if self.lam is not None:
            self.lam = {v: {c: as_fraction(x) for c, x in d.items()} for v, d in self.lam.items()}

    @property
    def colours(self) -> set:
        return {e.colour for e in self.edges}

    def colours_in(self, v) -> set:
        return self._colours_in.get(v, set())

    def lambda_(self, v, c) -> Fraction:
        """lambda_c(v); defaults to 1/|C(v)| when no weights were given."""
        if self.lam is not None and v in self.lam and c in self.lam[v]:
            return self.lam[v][c]
        return Fraction(1, len(self.colours_in(v)))

    def hat_alpha(self, e: Edge) -> Fraction:
        return e.alpha / self.lambda_(e.dst, e.colour)

    def out_edges(self, v) -> list[Edge]:
        return [e for e in self.edges if e.src == v]

    def sinks(self) -> list:
        has_out = {e.src for e in self.edges}
        return [v for v in self.N if v not in has_out]

    def to_json(self, Y: Iterable = (), Z: Iterable = ()) -> dict:
        lam = {
            str(v): {str(c): str(self.lambda_(v, c)) for c in sorted(self.colours_in(v), key=str)}
            for v in self.N if self.colours_in(v)
        }
        return {
            "vertices": [{"id": v, "N": str(x)} for v, x in self.N.items()],
            "edges": [
                {"from": e.src, "to": e.dst, "colour": e.colour, "alpha": str(e.alpha), "s": str(e.s)}
                for e in self.edges
            ],
            "lambda": lam,
            "Y": list(Y),
            "Z": list(Z),
        }

    @classmethod
    def from_json(cls, data: dict) -> tuple["FlowNetwork", list, list]:
        N = {v["id"]: Fraction(str(v["N"])) for v in data["vertices"]}
        edges = [
            Edge(e["from"], e["to"], e.get("colour", 1), Fraction(str(e["alpha"])), Fraction(str(e.get("s", 0))))
            for e in data["edges"]
        ]
        by_name = {str(v): v for v in N}
        lam = None
        if data.get("lambda"):
            colour_by_name = {str(e.colour): e.colour for e in edges}
            lam = {
                by_name[str(v)]: {colour_by_name.get(str(c), c): Fraction(str(x)) for c, x in d.items()}
                for v, d in data["lambda"].items()
            }
        return cls(N, edges, lam), list(data.get("Y", [])), list(data.get("Z", []))


@dataclass(frozen=True)
class Violation:
    family: str
    vertex: Hashable
    colour: Hashable
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {"family": self.family, "vertex": self.vertex, "colour": self.colour, "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def feasible(net: FlowNetwork) -> FeasibilityReport:
    out: list[Violation] = []
    for v, x in net.N.items():
        if x < 0:
            out.append(Violation("N>=0", v, None, x, Fraction(0)))
    for e in net.edges:
        if e.s < 0:
            out.append(Violation("s>=0", e.src, e.colour, e.s, Fraction(0)))
    inflow: dict = defaultdict(Fraction)
    outflow: dict = defaultdict(Fraction)
    for e in net.edges:
        inflow[(e.dst, e.colour)] += e.s
        outflow[(e.src, e.colour)] += e.alpha * e.s
    for (v, c), total in sorted(inflow.items(), key=str):
        if total > net.N[v]:
            out.append(Violation("in<=N", v, c, total, net.N[v]))
    for (v, c), total in sorted(outflow.items(), key=str):
        if total < net.N[v]:
            out.append(Violation("alpha*out>=N", v, c, total, net.N[v]))
    for v in net.N:
        cs = net.colours_in(v)
        if cs:
            lam = [net.lambda_(v, c) for c in cs]
            if any(x <= 0 for x in lam) or sum(lam) > 1:
                out.append(Violation("lambda", v, None, sum(lam), Fraction(1)))
    return FeasibilityReport(tuple(out))


def one_colour_check(net: FlowNetwork) -> FeasibilityReport:
    """Feasibility of the collapsed system with s-hat(vw) = s(vw) * lambda_c(w)."""
    out: list[Violation] = []
    inflow: dict = defaultdict(Fraction)
    outflow: dict = defaultdict(Fraction)
    for e in net.edges:
        sh = e.s * net.lambda_(e.dst, e.colour)
        inflow[e.dst] += sh
        outflow[e.src] += net.hat_alpha(e) * sh
    for v, total in inflow.items():
        if total > net.N[v]:
            out.append(Violation("in<=N", v, None, total, net.N[v]))
    for v, total in outflow.items():
        if total < net.N[v]:
            out.append(Violation("alpha*out>=N", v, None, total, net.N[v]))
    return FeasibilityReport(tuple(out))


def hat_alpha_path(net: FlowNetwork, Y: Iterable, Z: Iterable) -> tuple[Fraction, Fraction]:
    """(max over Y->Z paths, max over Y->Y paths) of the hat-alpha product.

    Paths are non-trivial, vertex-simple (a Y->Y path may close at its start)
    and have no interior vertex in Y or Z.  An empty maximum is 0.
    """
    Y, Z = set(Y), set(Z)
    if Y & Z:
        raise SetOverlap(f"Y and Z share {sorted(Y & Z, key=str)}")
    adj = defaultdict(list)
    for e in net.edges:
        adj[e.src].append((e.dst, net.hat_alpha(e)))
    best = {"YZ": Fraction(0), "YY": Fraction(0)}

    def walk(v, weight: Fraction, visited: set) -> None:
        for w, h in adj[v]:
            p = weight * h
            if w in Z:
                best["YZ"] = max(best["YZ"], p)
            elif w in Y:
                best["YY"] = max(best["YY"], p)
            elif w not in visited:
                visited.add(w)
                walk(w, p, visited)
                visited.discard(w)

    for y in sorted(Y, key=str):
        walk(y, Fraction(1), {y})
    return best["YZ"], best["YY"]


@dataclass(frozen=True)
class BoundCertificate:
    lhs: Fraction
    rhs: Fraction
    pYZ: Fraction
    pYY: Fraction
    holds: bool
    feasible: bool

    def to_json(self) -> dict:
        return {
            "lhs": str(self.lhs), "rhs": str(self.rhs), "lhs_float": float(self.lhs), "rhs_float": float(self.rhs),
            "max_path_YZ": str(self.pYZ), "max_path_YY": str(self.pYY),
            "holds": self.holds, "feasible": self.feasible,
        }


def check_structure(net: FlowNetwork, Y: Iterable, Z: Iterable) -> None:
    """Raise StructuralViolation unless Y, Z meet the two structural conditions."""
    Y, Z = set(Y), set(Z)
    if not Z:
        raise StructuralViolation("condition 1: Z is empty")
    if Y & Z:
        raise StructuralViolation(f"condition 1: Y and Z intersect in {sorted(Y & Z, key=str)}")
    for v in net.sinks():
        if v not in Z:
            raise StructuralViolation(f"condition 2: sink {v!r} is outside Z")
    for e in net.edges:
        if e.src not in Z and net.hat_alpha(e) >= 1:
            raise StructuralViolation(
                f"condition 2: edge {e.src!r}->{e.dst!r} has hat-alpha {net.hat_alpha(e)} >= 1 but {e.src!r} is outside Z"
            )


def verify_bound(net: FlowNetwork, Y: Iterable, Z: Iterable) -> BoundCertificate:
    """Evaluate both sides of the path inequality at the stored solution."""
    Y, Z = list(Y), list(Z)
    check_structure(net, Y, Z)
    pYZ, pYY = hat_alpha_path(net, Y, Z)
    if pYY >= 1:
        raise DivergentBound(f"max Y->Y path weight {pYY} >= 1")
    lhs = sum((net.N[v] for v in Y), Fraction(0))
    rhs = pYZ / (1 - pYY) * sum((net.N[v] for v in Z), Fraction(0))
    return BoundCertificate(lhs, rhs, pYZ, pYY, lhs <= rhs, feasible(net).ok)


# ---------------------------------------------------------------------------
# counting setups
# ---------------------------------------------------------------------------

@dataclass
class CountingSetup:
    """Objects partitioned into classes, plus per-colour multisets of (Q, R) pairs.

    ``a`` maps (class, colour) to a claimed lower bound on moves out of each
    object; ``b`` maps (class, colour) to a claimed upper bound on moves into
    each object.  Missing entries are filled with the tight values.
    """

    classes: dict
    relations: dict
    a: dict = field(default_factory=dict)
    b: dict = field(default_factory=dict)

    def class_of(self) -> dict:
        out = {}
        for v, objs in self.classes.items():
            for q in objs:
                if q in out:
                    raise ValueError(f"object {q!r} lies in two classes")
                out[q] = v
        return out


def from_counting_setup(cs: CountingSetup, lam=None) -> FlowNetwork:
    """Build the network with N(v) = |S(v)|, s = s'/b and alpha = b/a.

    ``lam`` may be None (1/|C(v)|), a single number used for every (v, c),
    or a nested mapping vertex -> colour -> weight.
    """
    where = cs.class_of()
    out_count: dict = defaultdict(int)
    in_count: dict = defaultdict(int)
    sprime: dict = defaultdict(int)
    for c, pairs in cs.relations.items():
        for Q, R in pairs:
            if Q not in where or R not in where:
                raise ValueError(f"related object outside every class: {(Q, R)!r}")
            out_count[(Q, c)] += 1
            in_count[(R, c)] += 1
            sprime[(where[Q], where[R], c)] += 1

    a_val: dict = {}
    b_val: dict = {}
    for v, w, c in sprime:
        if (v, c) not in a_val:
            tight = min(out_count[(Q, c)] for Q in cs.classes[v])
            claim = as_fraction(cs.a.get((v, c), tight))
            if claim <= 0 or claim > tight:
                raise InvalidBound(f"a at (class {v!r}, colour {c!r}) = {claim}, but some object has {tight} moves")
            a_val[(v, c)] = claim
        if (w, c) not in b_val:
            tight = max(in_count[(R, c)] for R in cs.classes[w])
            claim = as_fraction(cs.b.get((w, c), tight))
            if claim <= 0 or claim < tight:
                raise InvalidBound(f"b at (class {w!r}, colour {c!r}) = {claim}, but some object has {tight} preimages")
            b_val[(w, c)] = claim

    edges = [
        Edge(v, w, c, b_val[(w, c)] / a_val[(v, c)], Fraction(cnt) / b_val[(w, c)])
        for (v, w, c), cnt in sorted(sprime.items(), key=str)
    ]
    N = {v: Fraction(len(objs)) for v, objs in cs.classes.items()}
    if lam is None or isinstance(lam, dict):
        table = lam
    else:
        x = as_fraction(lam)
        cin = defaultdict(set)
        for e in edges:
            cin[e.dst].add(e.colour)
        table = {v: {c: x for c in cs_} for v, cs_ in cin.items()}
    return FlowNetwork(N, edges, table)


def switching_setup(k, J, Jstar, colours: Iterable[int] | None = None, priority: bool = True, budget: int | None = None):
    """Counting setup of the coloured switchings on the relaxed family.

    Every multigraph of the relaxed family is its own class.  With
    ``priority`` a multigraph only takes moves of its active colour; without
    it every structurally valid move whose result stays in the family is
    kept.  Returns (setup, Y, Z) where Y and Z list class ids.
    """
    from .exact import g0_sets, iter_multigraphs
    from .switching import SwitchingContext, apply_move, enumerate_moves

    ctx = SwitchingContext.create(k, J, Jstar)
    links, loops = g0_sets(ctx.J, ctx.Jstar)
    graphs = list(iter_multigraphs(ctx.degrees, links, loops, budget=budget))
    wanted = set(colours) if colours is not None else set(range(1, 16))
    relations: dict = defaultdict(list)
    for Q in graphs:
        if priority:
            c = ctx.active_colour(Q)
            todo = [c] if c in wanted else []
        else:
            todo = sorted(wanted)
        for c in todo:
            for m in enumerate_moves(Q, c):
                R = apply_move(Q, m)
                if ctx.in_g0(R):
                    relations[c].append((Q, R))
    classes = {i: [Q] for i, Q in enumerate(graphs)}
    Y = [i for i, Q in enumerate(graphs) if ctx.in_y(Q)]
    Z = [i for i, Q in enumerate(graphs) if ctx.in_z(Q)]
    return CountingSetup(classes, dict(relations)), Y, Z
