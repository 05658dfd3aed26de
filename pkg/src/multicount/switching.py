"""The fifteen coloured switchings on degree-constrained multigraphs.

A move is a colour plus an ordered tuple of distinct vertices.  Every
colour rewrites a fixed set of cells by fixed amounts, so each move carries
a delta map; applying a move adds it and a preimage search subtracts it.
The validity predicate :func:`is_valid_move` is the single source of truth
for which tuples are moves; the generators below only propose candidates.

Counting conventions (ordered tuples; this is what ``enumerate_moves``
counts and what the reverse bounds ``b_c`` are compared against):

======  ==========================  ===========================================
colour  tuple                       forward count in the nominal analysis
======  ==========================  ===========================================
1       (v1, v2)                    [L]_2, ordered pairs of heavy loops
2       (v1, v2)                    [l_3]_2
3       (v1, v2, v3)                ordered triples of simple loops
4, 5    (v1, w1, v2, w2)            ordered pair of classes x 2 orientations each
6-8     (v1, w1, ..., vj, wj)       j ordered classes x 2 orientations each
9       (v0, v1, w1, v2, w2)        loop x ordered oriented simple links
10      (v0, v1, w1, ..., v3, w3)   idem with three links
11      (v0, w0, v1, w1, ..., w3)   oriented heavy link x three oriented links
12      (v0, w0, v1, w1, ..., w5)   idem with five links
13      (v0, v1, v2)                loop x one oriented simple link
14      (v0, w0, v1, w1, v2, w2)    oriented double link x two oriented links
15      (v0, w0, v1, w1, ..., w3)   oriented triple link x three oriented links
======  ==========================  ===========================================
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .degrees import DegreeSequence, Multigraph, MultiplicitySet, as_degrees, as_mset
from .errors import InvalidMove, NotInG0, WrongColour, ZeroDenominator
from .exact import g0_sets

COLOURS = tuple(range(1, 16))
SEQ_LENGTH = {1: 2, 2: 2, 3: 3, 4: 4, 5: 4, 6: 4, 7: 6, 8: 8, 9: 5, 10: 7, 11: 8, 12: 12, 13: 3, 14: 6, 15: 8}
NUM_COLOURS = len(COLOURS)


def ceil_sqrt(x: int) -> int:
    return 0 if x <= 0 else math.isqrt(x - 1) + 1


def ceil_root(x: int, r: int) -> int:
    """Smallest integer c >= 0 with c**r >= x."""
    if x <= 0:
        return 0
    c = max(int(round(x ** (1.0 / r))), 0)
    while c**r < x:
        c += 1
    while c > 0 and (c - 1) ** r >= x:
        c -= 1
    return c


def ceil_log(M: int) -> int:
    """Ceiling of the natural logarithm of M (M >= 1)."""
    if M <= 1:
        return 0
    c = math.ceil(math.log(M))
    # guard float rounding at the boundary; e**c is never an integer for c >= 1
    while math.exp(c - 1) >= M:
        c -= 1
    while math.exp(c) < M:
        c += 1
    return c


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class Thresholds:
    M: int
    kmax: int
    N1: int
    N2: int
    N3: int
    sqrtM: int
    M56: int
    cap4: int
    three_sqrtM: int
    eplus_level: int
    eminus_level: int
    sqrt_kmax: int

    @property
    def half_N1(self) -> int:
        return _ceil_div(self.N1, 2)

    @property
    def half_N2(self) -> int:
        return _ceil_div(self.N2, 2)

    @property
    def half_N3(self) -> int:
        return _ceil_div(self.N3, 2)

    def to_json(self) -> dict:
        return {
            "N1": self.N1, "N2": self.N2, "N3": self.N3, "sqrtM": self.sqrtM, "M56": self.M56,
            "cap4": self.cap4, "log": "natural",
        }


def thresholds(k) -> Thresholds:
    k = as_degrees(k)
    M, M2, M3, kmax = k.M, k.M2, k.M3, k.kmax
    if M < 1:
        raise ValueError("thresholds need M >= 1")
    lg = ceil_log(M)
    sqrt_kmax = ceil_sqrt(kmax)
    return Thresholds(
        M=M,
        kmax=kmax,
        N1=max(lg, _ceil_div(480 * M2, M)),
        N2=max(lg, _ceil_div(240 * M2 * M2, M * M)),
        N3=max(lg, _ceil_div(240 * M3 * M3, M**3)),
        sqrtM=ceil_sqrt(M),
        M56=ceil_root(M**5, 6),
        cap4=max(4, sqrt_kmax),
        three_sqrtM=ceil_sqrt(9 * M),
        eplus_level=ceil_sqrt(16 * kmax * M),
        eminus_level=ceil_sqrt(9 * kmax * kmax * M),
        sqrt_kmax=sqrt_kmax,
    )


@dataclass(frozen=True)
class MultStats:
    ellD: dict[int, int]
    eD: dict[int, int]
    L: int
    Eplus: int
    Eminus: int
    E: int
    e1_fraction: Fraction
    kmax: int = 0

    def loops(self, D: int) -> int:
        return self.ellD.get(D, 0)

    def links(self, D: int) -> int:
        return self.eD.get(D, 0)

    def to_json(self) -> dict:
        return {
            "ellD": {str(d): c for d, c in sorted(self.ellD.items())},
            "eD": {str(d): c for d, c in sorted(self.eD.items())},
            "L": self.L, "Eplus": self.Eplus, "Eminus": self.Eminus, "E": self.E,
            "e1_fraction": str(self.e1_fraction),
        }


def stats(Q: Multigraph) -> MultStats:
    n = Q.n
    ell: Counter = Counter()
    e: Counter = Counter()
    for i in range(n):
        row = Q.mult[i]
        if row[i]:
            ell[row[i]] += 1
        for j in range(i + 1, n):
            if row[j]:
                e[row[j]] += 1
    kmax = max(Q.degrees(), default=0)
    cap4 = max(4, ceil_sqrt(kmax))
    half_M = Q.edge_count()
    return MultStats(
        ellD=dict(ell),
        eD=dict(e),
        L=ell[2] + sum(c for D, c in ell.items() if D >= 4),
        Eplus=sum(c for D, c in e.items() if cap4 < D <= kmax),
        Eminus=sum(c for D, c in e.items() if 5 <= D <= ceil_sqrt(kmax)),
        E=e[4] + sum(c for D, c in e.items() if D >= 7),
        e1_fraction=Fraction(e[1], half_M) if half_M else Fraction(0),
        kmax=kmax,
    )


@dataclass(frozen=True)
class SwitchingMove:
    colour: int
    seq: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "seq", tuple(int(v) for v in self.seq))
        if self.colour not in SEQ_LENGTH:
            raise InvalidMove(f"unknown colour {self.colour}")
        if len(self.seq) != SEQ_LENGTH[self.colour]:
            raise InvalidMove(f"colour {self.colour} needs {SEQ_LENGTH[self.colour]} vertices, got {len(self.seq)}")
        if len(set(self.seq)) != len(self.seq):
            raise InvalidMove(f"vertices must be distinct: {self.seq}")

    def to_json(self) -> dict:
        return {"colour": self.colour, "seq": [v + 1 for v in self.seq]}

    @classmethod
    def from_json(cls, data: dict) -> "SwitchingMove":
        return cls(int(data["colour"]), tuple(int(v) - 1 for v in data["seq"]))


# ---------------------------------------------------------------------------
# instance context: relaxed family, regions and the priority rule
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SwitchingContext:
    degrees: DegreeSequence
    J: MultiplicitySet
    Jstar: MultiplicitySet
    th: Thresholds = field(repr=False)
    links: MultiplicitySet = field(repr=False)
    loops: MultiplicitySet = field(repr=False)

    @classmethod
    def create(cls, k, J, Jstar) -> "SwitchingContext":
        k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
        links, loops = g0_sets(J, Jstar)
        return cls(k, J, Jstar, thresholds(k), links, loops)

    def in_g0(self, Q: Multigraph) -> bool:
        if Q.degrees() != self.degrees.degrees:
            return False
        n = Q.n
        for i in range(n):
            row = Q.mult[i]
            if row[i] not in self.loops:
                return False
            for j in range(i + 1, n):
                if row[j] not in self.links:
                    return False
        return True

    def _tame(self, s: MultStats, caps: tuple[int, int, int]) -> bool:
        if any(D >= 2 for D in s.ellD) or any(D >= 4 for D in s.eD):
            return False
        return s.loops(1) <= caps[0] and s.links(2) <= caps[1] and s.links(3) <= caps[2]

    def in_y(self, Q: Multigraph) -> bool:
        return not self._tame(stats(Q), (self.th.N1, self.th.N2, self.th.N3))

    def in_z(self, Q: Multigraph) -> bool:
        return self._tame(stats(Q), (self.th.half_N1, self.th.half_N2, self.th.half_N3))

    def triggers(self, s: MultStats) -> list[int]:
        """Colours whose numeric trigger holds, ascending."""
        th = self.th
        fired = [
            (1, s.L > th.three_sqrtM),
            (2, s.loops(3) > th.three_sqrtM),
            (3, s.loops(1) > th.sqrtM),
            (4, s.Eplus > th.eplus_level),
            (5, s.Eminus > th.eminus_level),
            (6, s.links(2) > th.M56),
            (7, s.links(3) > th.M56),
            (8, s.links(4) > th.M56),
            (9, s.L >= 1),
            (10, s.loops(3) >= 1),
            (11, s.E >= 1),
            (12, s.links(5) + s.links(6) >= 1),
            (13, s.loops(1) > th.half_N1),
            (14, s.links(2) > th.half_N2),
            (15, s.links(3) > th.half_N3),
        ]
        return [c for c, hit in fired if hit]

    def active_colour(self, Q: Multigraph) -> int | None:
        """Least colour whose trigger holds; None exactly on Z."""
        if not self.in_g0(Q):
            raise NotInG0("multigraph is not in the relaxed family for this instance")
        return self.active_colour_unchecked(Q)

    def active_colour_unchecked(self, Q: Multigraph) -> int | None:
        """The priority rule for a Q already known to lie in the relaxed family."""
        s = stats(Q)
        if self._tame(s, (self.th.half_N1, self.th.half_N2, self.th.half_N3)):
            return None
        fired = self.triggers(s)
        return fired[0] if fired else None


def active_colour(Q: Multigraph, ctx: SwitchingContext) -> int | None:
    return ctx.active_colour(Q)


# ---------------------------------------------------------------------------
# validity and deltas
# ---------------------------------------------------------------------------

def _heavy_loop(D: int) -> bool:
    return D == 2 or D >= 4


def _pairs(seq: tuple[int, ...], start: int) -> list[tuple[int, int]]:
    return [(seq[i], seq[i + 1]) for i in range(start, len(seq), 2)]


def is_valid_move(Q: Multigraph, m: SwitchingMove) -> bool:
    """Whether ``m`` satisfies its colour's multiplicity and non-adjacency conditions in Q."""
    c, s = m.colour, m.seq
    if any(v < 0 or v >= Q.n for v in s):
        return False
    A = Q.mult
    if c == 1:
        return _heavy_loop(A[s[0]][s[0]]) and _heavy_loop(A[s[1]][s[1]])
    if c == 2:
        return A[s[0]][s[0]] == 3 and A[s[1]][s[1]] == 3
    if c == 3:
        a, b, d = s
        return A[a][a] == A[b][b] == A[d][d] == 1 and A[a][b] == A[a][d] == A[b][d] == 0
    if c in (4, 5):
        v1, w1, v2, w2 = s
        kmax = max(Q.degrees())
        if c == 4:
            lo, hi = max(4, ceil_sqrt(kmax)) + 1, None
        else:
            lo, hi = 5, ceil_sqrt(kmax)
        for D in (A[v1][w1], A[v2][w2]):
            if D < lo or (hi is not None and D > hi):
                return False
        return A[v1][v2] == 0 and A[w1][w2] == 0
    if c in (6, 7, 8):
        j = c - 4
        vs, ws = s[0::2], s[1::2]
        for r in range(j):
            if A[vs[r]][ws[r]] != j:
                return False
            for t in range(j):
                if t != r and A[vs[r]][ws[t]] != 0:
                    return False
        return True
    if c in (9, 10):
        v0 = s[0]
        if c == 9 and not _heavy_loop(A[v0][v0]):
            return False
        if c == 10 and A[v0][v0] != 3:
            return False
        return all(A[a][b] == 1 and A[v0][a] == 0 and A[v0][b] == 0 for a, b in _pairs(s, 1))
    if c in (11, 12, 14, 15):
        v0, w0 = s[0], s[1]
        D = A[v0][w0]
        if c == 11 and not (D == 4 or D >= 7):
            return False
        if c == 12 and D not in (5, 6):
            return False
        if c == 14 and D != 2:
            return False
        if c == 15 and D != 3:
            return False
        return all(A[a][b] == 1 and A[v0][a] == 0 and A[w0][b] == 0 for a, b in _pairs(s, 2))
    if c == 13:
        v0, v1, v2 = s
        return A[v0][v0] == 1 and A[v1][v2] == 1 and A[v0][v1] == 0 and A[v0][v2] == 0
    return False


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def move_deltas(m: SwitchingMove, Q: Multigraph | None = None) -> dict[tuple[int, int], int]:
    """Cell changes made by ``m``; keys are (i, j) with i <= j."""
    c, s = m.colour, m.seq
    d: dict[tuple[int, int], int] = Counter()

    def add(a: int, b: int, x: int) -> None:
        d[_key(a, b)] += x

    if c in (1, 2):
        drop = 2 if c == 1 else 3
        add(s[0], s[0], -drop)
        add(s[1], s[1], -drop)
        add(s[0], s[1], 2 * drop)
    elif c == 3:
        for v in s:
            add(v, v, -1)
        add(s[0], s[1], 1)
        add(s[0], s[2], 1)
        add(s[1], s[2], 1)
    elif c in (4, 5):
        v1, w1, v2, w2 = s
        add(v1, w1, -1)
        add(v2, w2, -1)
        add(v1, v2, 1)
        add(w1, w2, 1)
    elif c in (6, 7, 8):
        j = c - 4
        vs, ws = s[0::2], s[1::2]
        for r in range(j):
            add(vs[r], ws[r], -j)
            for t in range(j):
                add(vs[r], ws[t], 1)
    elif c in (9, 10):
        v0 = s[0]
        add(v0, v0, -2 if c == 9 else -3)
        for a, b in _pairs(s, 1):
            add(a, b, -1)
            add(v0, a, 1)
            add(v0, b, 1)
    elif c in (11, 12, 14, 15):
        v0, w0 = s[0], s[1]
        add(v0, w0, -{11: 3, 12: 5, 14: 2, 15: 3}[c])
        for a, b in _pairs(s, 2):
            add(a, b, -1)
            add(v0, a, 1)
            add(w0, b, 1)
    elif c == 13:
        v0, v1, v2 = s
        add(v0, v0, -1)
        add(v1, v2, -1)
        add(v0, v1, 1)
        add(v0, v2, 1)
    return {k: v for k, v in d.items() if v}


def apply_move(Q: Multigraph, m: SwitchingMove) -> Multigraph:
    if not is_valid_move(Q, m):
        raise InvalidMove(f"{m} is not a valid move in this multigraph")
    return Q.with_deltas(move_deltas(m))


def apply_chain(Q: Multigraph, moves: Iterable[SwitchingMove]) -> tuple[Multigraph, list[dict]]:
    """Apply moves in order; the trace lists each move with its 1-based cell deltas."""
    trace = []
    for m in moves:
        deltas = move_deltas(m)
        Q = apply_move(Q, m)
        trace.append({
            "move": m.to_json(),
            "deltas": [[i + 1, j + 1, d] for (i, j), d in sorted(deltas.items())],
        })
    return Q, trace


# ---------------------------------------------------------------------------
# candidate generators
# ---------------------------------------------------------------------------

def _oriented(Q: Multigraph, pred) -> list[tuple[int, int]]:
    n = Q.n
    return [(a, b) for a in range(n) for b in range(n) if a != b and pred(Q.mult[a][b])]


def _edge_seqs(edges, r: int, used: frozenset, ok) -> Iterator[tuple]:
    if r == 0:
        yield ()
        return
    for a, b in edges:
        if a in used or b in used or not ok(a, b):
            continue
        for rest in _edge_seqs(edges, r - 1, used | {a, b}, ok):
            yield (a, b) + rest


def _forward_candidates(Q: Multigraph, c: int) -> Iterator[tuple[int, ...]]:
    n, A = Q.n, Q.mult
    if c in (1, 2, 3):
        want = {1: _heavy_loop, 2: lambda D: D == 3, 3: lambda D: D == 1}[c]
        verts = [v for v in range(n) if want(A[v][v])]
        yield from _ordered(verts, SEQ_LENGTH[c], frozenset())
        return
    simple = _oriented(Q, lambda D: D == 1)
    if c in (4, 5, 6, 7, 8):
        if c in (4, 5):
            kmax = max(Q.degrees())
            lo, hi = (max(4, ceil_sqrt(kmax)) + 1, None) if c == 4 else (5, ceil_sqrt(kmax))
            edges = _oriented(Q, lambda D: D >= lo and (hi is None or D <= hi))
            r = 2
        else:
            j = c - 4
            edges = _oriented(Q, lambda D: D == j)
            r = j
        yield from _edge_seqs(edges, r, frozenset(), lambda a, b: True)
        return
    if c in (9, 10, 13):
        want = {9: _heavy_loop, 10: lambda D: D == 3, 13: lambda D: D == 1}[c]
        r = {9: 2, 10: 3, 13: 1}[c]
        for v0 in range(n):
            if not want(A[v0][v0]):
                continue
            row = A[v0]
            for tail in _edge_seqs(simple, r, frozenset({v0}), lambda a, b: row[a] == 0 and row[b] == 0):
                yield (v0,) + tail
        return
    want_link = {11: lambda D: D == 4 or D >= 7, 12: lambda D: D in (5, 6), 14: lambda D: D == 2, 15: lambda D: D == 3}[c]
    r = {11: 3, 12: 5, 14: 2, 15: 3}[c]
    for v0, w0 in _oriented(Q, want_link):
        rv, rw = A[v0], A[w0]
        for tail in _edge_seqs(simple, r, frozenset({v0, w0}), lambda a, b: rv[a] == 0 and rw[b] == 0):
            yield (v0, w0) + tail


def _ordered(pool: list[int], r: int, used: frozenset) -> Iterator[tuple[int, ...]]:
    if r == 0:
        yield ()
        return
    for v in pool:
        if v in used:
            continue
        for rest in _ordered(pool, r - 1, used | {v}):
            yield (v,) + rest


def _reverse_candidates(R: Multigraph, c: int) -> Iterator[tuple[int, ...]]:
    """Tuples that could have produced R; a superset of the true preimage moves."""
    n, A = R.n, R.mult
    nbr = [[b for b in range(n) if b != a and A[a][b] == 1] for a in range(n)]
    if c in (1, 2):
        need = 4 if c == 1 else 6
        yield from _oriented(R, lambda D: D >= need)
        return
    if c == 3:
        for a in range(n):
            for b in nbr[a]:
                for d in nbr[a]:
                    if d != b and A[b][d] == 1:
                        yield (a, b, d)
        return
    if c in (4, 5):
        for v1 in range(n):
            for v2 in nbr[v1]:
                for w1 in range(n):
                    if w1 in (v1, v2) or A[v1][w1] == 0:
                        continue
                    for w2 in nbr[w1]:
                        if w2 not in (v1, v2) and A[v2][w2] >= 1:
                            yield (v1, w1, v2, w2)
        return
    if c in (6, 7, 8):
        j = c - 4

        def grow(vs, ws):
            if len(ws) == j:
                yield tuple(x for pair in zip(vs, ws) for x in pair)
                return
            used = set(vs) | set(ws)
            if len(vs) == len(ws):
                pool = range(n) if not ws else [v for v in nbr[ws[0]] if all(A[v][w] == 1 for w in ws)]
                for v in pool:
                    if v not in used:
                        yield from grow(vs + [v], ws)
            else:
                for w in nbr[vs[0]]:
                    if w not in used and all(A[v][w] == 1 for v in vs):
                        yield from grow(vs, ws + [w])

        yield from grow([], [])
        return
    # each tail pair (a, b) was a simple link that the move removed, so R[a][b] = 0
    if c in (9, 10, 13):
        r = {9: 2, 10: 3, 13: 1}[c]
        for v0 in range(n):
            pairs = [(a, b) for a in nbr[v0] for b in nbr[v0] if a != b and A[a][b] == 0]
            for tail in _edge_seqs(pairs, r, frozenset({v0}), lambda a, b: True):
                yield (v0,) + tail
        return
    r = {11: 3, 12: 5, 14: 2, 15: 3}[c]
    for v0 in range(n):
        for w0 in range(n):
            if w0 == v0 or (c == 11 and A[v0][w0] == 0):
                continue
            pairs = [(a, b) for a in nbr[v0] for b in nbr[w0] if a != b and A[a][b] == 0]
            for tail in _edge_seqs(pairs, r, frozenset({v0, w0}), lambda a, b: True):
                yield (v0, w0) + tail


# ---------------------------------------------------------------------------
# enumeration and reversal
# ---------------------------------------------------------------------------

def enumerate_moves(Q: Multigraph, colour: int, ctx: SwitchingContext | None = None) -> list[SwitchingMove]:
    """All valid moves of ``colour`` in Q, each exactly once.

    With a context the priority rule is enforced: ``colour`` must be the
    active colour of Q, otherwise :class:`WrongColour` is raised.
    """
    if colour not in SEQ_LENGTH:
        raise WrongColour(f"unknown colour {colour}")
    if ctx is not None:
        active = ctx.active_colour(Q)
        if active != colour:
            raise WrongColour(f"active colour is {active}, not {colour}")
    out = []
    seen = set()
    for seq in _forward_candidates(Q, colour):
        if seq in seen:
            continue
        seen.add(seq)
        m = SwitchingMove(colour, seq)
        if is_valid_move(Q, m):
            out.append(m)
    return out


def preimages(R: Multigraph, colour: int, ctx: SwitchingContext | None = None, priority: bool = True):
    """Yield (Q, move) with apply_move(Q, move) == R.

    With a context, Q must lie in the relaxed family, and when ``priority``
    is set ``colour`` must be the active colour of Q.
    """
    seen = set()
    for seq in _reverse_candidates(R, colour):
        if seq in seen:
            continue
        seen.add(seq)
        m = SwitchingMove(colour, seq)
        deltas = move_deltas(m)
        if any(R.mult[i][j] - d < 0 for (i, j), d in deltas.items()):
            continue
        Q = R.with_deltas({key: -d for key, d in deltas.items()})
        if not is_valid_move(Q, m):
            continue
        if ctx is not None:
            if not ctx.in_g0(Q):
                continue
            if priority and ctx.active_colour_unchecked(Q) != colour:
                continue
        yield Q, m


def reverse_count(R: Multigraph, colour: int, ctx: SwitchingContext | None = None, priority: bool = True) -> int:
    return sum(1 for _ in preimages(R, colour, ctx, priority))


# ---------------------------------------------------------------------------
# nominal a_c, b_c and alpha
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NominalBounds:
    colour: int
    a: Fraction | float
    b: Fraction | float
    alpha: Fraction | float
    hat_alpha: Fraction | float

    def to_json(self) -> dict:
        return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.__dict__.items()}


def _rational_power(M: int, num: int, den: int) -> Fraction | float:
    """M**(num/den), exact when M is a perfect den-th power."""
    root = ceil_root(M, den)
    if root**den == M:
        return Fraction(root**num)
    return M ** (num / den)


def reverse_bound(colour: int, k) -> Fraction:
    """Unconditional upper bound b_c on the number of ways a move of ``colour`` produces a given R."""
    k = as_degrees(k)
    M, kmax = k.M, k.kmax
    cap4 = max(4, ceil_sqrt(kmax))
    table = {
        1: Fraction(M, 4),
        2: Fraction(M, 6),
        3: Fraction(kmax * M),
        # the always-valid form; the simplification to 2*kmax*M needs kmax >= 16
        4: Fraction(2 * kmax * kmax * M, cap4 * cap4),
        5: Fraction(kmax * kmax * M),
        6: Fraction(kmax**2 * M),
        7: Fraction(kmax**4 * M),
        8: Fraction(kmax**6 * M),
        9: Fraction(k.moment(4)),
        10: Fraction(k.moment(6)),
        11: Fraction(kmax**3 * k.moment(4)),
        12: Fraction(k.moment(5) ** 2),
        13: Fraction(k.M2),
        14: Fraction(k.M2**2),
        15: Fraction(k.M3**2),
    }
    return table[colour]


def forward_bound(colour: int, k, s: MultStats | None = None):
    """Nominal lower bound a_c on the number of moves out of Q (asymptotic, not certified)."""
    k = as_degrees(k)
    M, kmax = k.M, k.kmax
    if colour in (1, 2):
        return Fraction(9 * M)
    if colour == 3:
        return _rational_power(M, 3, 2) / 2
    if colour == 4:
        return Fraction(60 * kmax * M)
    if colour == 5:
        return Fraction(30 * kmax * kmax * M)
    if colour in (6, 7, 8):
        j = colour - 4
        return _rational_power(M, 5 * j, 6) / 2
    if s is None:
        raise ZeroDenominator(f"colour {colour} needs multiplicity statistics")
    stat = {
        9: Fraction(s.L, 2) * M**2,
        10: Fraction(s.loops(3), 2) * M**3,
        11: Fraction(s.E * M**3),
        12: Fraction((s.links(5) + s.links(6)) * M**5),
        13: Fraction(s.loops(1), 2) * M,
        14: Fraction(s.links(2) * M**2),
        15: Fraction(s.links(3) * M**3),
    }
    return stat[colour]


def nominal_bounds(colour: int, k, s: MultStats | None = None) -> NominalBounds:
    if colour not in SEQ_LENGTH:
        raise WrongColour(f"unknown colour {colour}")
    a = forward_bound(colour, k, s)
    b = reverse_bound(colour, k)
    if a == 0:
        raise ZeroDenominator(f"a_{colour} vanishes for these statistics")
    alpha = b / a
    return NominalBounds(colour, a, b, alpha, alpha * NUM_COLOURS)
