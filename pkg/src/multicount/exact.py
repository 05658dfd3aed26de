"""Exact counting and enumeration of multigraphs with prescribed degrees.

Two independent counters are provided:

* ``"backtrack"`` fills upper-triangle cells row by row, prunes on residual
  degree and remaining row capacity, and memoises on the residual vector at
  row boundaries.
* ``"dp"`` processes one vertex per step over the *sorted* vector of
  residual degrees (vertices not yet processed are interchangeable), and
  distributes a row over groups of equal residuals with multinomial weights.

Counts are Python integers throughout.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import factorial
from typing import Iterator

from .degrees import DegreeSequence, Multigraph, MultiplicitySet, as_degrees, as_mset
from .errors import BudgetExceeded, OddTotalDegree

LOOPS_G0_EXTRA = MultiplicitySet((), 2)
LINKS_G0_EXTRA = MultiplicitySet((), 4)
REGIONS = ("G0", "G0_minus_Y", "Z")


@dataclass(frozen=True, order=True)
class ClassSignature:
    """Numbers of simple loops, double links and triple links."""

    ell: int
    d: int
    t: int

    def __post_init__(self) -> None:
        if min(self.ell, self.d, self.t) < 0:
            raise ValueError("class signature entries must be nonnegative")


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} nodes")


def _check_even(k: DegreeSequence) -> None:
    if k.M % 2:
        raise OddTotalDegree(f"total degree M={k.M} is odd")


def _cap(S: MultiplicitySet, r: int) -> int:
    m = S.max_value
    return r if m is None else min(r, m)


# ---------------------------------------------------------------------------
# strategy 1: cell backtracking
# ---------------------------------------------------------------------------

def _backtrack_count(degs: tuple[int, ...], J: MultiplicitySet, Jstar: MultiplicitySet, budget: _Budget) -> int:
    n = len(degs)
    res = list(degs)
    memo: dict[tuple, int] = {}
    link_max = J.max_value

    def row(i: int) -> int:
        if i == n:
            return 1
        key = (i, tuple(res[i:]))
        hit = memo.get(key)
        if hit is not None:
            return hit
        r = res[i]
        total = 0
        for a in Jstar.values(r // 2):
            total += cell(i, i + 1, r - 2 * a)
        memo[key] = total
        return total

    def cell(i: int, j: int, r: int) -> int:
        budget.tick()
        if j == n:
            return row(i + 1) if r == 0 else 0
        room = sum(res[l] if link_max is None else min(res[l], link_max) for l in range(j, n))
        if room < r:
            return 0
        total = 0
        for a in J.values(min(r, res[j])):
            res[j] -= a
            total += cell(i, j + 1, r - a)
            res[j] += a
        return total

    return row(0)


# ---------------------------------------------------------------------------
# strategy 2: row DP over sorted residual vectors, with optional tallies
# ---------------------------------------------------------------------------

Poly = dict  # tally tuple -> count


def _compositions(count: int, values: list[int], need: int):
    """Ways to give each of ``count`` interchangeable vertices a value.

    Yields (weight, {value: how_many}, used) with used <= need.
    """
    if not values:
        if count == 0:
            yield 1, {}, 0
        return
    v, rest = values[0], values[1:]
    if not rest:
        used = v * count
        if used <= need:
            yield 1, {v: count}, used
        return
    top = count if v == 0 else min(count, need // v)
    for c in range(top + 1):
        for w, parts, used in _compositions(count - c, rest, need - v * c):
            out = dict(parts)
            if c:
                out[v] = c
            yield w * _binom(count, c), out, used + v * c


def _binom(n: int, k: int) -> int:
    return factorial(n) // (factorial(k) * factorial(n - k))


def _row_dp(
    degs: tuple[int, ...],
    loops: MultiplicitySet,
    links: MultiplicitySet,
    budget: _Budget,
    tally: bool = False,
) -> Poly:
    """Count (or tally by simple loops / double / triple links) all fillings."""
    strip = 0 in links and 0 in loops
    link_max = links.max_value
    memo: dict[tuple, Poly] = {}
    unit: Poly = {(0, 0, 0) if tally else (): 1}

    def canon(vals) -> tuple[int, ...]:
        vals = sorted(vals, reverse=True)
        if strip:
            while vals and vals[-1] == 0:
                vals.pop()
        return tuple(vals)

    def shift(poly: Poly, dl: int, d2: int, d3: int, w: int) -> Poly:
        if not tally:
            return {(): poly[()] * w} if poly else {}
        return {(a + dl, b + d2, c + d3): v * w for (a, b, c), v in poly.items()}

    def groups_of(state: tuple[int, ...]) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for v in state:
            if out and out[-1][0] == v:
                out[-1] = (v, out[-1][1] + 1)
            else:
                out.append((v, 1))
        return out

    def spread(groups, gi: int, need: int):
        """Distribute ``need`` over groups[gi:]; yields (weight, residuals, e2, e3)."""
        if gi == len(groups):
            if need == 0:
                yield 1, [], 0, 0
            return
        room = sum(c * (v if link_max is None else min(v, link_max)) for v, c in groups[gi:])
        if room < need:
            return
        value, count = groups[gi]
        allowed = links.values(min(value, need))
        for w, parts, used in _compositions(count, allowed, need):
            resid = []
            for a, c in parts.items():
                resid.extend([value - a] * c)
            for w2, tail, e2, e3 in spread(groups, gi + 1, need - used):
                yield w * w2, resid + tail, e2 + parts.get(2, 0), e3 + parts.get(3, 0)

    def solve(state: tuple[int, ...]) -> Poly:
        if not state:
            return unit
        hit = memo.get(state)
        if hit is not None:
            return hit
        budget.tick()
        r, rest = state[0], state[1:]
        acc: Poly = defaultdict(int)
        groups = groups_of(rest)
        for a in loops.values(r // 2):
            for w, resid, e2, e3 in spread(groups, 0, r - 2 * a):
                sub = solve(canon(resid))
                for key, v in shift(sub, int(a == 1), e2, e3, w).items():
                    acc[key] += v
        out = {k: v for k, v in acc.items() if v}
        memo[state] = out
        return out

    return solve(canon(degs))


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def count_exact(k, J, Jstar, method: str = "dp", budget: int | None = None) -> int:
    """Number of symmetric matrices with diagonal in J*, off-diagonal in J and row sums k."""
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    _check_even(k)
    b = _Budget(budget)
    if method == "dp":
        return _row_dp(k.degrees, Jstar, J, b).get((), 0)
    if method == "backtrack":
        return _backtrack_count(k.degrees, J, Jstar, b)
    raise ValueError(f"unknown method {method!r}")


def iter_multigraphs(k, J, Jstar, budget: int | None = None) -> Iterator[Multigraph]:
    """Every member once, in lexicographic order of the row-major upper triangle."""
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    _check_even(k)
    n = k.n
    res = list(k.degrees)
    m = [[0] * n for _ in range(n)]
    link_max = J.max_value
    b = _Budget(budget)

    def row(i: int):
        if i == n:
            yield Multigraph(tuple(map(tuple, m)))
            return
        r = res[i]
        for a in Jstar.values(r // 2):
            m[i][i] = a
            yield from cell(i, i + 1, r - 2 * a)
        m[i][i] = 0

    def cell(i: int, j: int, r: int):
        b.tick()
        if j == n:
            if r == 0:
                yield from row(i + 1)
            return
        room = sum(res[l] if link_max is None else min(res[l], link_max) for l in range(j, n))
        if room < r:
            return
        for a in J.values(min(r, res[j])):
            res[j] -= a
            m[i][j] = m[j][i] = a
            yield from cell(i, j + 1, r - a)
            res[j] += a
        m[i][j] = m[j][i] = 0

    yield from row(0)


@dataclass
class Enumeration:
    graphs: list[Multigraph]
    truncated: bool


def enumerate_multigraphs(k, J, Jstar, cap: int | None = None, budget: int | None = None) -> Enumeration:
    out: list[Multigraph] = []
    for g in iter_multigraphs(k, J, Jstar, budget=budget):
        if cap is not None and len(out) >= cap:
            return Enumeration(out, True)
        out.append(g)
    return Enumeration(out, False)


def class_census(k, budget: int | None = None) -> dict[ClassSignature, int]:
    """Multigraph counts per (simple loops, double links, triple links).

    Only multigraphs with loops of multiplicity <= 1 and links of
    multiplicity <= 3 are counted.
    """
    k = as_degrees(k)
    _check_even(k)
    poly = _row_dp(k.degrees, MultiplicitySet.of(0, 1), MultiplicitySet.of(0, 1, 2, 3), _Budget(budget), tally=True)
    return {ClassSignature(*key): v for key, v in sorted(poly.items())}


def count_class(k, sig: ClassSignature, budget: int | None = None) -> int:
    return class_census(k, budget).get(sig, 0)


def g0_sets(J, Jstar) -> tuple[MultiplicitySet, MultiplicitySet]:
    """(link set, loop set) of the relaxed family: J u {4,5,...} and J* u {2,3,...}."""
    return as_mset(J).union(LINKS_G0_EXTRA), as_mset(Jstar).union(LOOPS_G0_EXTRA)


def count_region(k, J, Jstar, region: str, budget: int | None = None) -> int:
    """Cardinality of the relaxed family ``G0``, of ``G0 - Y`` or of ``Z``."""
    from .switching import thresholds

    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    _check_even(k)
    if region not in REGIONS:
        raise ValueError(f"region must be one of {REGIONS}")
    links, loops = g0_sets(J, Jstar)
    if region == "G0":
        return count_exact(k, links, loops, budget=budget)
    th = thresholds(k)
    caps = (th.N1, th.N2, th.N3) if region == "G0_minus_Y" else (th.half_N1, th.half_N2, th.half_N3)
    low_loops = MultiplicitySet(tuple(v for v in (0, 1) if v in loops))
    low_links = MultiplicitySet(tuple(v for v in (0, 1, 2, 3) if v in links))
    poly = _row_dp(k.degrees, low_loops, low_links, _Budget(budget), tally=True)
    return sum(v for key, v in poly.items() if all(x <= c for x, c in zip(key, caps)))


def degree_factorial_product(k) -> int:
    """prod_i k_i!, the number of point labellings per cell."""
    out = 1
    for d in as_degrees(k):
        out *= factorial(d)
    return out
