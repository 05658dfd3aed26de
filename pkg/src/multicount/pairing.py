"""Configuration (pairing) model.

Points are numbered 0..M-1 internally and 1..M in JSON; cell i holds the
next k_i consecutive points.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator

import numpy as np

from .degrees import Multigraph, as_degrees
from .errors import OddTotalDegree, ParseError
from .exact import ClassSignature, count_class, degree_factorial_product


def total_pairings(M: int) -> int:
    """M! / ((M/2)! 2^(M/2)), the number of perfect matchings on M points."""
    if M < 0 or M % 2:
        raise OddTotalDegree(f"M={M} must be even and nonnegative")
    return factorial(M) // (factorial(M // 2) * 2 ** (M // 2))


def cell_of_points(degrees) -> tuple[int, ...]:
    out: list[int] = []
    for i, d in enumerate(degrees):
        out.extend([i] * d)
    return tuple(out)


@dataclass(frozen=True)
class Pairing:
    degrees: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        degs = tuple(int(d) for d in self.degrees)
        pairs = tuple(tuple(sorted((int(a), int(b)))) for a, b in self.pairs)
        M = sum(degs)
        seen = sorted(p for pr in pairs for p in pr)
        if seen != list(range(M)):
            raise ValueError("pairs must cover every point exactly once")
        object.__setattr__(self, "degrees", degs)
        object.__setattr__(self, "pairs", tuple(sorted(pairs)))

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "pairs": [[a + 1, b + 1] for a, b in self.pairs]}

    @classmethod
    def from_json(cls, data: dict) -> "Pairing":
        try:
            return cls(tuple(data["degrees"]), tuple((a - 1, b - 1) for a, b in data["pairs"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad pairing JSON: {exc}") from exc


def project(P: Pairing) -> Multigraph:
    cell = cell_of_points(P.degrees)
    n = len(P.degrees)
    m = [[0] * n for _ in range(n)]
    for a, b in P.pairs:
        u, v = cell[a], cell[b]
        if u == v:
            m[u][u] += 1
        else:
            m[u][v] += 1
            m[v][u] += 1
    return Multigraph(tuple(map(tuple, m)))


def pairings_of(G: Multigraph) -> int:
    """Number of pairings projecting to G: prod k_i! / (prod a_ij! * prod 2^a_ii a_ii!)."""
    num = 1
    for d in G.degrees():
        num *= factorial(d)
    den = 1
    n = G.n
    for i in range(n):
        a = G.mult[i][i]
        den *= 2**a * factorial(a)
        for j in range(i + 1, n):
            den *= factorial(G.mult[i][j])
    return num // den


def w_weight(k, sig: ClassSignature) -> int:
    """2^(l+d) 6^t |C_{l,d,t}|, which equals prod k_i! times the multigraph count of the class."""
    return degree_factorial_product(k) * count_class(k, sig)


def all_pairings(degrees) -> Iterator[Pairing]:
    """Every perfect matching of the points, each once."""
    degs = tuple(degrees)
    M = sum(degs)
    if M % 2:
        raise OddTotalDegree(f"M={M} is odd")

    def rec(free: list[int]):
        if not free:
            yield []
            return
        a = free[0]
        for idx in range(1, len(free)):
            rest = free[1:idx] + free[idx + 1:]
            for tail in rec(rest):
                yield [(a, free[idx])] + tail

    for pairs in rec(list(range(M))):
        yield Pairing(degs, tuple(pairs))


def sample_pairing(k, seed: int | None = None, rng: np.random.Generator | None = None) -> Pairing:
    """Uniform random pairing: match a random unmatched point to a uniform other one."""
    k = as_degrees(k)
    if k.M % 2:
        raise OddTotalDegree(f"M={k.M} is odd")
    if rng is None:
        rng = np.random.default_rng(seed)
    free = list(range(k.M))
    pairs = []
    while free:
        i = int(rng.integers(len(free)))
        a = free[i]
        free[i] = free[-1]
        free.pop()
        j = int(rng.integers(len(free)))
        b = free[j]
        free[j] = free[-1]
        free.pop()
        pairs.append((a, b))
    return Pairing(k.degrees, tuple(pairs))
