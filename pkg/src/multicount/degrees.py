"""Degree sequences, multiplicity sets and multigraphs.

Everything here is exact: moments are integers, averages and central
moments are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import operator
from typing import Iterable, Iterator

from .errors import (
    InfeasibleShift,
    MissingSupport,
    OddTotalDegree,
    ParseError,
    UnsupportedSupport,
)

MAX_MOMENT = 6


def falling(a: int, r: int) -> int:
    """Falling factorial a(a-1)...(a-r+1); zero when r > a >= 0."""
    out = 1
    for i in range(r):
        out *= a - i
    return out


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]
    n: int = field(init=False)
    M: int = field(init=False)
    moments: tuple[int, ...] = field(init=False, repr=False)
    kmax: int = field(init=False)
    kbar: Fraction = field(init=False)
    mu2: Fraction = field(init=False)
    mu3: Fraction = field(init=False)

    def __post_init__(self) -> None:
        degs = tuple(int(k) for k in self.degrees)
        if any(k < 0 for k in degs):
            raise ValueError(f"degrees must be nonnegative: {degs}")
        n = len(degs)
        M = sum(degs)
        kbar = Fraction(M, n) if n else Fraction(0)
        if M:
            mu2 = sum((k - kbar) ** 2 for k in degs) / M
            mu3 = sum((k - kbar) ** 3 for k in degs) / M
        else:
            mu2 = mu3 = Fraction(0)
        set_ = object.__setattr__
        set_(self, "degrees", degs)
        set_(self, "n", n)
        set_(self, "M", M)
        set_(self, "moments", tuple(sum(falling(k, r) for k in degs) for r in range(1, MAX_MOMENT + 1)))
        set_(self, "kmax", max(degs, default=0))
        set_(self, "kbar", kbar)
        set_(self, "mu2", mu2)
        set_(self, "mu3", mu3)

    def moment(self, r: int) -> int:
        """Factorial moment M_r = sum_i [k_i]_r."""
        if 1 <= r <= MAX_MOMENT:
            return self.moments[r - 1]
        return sum(falling(k, r) for k in self.degrees)

    @property
    def M2(self) -> int:
        return self.moments[1]

    @property
    def M3(self) -> int:
        return self.moments[2]

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    def __len__(self) -> int:
        return self.n


def compute_moments(degrees: Iterable[int]) -> DegreeSequence:
    return DegreeSequence(tuple(degrees))


def as_degrees(k: DegreeSequence | Iterable[int] | str) -> DegreeSequence:
    if isinstance(k, DegreeSequence):
        return k
    if isinstance(k, str):
        try:
            return DegreeSequence(tuple(int(x) for x in k.split(",") if x.strip()))
        except ValueError as exc:
            raise ParseError(f"bad degree list {k!r}") from exc
    return DegreeSequence(tuple(k))


@dataclass(frozen=True)
class MultiplicitySet:
    """A set of nonnegative integers: a finite part plus an optional tail [T, inf).

    The textual form is a comma list with an optional trailing ``+T``,
    e.g. ``"0,1"`` or ``"0,1,+4"``; ``"+0"`` is all of N.
    """

    finite: tuple[int, ...] = ()
    cofinite_from: int | None = None

    def __post_init__(self) -> None:
        vals = set(int(j) for j in self.finite)
        if any(j < 0 for j in vals):
            raise ValueError("multiplicities must be nonnegative")
        T = self.cofinite_from
        if T is not None:
            T = max(int(T), 0)
            vals = {j for j in vals if j < T}
            while T - 1 in vals:
                vals.discard(T - 1)
                T -= 1
        object.__setattr__(self, "finite", tuple(sorted(vals)))
        object.__setattr__(self, "cofinite_from", T)

    @classmethod
    def parse(cls, text: str) -> "MultiplicitySet":
        finite = []
        tail = None
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            try:
                if tok.startswith("+"):
                    if tail is not None:
                        raise ParseError(f"two tails in {text!r}")
                    tail = int(tok[1:])
                else:
                    finite.append(int(tok))
            except ValueError as exc:
                raise ParseError(f"bad multiplicity set {text!r}") from exc
        if any(j < 0 for j in finite) or (tail is not None and tail < 0):
            raise ParseError(f"negative multiplicity in {text!r}")
        return cls(tuple(finite), tail)

    @classmethod
    def naturals(cls) -> "MultiplicitySet":
        return cls((), 0)

    @classmethod
    def of(cls, *values: int) -> "MultiplicitySet":
        return cls(tuple(values))

    def __str__(self) -> str:
        parts = [str(j) for j in self.finite]
        if self.cofinite_from is not None:
            parts.append(f"+{self.cofinite_from}")
        return ",".join(parts)

    def __contains__(self, j: object) -> bool:
        try:
            j = operator.index(j)
        except TypeError:
            return False
        if j < 0:
            return False
        if self.cofinite_from is not None and j >= self.cofinite_from:
            return True
        return j in self.finite

    def indicator(self, j: int) -> int:
        return 1 if j in self else 0

    def indicators(self, upto: int) -> tuple[int, ...]:
        return tuple(self.indicator(j) for j in range(upto + 1))

    def values(self, upto: int) -> list[int]:
        """Members j with 0 <= j <= upto, ascending."""
        return [j for j in range(upto + 1) if j in self]

    @property
    def is_empty(self) -> bool:
        return not self.finite and self.cofinite_from is None

    @property
    def is_finite(self) -> bool:
        return self.cofinite_from is None

    @property
    def max_value(self) -> int | None:
        """Largest member, or None for an infinite set (or empty set)."""
        if self.cofinite_from is not None or not self.finite:
            return None
        return self.finite[-1]

    def smallest(self, count: int) -> list[int]:
        out = list(self.finite[:count])
        j = self.cofinite_from
        while len(out) < count and j is not None:
            out.append(j)
            j += 1
        return out

    def union(self, other: "MultiplicitySet") -> "MultiplicitySet":
        tails = [t for t in (self.cofinite_from, other.cofinite_from) if t is not None]
        return MultiplicitySet(self.finite + other.finite, min(tails) if tails else None)

    def shifted(self, offset: int) -> "MultiplicitySet":
        """The set {j - offset : j in self, j >= offset}."""
        tail = None if self.cofinite_from is None else max(self.cofinite_from - offset, 0)
        return MultiplicitySet(tuple(j - offset for j in self.finite if j >= offset), tail)


def as_mset(s: MultiplicitySet | str | Iterable[int]) -> MultiplicitySet:
    if isinstance(s, MultiplicitySet):
        return s
    if isinstance(s, str):
        return MultiplicitySet.parse(s)
    return MultiplicitySet(tuple(s))


def indicators(S: MultiplicitySet, upto: int) -> tuple[int, ...]:
    return as_mset(S).indicators(upto)


@dataclass(frozen=True)
class Multigraph:
    """Symmetric multiplicity matrix; ``mult[i][i]`` is the loop multiplicity."""

    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.mult)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("multiplicity matrix must be square")
            for j in range(i, n):
                if row[j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
                if row[j] < 0:
                    raise ValueError("negative multiplicity")
        object.__setattr__(self, "mult", rows)

    @classmethod
    def empty(cls, n: int) -> "Multigraph":
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_cells(cls, n: int, cells: dict[tuple[int, int], int]) -> "Multigraph":
        m = [[0] * n for _ in range(n)]
        for (i, j), v in cells.items():
            m[i][j] = m[j][i] = v
        return cls(tuple(map(tuple, m)))

    @property
    def n(self) -> int:
        return len(self.mult)

    def loop(self, i: int) -> int:
        return self.mult[i][i]

    def link(self, i: int, j: int) -> int:
        return self.mult[i][j]

    def degree(self, i: int) -> int:
        row = self.mult[i]
        return sum(row) + row[i]

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(i) for i in range(self.n))

    def edge_count(self) -> int:
        """Diagonal plus above-diagonal entries, i.e. M/2."""
        return sum(self.mult[i][j] for i in range(self.n) for j in range(i, self.n))

    def upper(self) -> tuple[int, ...]:
        n = self.n
        return tuple(self.mult[i][j] for i in range(n) for j in range(i, n))

    def with_deltas(self, deltas: dict[tuple[int, int], int]) -> "Multigraph":
        m = [list(row) for row in self.mult]
        for (i, j), d in deltas.items():
            m[i][j] += d
            if i != j:
                m[j][i] += d
        return Multigraph(tuple(map(tuple, m)))

    def to_json(self) -> dict:
        return {"n": self.n, "mult": [list(r) for r in self.mult]}

    @classmethod
    def from_json(cls, data: dict) -> "Multigraph":
        g = cls(tuple(tuple(r) for r in data["mult"]))
        if "n" in data and data["n"] != g.n:
            raise ParseError(f"n={data['n']} disagrees with matrix size {g.n}")
        return g

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.mult)


def validate(k, J, Jstar) -> None:
    """Raise unless M is even, 0 and 1 are in J and 0 is in J*."""
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    if k.M % 2:
        raise OddTotalDegree(f"total degree M={k.M} is odd")
    missing = [f"{x} in J" for x in (0, 1) if x not in J]
    if 0 not in Jstar:
        missing.append("0 in J*")
    if missing:
        raise MissingSupport("instance needs " + ", ".join(missing))


@dataclass(frozen=True)
class Reduction:
    degrees: DegreeSequence
    J: MultiplicitySet
    Jstar: MultiplicitySet
    s: int
    t: int


def reduce_support(k, J, Jstar) -> Reduction:
    """Shift J* down by its least element s and J by its least element t.

    Each degree drops by 2s + (n-1)t; requires the two smallest members of
    J to be consecutive.
    """
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    if Jstar.is_empty:
        raise UnsupportedSupport("J* is empty")
    low = J.smallest(2)
    if len(low) < 2 or low[1] != low[0] + 1:
        raise UnsupportedSupport(f"smallest two elements of J={J} are not consecutive")
    s, t = Jstar.smallest(1)[0], low[0]
    shift = 2 * s + (k.n - 1) * t
    new = tuple(d - shift for d in k.degrees)
    if any(d < 0 for d in new):
        raise InfeasibleShift(f"shift {shift} makes a degree negative: {new}")
    return Reduction(DegreeSequence(new), J.shifted(t), Jstar.shifted(s), s, t)


def instance_flags(J: MultiplicitySet, Jstar: MultiplicitySet) -> tuple[int, int, int]:
    """(y_1, x_2, x_3)."""
    return Jstar.indicator(1), J.indicator(2), J.indicator(3)

