"""Certified envelopes for sums of ratio-defined sequences.

Two recurrences are supported, both starting at n_0 = 1:

* perturbed:  n_i = (1/i) A(i) (1 - (i-1) B(i)) (1 + delta_i) n_{i-1}
* damped:     n_i = (1/i) (A(i) - (i-1) C(i)) n_{i-1}

Each procedure checks its hypotheses, returns the partial sum for
i = 0..N and a lower/upper envelope.  Envelopes are evaluated with
interval arithmetic and rounded outward (lower down, upper up).
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import mpmath
from mpmath import iv, mp

from .degrees import falling
from .errors import PreconditionViolation

DPS = 30
Values = Union[Callable[[int], float], Sequence[float]]


@contextmanager
def _iv_precision(dps: int):
    saved = iv.dps
    iv.dps = dps
    try:
        yield
    finally:
        iv.dps = saved


def _values(f: Values, N: int, name: str) -> list:
    """f(1..N) as mpf values; sequences are indexed from 1."""
    if callable(f):
        out = [f(i) for i in range(1, N + 1)]
    else:
        out = list(f)
        if len(out) != N:
            raise PreconditionViolation(f"{name} needs {N} values, got {len(out)}")
    return [mp.mpf(x) for x in out]


@dataclass(frozen=True)
class SumBounds:
    total: mpmath.mpf
    lower: mpmath.mpf
    upper: mpmath.mpf

    @property
    def holds(self) -> bool:
        return self.lower <= self.total <= self.upper

    def to_json(self) -> dict:
        return {"sum": float(self.total), "Sigma1": float(self.lower), "Sigma2": float(self.upper), "holds": self.holds}


@dataclass
class PerturbedRecurrence:
    """n_i = (1/i) A(i) (1 - (i-1) B(i)) (1 + delta_i) n_{i-1}.

    ``gamma`` holds gamma_0..gamma_K; the interval ends default to the
    extremes of the given A and B values.
    """

    N: int
    A: Values
    B: Values
    c: float
    K: int = 0
    delta: Values | None = None
    gamma: Sequence[float] = field(default_factory=lambda: [0.0])
    A1: float | None = None
    A2: float | None = None
    B1: float | None = None
    B2: float | None = None


@dataclass
class DampedRecurrence:
    """n_i = (1/i) (A(i) - (i-1) C(i)) n_{i-1}."""

    N: int
    A: Values
    C: Values
    c_hat: float


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionViolation(message)


def _bounds(total, low, high) -> SumBounds:
    with mp.workdps(DPS):
        return SumBounds(total, mp.mpf(low.a), mp.mpf(high.b))


def _partial_sum(factors: list) -> mpmath.mpf:
    n_i = mp.mpf(1)
    total = mp.mpf(1)
    for i, f in enumerate(factors, start=1):
        n_i = n_i * f / i
        total += n_i
    return total


def perturbed_sum_bounds(rec: PerturbedRecurrence) -> SumBounds:
    with mp.workdps(DPS):
        N, K = rec.N, rec.K
        _check(isinstance(N, int) and N >= 2, f"N must be an integer >= 2, got {N}")
        _check(0 <= K <= N, f"K must satisfy 0 <= K <= N, got K={K}")
        A = _values(rec.A, N, "A")
        B = _values(rec.B, N, "B")
        delta = _values(rec.delta, N, "delta") if rec.delta is not None else [mp.mpf(0)] * N
        gamma = [mp.mpf(g) for g in rec.gamma]
        _check(len(gamma) == K + 1, f"gamma needs K+1={K + 1} values, got {len(gamma)}")
        _check(all(g >= 0 for g in gamma), "gamma_j must be nonnegative")
        A1 = mp.mpf(rec.A1) if rec.A1 is not None else min(A)
        A2 = mp.mpf(rec.A2) if rec.A2 is not None else max(A)
        B1 = mp.mpf(rec.B1) if rec.B1 is not None else min(B)
        B2 = mp.mpf(rec.B2) if rec.B2 is not None else max(B)
        c = mp.mpf(rec.c)
        _check(0 <= A1 <= A2, f"need 0 <= A1 <= A2, got A1={A1}, A2={A2}")
        _check(B1 <= B2, f"need B1 <= B2, got B1={B1}, B2={B2}")
        _check(all(A1 <= a <= A2 for a in A), "some A(i) lies outside [A1, A2]")
        _check(all(B1 <= b <= B2 for b in B), "some B(i) lies outside [B1, B2]")
        _check(c > 2 * mp.e, f"c must exceed 2e, got {c}")
        _check(A2 * c < N - K + 1, f"A*c < N-K+1 fails: A2*c={A2 * c}, N-K+1={N - K + 1}")
        _check(max(abs(B1), abs(B2)) * N < 1, f"|B*N| < 1 fails: max|B|*N={max(abs(B1), abs(B2)) * N}")
        running = mp.mpf(0)
        for i in range(1, N + 1):
            running += abs(delta[i - 1])
            majorant = sum(g * falling(i, j) for j, g in enumerate(gamma))
            _check(running <= majorant, f"sum |delta_j| for j <= {i} exceeds its majorant")
            _check(majorant < mp.mpf(1) / 5, f"majorant at i={i} is not below 1/5")

        total = _partial_sum([A[i - 1] * (1 - (i - 1) * B[i - 1]) * (1 + delta[i - 1]) for i in range(1, N + 1)])

    with _iv_precision(DPS):
        a1, a2, b1, b2 = (iv.mpf(x) for x in (A1, A2, B1, B2))
        cc = iv.mpf(c)
        gam = [iv.mpf(g) for g in gamma]
        tail = iv.mpf(1) / 4 * (2 * iv.e / cc) ** N
        pen1 = 4 * sum((g * (3 * a1) ** j for j, g in enumerate(gam)), iv.mpf(0))
        pen2 = 4 * sum((g * (3 * a2) ** j for j, g in enumerate(gam)), iv.mpf(0))
        low = iv.exp(a1 - a1**2 * b2 / 2 - pen1) - tail
        high = iv.exp(a2 - a2**2 * b1 / 2 + a2**3 * b1**2 / 2 + pen2) + tail
    return _bounds(total, low, high)


def damped_sum_bounds(rec: DampedRecurrence) -> SumBounds:
    with mp.workdps(DPS):
        N = rec.N
        _check(isinstance(N, int) and N >= 2, f"N must be an integer >= 2, got {N}")
        A = _values(rec.A, N, "A")
        C = _values(rec.C, N, "C")
        c_hat = mp.mpf(rec.c_hat)
        _check(0 < c_hat < mp.mpf(1) / 3, f"c_hat must lie in (0, 1/3), got {c_hat}")
        for i in range(1, N + 1):
            a, cv = A[i - 1], C[i - 1]
            _check(a >= 0, f"A({i}) = {a} is negative")
            _check(a - (i - 1) * cv >= 0, f"A({i}) - ({i}-1)C({i}) is negative")
        A1, A2, C1, C2 = min(A), max(A), min(C), max(C)
        _check(A2 / N <= c_hat, f"A/N <= c_hat fails: A2/N={A2 / N}")
        _check(max(abs(C1), abs(C2)) <= c_hat, f"|C| <= c_hat fails: max|C|={max(abs(C1), abs(C2))}")

        total = _partial_sum([A[i - 1] - (i - 1) * C[i - 1] for i in range(1, N + 1)])

    with _iv_precision(DPS):
        a1, a2, c1, c2 = (iv.mpf(x) for x in (A1, A2, C1, C2))
        tail = (2 * iv.e * iv.mpf(c_hat)) ** N
        low = iv.exp(a1 - a1 * c2 / 2) - tail
        high = iv.exp(a2 - a2 * c1 / 2 + a2 * c1**2 / 2) + tail
    return _bounds(total, low, high)


# random in-contract recurrences, for property checks

def random_perturbed(rng) -> PerturbedRecurrence:
    """A random recurrence that satisfies every hypothesis of the perturbed form."""
    N = int(rng.integers(2, 40))
    K = int(rng.integers(0, min(N, 3) + 1))
    c = 2 * math.e + float(rng.uniform(0.01, 10))
    A2 = float(rng.uniform(0, 0.999 * (N - K + 1) / c))
    A1 = float(rng.uniform(0, A2))
    Bmax = 0.999 / N
    B1 = float(rng.uniform(-Bmax, Bmax))
    B2 = float(rng.uniform(B1, Bmax))
    gamma = [float(g) for g in rng.uniform(0, 1, K + 1)]
    top = sum(g * falling(N, j) for j, g in enumerate(gamma))
    if top > 0:
        gamma = [g * float(rng.uniform(0, 0.199)) / top for g in gamma]
    # running |delta| sums must stay under the majorant at every i
    # exact bookkeeping: with K = 0 the room shrinks towards zero and float sums overshoot
    delta = []
    used = Fraction(0)
    for i in range(1, N + 1):
        room = sum(Fraction(g) * falling(i, j) for j, g in enumerate(gamma)) - used
        d = float(max(room, Fraction(0)) * Fraction(float(rng.uniform(0, 0.99))))
        used += Fraction(d)
        delta.append(d * float(rng.choice([-1.0, 1.0])))
    A = [float(x) for x in rng.uniform(A1, A2, N)]
    B = [float(x) for x in rng.uniform(B1, B2, N)]
    return PerturbedRecurrence(N, A, B, c, K, delta, gamma, A1, A2, B1, B2)


def random_damped(rng) -> DampedRecurrence:
    """A random recurrence that satisfies every hypothesis of the damped form."""
    N = int(rng.integers(2, 40))
    c_hat = float(rng.uniform(1e-3, 1 / 3 - 1e-9))
    A = [float(x) for x in rng.uniform(0, c_hat * N, N)]
    C = []
    for i, a in enumerate(A, start=1):
        hi = c_hat if i == 1 else min(c_hat, a / (i - 1))
        C.append(float(rng.uniform(-c_hat, hi)))
    return DampedRecurrence(N, A, C, c_hat)
