"""Independent-entry random matrix model and the naive count estimate.

Diagonal entries take value b in J* with probability p^b / J*(1), off-diagonal
entries take value j in J with probability p^j / J(1), all independently.
Cofinite tails are summed in closed form, so no truncation is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
from mpmath import mp

from .asymptotics import DPS, Estimate
from .degrees import Multigraph, MultiplicitySet, as_degrees, as_mset, instance_flags, validate
from .errors import Unachievable, UnsupportedEntry, ZeroCoefficient

MODES = ("solved_exact", "asymptotic_pdef")


class TruncatedSeries:
    """Polynomial in z with coefficients for z^0..z^cap; higher terms are dropped."""

    def __init__(self, coeffs, cap: int):
        self.cap = cap
        c = list(coeffs)[: cap + 1]
        zero = c[0] * 0 if c else 0
        self.coeffs = c + [zero] * (cap + 1 - len(c))

    @classmethod
    def from_set(cls, S: MultiplicitySet, p, cap: int, stride: int = 1) -> "TruncatedSeries":
        """sum_{j in S} p^j z^(stride*j), truncated at degree cap."""
        one = p ** 0
        out = [one * 0] * (cap + 1)
        for j in S.values(cap // stride):
            out[stride * j] = p ** j
        return cls(out, cap)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cap = min(self.cap, other.cap)
        a, b = self.coeffs, other.coeffs
        out = [a[0] * 0] * (cap + 1)
        for i in range(cap + 1):
            if a[i] == 0:
                continue
            for j in range(cap + 1 - i):
                out[i + j] += a[i] * b[j]
        return TruncatedSeries(out, cap)

    def __pow__(self, e: int) -> "TruncatedSeries":
        result = TruncatedSeries([self.coeffs[0] ** 0], self.cap)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __getitem__(self, j: int):
        return self.coeffs[j]


def set_sums(S: MultiplicitySet, p):
    """(sum_{j in S} p^j, sum_{j in S} j p^j) with geometric tails in closed form."""
    s0 = sum((p ** j for j in S.finite), p * 0)
    s1 = sum((j * p ** j for j in S.finite), p * 0)
    T = S.cofinite_from
    if T is not None:
        s0 += p ** T / (1 - p)
        s1 += p ** T * (T - (T - 1) * p) / (1 - p) ** 2
    return s0, s1


def expected_row_sum(p, n: int, J, Jstar):
    J, Jstar = as_mset(J), as_mset(Jstar)
    l0, l1 = set_sums(Jstar, p)
    e0, e1 = set_sums(J, p)
    return 2 * l1 / l0 + (n - 1) * e1 / e0


@dataclass(frozen=True)
class NaiveParams:
    p: mpmath.mpf
    p_mode: str
    tail_cut: int | None = None

    def to_json(self) -> dict:
        with mp.workdps(DPS):
            return {"p": mp.nstr(self.p, 30), "p_mode": self.p_mode, "tail_cut": self.tail_cut}


def solve_p0(kbar, n: int, J, Jstar, mode: str = "solved_exact") -> NaiveParams:
    """p making the expected row sum equal to kbar (bisection; the mean increases with p)."""
    J, Jstar = as_mset(J), as_mset(Jstar)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    with mp.workdps(DPS):
        target = mp.mpf(kbar.numerator) / kbar.denominator if isinstance(kbar, Fraction) else mp.mpf(kbar)
        if target <= 0:
            raise Unachievable(f"mean degree {kbar} must be positive")
        if mode == "asymptotic_pdef":
            x2 = J.indicator(2)
            p = target / n + (1 - 2 * x2) * target**2 / n**2
            if not 0 < p < 1:
                raise Unachievable(f"asymptotic p={p} lies outside (0, 1)")
            return NaiveParams(p, mode)
        lo, hi = mp.mpf(0), mp.mpf(1)
        sup = _row_sum_limit(n, J, Jstar)
        if sup is not None and target >= sup:
            raise Unachievable(f"mean degree {kbar} is not below the supremum {mp.nstr(sup, 10)}")
        for _ in range(400):
            mid = (lo + hi) / 2
            if expected_row_sum(mid, n, J, Jstar) < target:
                lo = mid
            else:
                hi = mid
            if hi - lo < mp.mpf(10) ** (-DPS + 5):
                break
        return NaiveParams((lo + hi) / 2, mode)


def _row_sum_limit(n: int, J: MultiplicitySet, Jstar: MultiplicitySet):
    """Expected row sum as p -> 1 (None when unbounded)."""
    if not J.is_finite or not Jstar.is_finite:
        return None
    mean = lambda S: mp.mpf(sum(S.finite)) / len(S.finite)
    return 2 * mean(Jstar) + (n - 1) * mean(J)


def probability_of_matrix(A: Multigraph, p, J, Jstar):
    """Probability of A under the model: p^(M/2) / (J(1)^C(n,2) J*(1)^n)."""
    J, Jstar = as_mset(J), as_mset(Jstar)
    n = A.n
    for i in range(n):
        if A.mult[i][i] not in Jstar:
            raise UnsupportedEntry(f"loop multiplicity {A.mult[i][i]} at {i + 1} is not in J*")
        for j in range(i + 1, n):
            if A.mult[i][j] not in J:
                raise UnsupportedEntry(f"multiplicity {A.mult[i][j]} at ({i + 1},{j + 1}) is not in J")
    j1, _ = set_sums(J, p)
    s1, _ = set_sums(Jstar, p)
    return p ** A.edge_count() / (j1 ** comb(n, 2) * s1**n)


def _sample_entry(rng: np.random.Generator, S: MultiplicitySet, p: float, total: float) -> int:
    u = rng.random() * total
    for j in S.finite:
        w = p**j
        if u < w:
            return j
        u -= w
    if S.cofinite_from is None:
        return S.finite[-1]
    return S.cofinite_from + int(rng.geometric(1 - p)) - 1


def sample_matrix(n: int, p, J, Jstar, seed: int | None = None) -> Multigraph:
    J, Jstar = as_mset(J), as_mset(Jstar)
    p = float(p)
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    tj, _ = set_sums(J, p)
    ts, _ = set_sums(Jstar, p)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = _sample_entry(rng, Jstar, p, ts)
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = _sample_entry(rng, J, p, tj)
    return Multigraph(tuple(map(tuple, m)))


def g_naive(k, J, Jstar, params: NaiveParams | None = None) -> Estimate:
    """p^(-M/2) J(1)^(-C(n,2)) prod_i [z^k_i] J(z)^(n-1) J*(z^2), in log space."""
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    validate(k, J, Jstar)
    if params is None:
        params = solve_p0(k.kbar, k.n, J, Jstar)
    scale = Fraction(k.kmax**3, k.M) if k.M else Fraction(0)
    with mp.workdps(DPS):
        p = mp.mpf(params.p)
        cap = k.kmax
        series = TruncatedSeries.from_set(J, p, cap) ** (k.n - 1) * TruncatedSeries.from_set(Jstar, p, cap, stride=2)
        coeffs = [series[d] for d in k]
        if any(c == 0 for c in coeffs):
            return Estimate.zero_estimate(scale, "naive")
        j1, _ = set_sums(J, p)
        terms = {
            "-M/2 log p": -mp.mpf(k.M) / 2 * mp.log(p),
            "-C(n,2) log J(1)": -comb(k.n, 2) * mp.log(j1),
            "log coefficients": sum(mp.log(c) for c in coeffs),
        }
    return Estimate.build(None, terms, scale, "naive")


def magic_factor(x2: int) -> mpmath.mpf:
    """sqrt(2) exp((1 + 2 x2)/4), the regular-sequence ratio of true count to naive estimate."""
    with mp.workdps(DPS):
        return mp.sqrt(2) * mp.exp(mp.mpf(1 + 2 * x2) / 4)


def correction_exponent(k, J, Jstar, full: bool = True):
    """Exponent of the moment correction applied to sqrt(2) G_naive.

    ``full=False`` keeps only the quadratic-in-mu2 term.
    """
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    _, x2, x3 = instance_flags(J, Jstar)
    mu2, mu3, n, M = k.mu2, k.mu3, k.n, k.M
    terms = {"mu2": Fraction(1, 4) * (1 - mu2) * (1 + 2 * x2 + mu2 * (1 - 2 * x2))}
    if full:
        terms["1/n"] = (6 * mu2 * mu3 * (x3 - x2) - mu2**3) / (2 * n)
        terms["1/M"] = (3 * mu2**2 * (mu2**2 - 2 * mu3) + 2 * mu3**2 * (3 * x3 - 3 * x2 + 1)) / (12 * M)
        terms["M/n^2"] = mu2**2 * M * (9 * x3 - 9 * x2 - 1) / (2 * n * n)
    return terms


def naive_corrected_estimate(k, J, Jstar, full: bool = True, mode: str = "solved_exact") -> Estimate:
    """sqrt(2) G_naive exp(moment correction), with G_naive at the solved p0."""
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    params = solve_p0(k.kbar, k.n, J, Jstar, mode)
    base = g_naive(k, J, Jstar, params)
    if base.zero:
        return base
    terms = dict(base.exponent_terms)
    with mp.workdps(DPS):
        terms["log sqrt 2"] = mp.log(2) / 2
    terms.update(correction_exponent(k, J, Jstar, full))
    return Estimate.build(None, terms, base.error_scale, "naive_corrected")
