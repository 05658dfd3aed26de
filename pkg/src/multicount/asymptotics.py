"""Asymptotic count formulas in log space.

An :class:`Estimate` keeps an exact rational leading term next to a map of
named exponent contributions, so huge counts never pass through a double.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math
import sys
from contextlib import contextmanager
from fractions import Fraction
from math import factorial

import mpmath
from mpmath import mp

from .degrees import DegreeSequence, as_degrees, as_mset, instance_flags, validate
from .errors import OddTotalDegree

DPS = 50


@contextmanager
def unlimited_digits():
    """Lift the interpreter's int/str digit cap while exact big values are (de)serialized."""
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    saved = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(saved)


def log_fraction(x: Fraction) -> mpmath.mpf:
    with mp.workdps(DPS):
        return mp.log(x.numerator) - mp.log(x.denominator)


def _num(x) -> mpmath.mpf:
    with mp.workdps(DPS):
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        return mp.mpf(x)


def _str(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    with mp.workdps(DPS):
        return mp.nstr(x, 40)


def _parse(text: str):
    if "/" in text or text.lstrip("-").isdigit():
        return Fraction(text)
    with mp.workdps(DPS):
        return mp.mpf(text)


@dataclass(frozen=True)
class Estimate:
    """exp(log_value) approximates a count; ``zero`` marks an exact zero."""

    log_value: mpmath.mpf
    leading_term: Fraction | None
    exponent_terms: dict = field(default_factory=dict)
    error_scale: Fraction = Fraction(0)
    zero: bool = False
    label: str = ""

    @classmethod
    def build(cls, leading: Fraction | None, terms: dict, error_scale: Fraction, label: str = "", extra_log=0):
        with mp.workdps(DPS):
            log = mp.mpf(0) if leading is None else log_fraction(leading)
            for v in terms.values():
                log += _num(v)
            log += _num(extra_log)
        return cls(log, leading, dict(terms), error_scale, False, label)

    @classmethod
    def zero_estimate(cls, error_scale: Fraction = Fraction(0), label: str = "") -> "Estimate":
        return cls(mp.mpf("-inf"), Fraction(0), {}, error_scale, True, label)

    @property
    def exponent(self):
        """Sum of the exponent terms (exact when all terms are rational)."""
        vals = list(self.exponent_terms.values())
        if all(isinstance(v, Fraction) for v in vals):
            return sum(vals, Fraction(0))
        with mp.workdps(DPS):
            return sum((_num(v) for v in vals), mp.mpf(0))

    @property
    def value(self) -> mpmath.mpf:
        if self.zero:
            return mp.mpf(0)
        with mp.workdps(DPS):
            return mp.exp(self.log_value)

    def __float__(self) -> float:
        return float(self.value)

    def _float_value(self) -> float | None:
        v = float(self.value)
        return v if math.isfinite(v) else None

    def to_json(self) -> dict:
        with unlimited_digits():
            lead = None if self.leading_term is None else str(self.leading_term)
        return {
            "label": self.label,
            "log_value": "-inf" if self.zero else _str(self.log_value),
            # null when the count overflows a double; log_value stays exact
            "value": self._float_value(),
            "leading_term": lead,
            "exponent_terms": {k: _str(v) for k, v in self.exponent_terms.items()},
            "error_scale": str(self.error_scale),
            "zero": self.zero,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Estimate":
        with mp.workdps(DPS):
            log = mp.mpf(data["log_value"])
        lead = data.get("leading_term")
        with unlimited_digits():
            lead = None if lead is None else Fraction(lead)
        return cls(
            log,
            lead,
            {k: _parse(v) for k, v in data.get("exponent_terms", {}).items()},
            Fraction(data.get("error_scale", "0")),
            bool(data.get("zero", False)),
            data.get("label", ""),
        )


def pairing_leading_term(M: int) -> Fraction:
    """M! / ((M/2)! 2^(M/2)) as a Fraction."""
    if M % 2:
        raise OddTotalDegree(f"M={M} is odd")
    return Fraction(factorial(M), factorial(M // 2) * 2 ** (M // 2))


def _fact_product(k: DegreeSequence) -> int:
    out = 1
    for d in k:
        out *= factorial(d)
    return out


def _error_scale(k: DegreeSequence) -> Fraction:
    return Fraction(k.kmax**3, k.M) if k.M else Fraction(0)


def sparse_estimate(k, J, Jstar) -> Estimate:
    """Asymptotic count of multigraphs with degrees k, link set J and loop set J*.

    The exponent has five parts: a loop term, a double-link term, a quartic
    term, a mixed term and a triple-link term.
    """
    k, J, Jstar = as_degrees(k), as_mset(J), as_mset(Jstar)
    validate(k, J, Jstar)
    if k.M < 2:
        raise ValueError("the estimate needs M >= 2")
    y1, x2, x3 = instance_flags(J, Jstar)
    M, M2, M3 = k.M, k.M2, k.M3
    half = Fraction(1, 2)
    terms = {
        "loops": (y1 - half) * Fraction(M2, M),
        "double": (x2 - half) * Fraction(M2 * M2, 2 * M * M),
        "quartic": Fraction(M2**4, 4 * M**5),
        "mixed": -Fraction(M2 * M2 * M3, 2 * M**4),
        "triple": (x3 - x2 + Fraction(1, 3)) * Fraction(M3 * M3, 2 * M**3),
    }
    lead = pairing_leading_term(M) / _fact_product(k)
    return Estimate.build(lead, terms, _error_scale(k), "sparse")


def regular_exponent(kreg: int, n: int, J, Jstar) -> tuple[Fraction, Fraction]:
    """The two parts of Q(k, n): the n-free part and the k^3/(12n) part."""
    y1, x2, x3 = instance_flags(as_mset(J), as_mset(Jstar))
    main = Fraction(kreg - 1, 4) * ((-1) ** x2 * (kreg - 1) + 2 * (-1) ** y1)
    corr = Fraction(kreg**3, 12 * n) * (6 * x2 - 6 * x3 + 1)
    return main, corr


def regular_estimate(kreg: int, n: int, J, Jstar) -> Estimate:
    """Asymptotic count for the k-regular sequence on n vertices: leading term times exp(-Q)."""
    if (kreg * n) % 2:
        raise OddTotalDegree(f"k*n = {kreg * n} is odd")
    k = DegreeSequence((kreg,) * n)
    validate(k, J, Jstar)
    main, corr = regular_exponent(kreg, n, J, Jstar)
    lead = pairing_leading_term(kreg * n) / factorial(kreg) ** n
    scale = Fraction(kreg * kreg, n)
    return Estimate.build(lead, {"-Q_main": -main, "-Q_n": -corr}, scale, "regular")


def simple_pairing_asymptotic(k) -> Estimate:
    """Asymptotic number of pairings with no loops and no parallel pairs."""
    k = as_degrees(k)
    M, M2, M3 = k.M, k.M2, k.M3
    lead = pairing_leading_term(M)
    if M == 0:
        return Estimate.build(lead, {}, Fraction(0), "simple_pairings")
    terms = {
        "loops": -Fraction(M2, 2 * M),
        "double": -Fraction(M2 * M2, 4 * M * M),
        "mixed": -Fraction(M2 * M2 * M3, 2 * M**4),
        "quartic": Fraction(M2**4, 4 * M**5),
        "triple": Fraction(M3 * M3, 6 * M**3),
    }
    return Estimate.build(lead, terms, _error_scale(k), "simple_pairings")


@dataclass(frozen=True)
class CorrectionFactors:
    """Exponents of the triple-link, loop and double-link correction factors."""

    triple: Fraction
    loop: Fraction
    double: Fraction
    flags: tuple[int, int, int]

    @property
    def gated_sum(self) -> Fraction:
        y1, x2, x3 = self.flags
        return y1 * self.loop + x2 * self.double + x3 * self.triple

    def to_json(self) -> dict:
        return {
            "triple": str(self.triple), "loop": str(self.loop), "double": str(self.double),
            "flags": {"y1": self.flags[0], "x2": self.flags[1], "x3": self.flags[2]},
            "gated_sum": str(self.gated_sum),
        }


def correction_factors(k, J, Jstar) -> CorrectionFactors:
    k = as_degrees(k)
    M, M2, M3 = k.M, k.M2, k.M3
    if M < 2:
        raise ValueError("correction factors need M >= 2")
    triple = Fraction(M3 * M3, 2 * M**3)
    return CorrectionFactors(
        triple=triple,
        loop=Fraction(M2, M),
        double=Fraction(M2 * M2, 2 * M * M) - triple,
        flags=instance_flags(as_mset(J), as_mset(Jstar)),
    )


def composed_estimate(k, J, Jstar) -> Estimate:
    """Simple-pairing asymptotic times the gated corrections, divided by prod k_i!."""
    k = as_degrees(k)
    base = simple_pairing_asymptotic(k)
    cf = correction_factors(k, J, Jstar)
    terms = dict(base.exponent_terms)
    terms["corrections"] = cf.gated_sum
    lead = base.leading_term / _fact_product(k)
    return Estimate.build(lead, terms, _error_scale(k), "composed")
