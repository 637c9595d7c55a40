"""Symmetric functions in the power-sum basis and plethysm coefficients.

Everything is kept as exact rationals on power-sum indices; Schur
coefficients are read off at the end with the character table, using
``<p_pi, s_lam> = chi_lam(pi)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence

from .partitions import Partition, as_partition, centralizer_size, character, iter_partitions


def _merge(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


class PowerSumVector:
    """Sparse linear combination of power sums ``p_pi`` with rational coefficients."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Optional[Mapping[Sequence[int], Fraction]] = None):
        self.degree = degree
        self.terms: Dict[Partition, Fraction] = {}
        for key, coeff in (terms or {}).items():
            key = as_partition(key)
            if sum(key) != degree:
                raise ValueError(f"term {key} does not have degree {degree}")
            coeff = Fraction(coeff)
            if coeff:
                self.terms[key] = self.terms.get(key, 0) + coeff
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def _raw(cls, degree: int, terms: Dict[Partition, Fraction]) -> "PowerSumVector":
        out = cls.__new__(cls)
        out.degree = degree
        out.terms = {k: v for k, v in terms.items() if v}
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSumVector):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        return f"PowerSumVector(degree={self.degree}, terms={self.terms!r})"

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "PowerSumVector") -> "PowerSumVector":
        if self.degree != other.degree:
            raise ValueError("cannot add vectors of different degree")
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return PowerSumVector._raw(self.degree, acc)

    def scale(self, c) -> "PowerSumVector":
        c = Fraction(c)
        return PowerSumVector._raw(self.degree, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "PowerSumVector") -> "PowerSumVector":
        acc: Dict[Partition, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = _merge(a, b)
                acc[key] = acc.get(key, 0) + ca * cb
        return PowerSumVector._raw(self.degree + other.degree, acc)

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), reverse=True)
        return {
            "degree": self.degree,
            "terms": [[list(k), f"{v.numerator}/{v.denominator}"] for k, v in items],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PowerSumVector":
        return cls(data["degree"], {tuple(k): Fraction(v) for k, v in data["terms"]})


ONE = PowerSumVector._raw(0, {(): Fraction(1)})


@lru_cache(maxsize=None)
def h_in_powersums(n: int) -> PowerSumVector:
    """Complete homogeneous h_n = sum over rho |- n of p_rho / z_rho."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return PowerSumVector._raw(n, {rho: Fraction(1, centralizer_size(rho)) for rho in iter_partitions(n)})


def powersum_plethysm(k: int, f: PowerSumVector) -> PowerSumVector:
    """p_k[f]: every p_j in f becomes p_{jk}."""
    if k < 1:
        raise ValueError("k must be positive")
    return PowerSumVector._raw(
        k * f.degree, {tuple(k * part for part in key): c for key, c in f.terms.items()}
    )


@lru_cache(maxsize=None)
def outer_plethysm_h_h(d: int, n: int) -> PowerSumVector:
    """h_d[h_n], the character of Sym^d Sym^n, in the power-sum basis."""
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    inner = h_in_powersums(n)
    pieces: Dict[int, PowerSumVector] = {}
    acc: Dict[Partition, Fraction] = {}
    for rho in iter_partitions(d):
        term = ONE
        for part in rho:
            if part not in pieces:
                pieces[part] = powersum_plethysm(part, inner)
            term = term * pieces[part]
        weight = Fraction(1, centralizer_size(rho))
        for key, c in term.terms.items():
            acc[key] = acc.get(key, 0) + weight * c
    return PowerSumVector._raw(d * n, acc)


def schur_coefficient(f: PowerSumVector, lam: Sequence[int]) -> Fraction:
    """Coefficient of s_lam in f, i.e. the Hall inner product <f, s_lam>."""
    lam = as_partition(lam)
    if sum(lam) != f.degree:
        raise ValueError(f"|{lam}| != degree {f.degree}")
    return sum((c * character(lam, key) for key, c in f.terms.items()), Fraction(0))


def pleth(n: int, d: int, lam: Sequence[int], num_vars: int) -> int:
    """Multiplicity of V_lam in Sym^d Sym^n C^num_vars."""
    lam = as_partition(lam)
    if sum(lam) != d * n:
        raise ValueError(f"|lambda| = {sum(lam)} but d*n = {d * n}")
    if len(lam) > num_vars:
        return 0
    value = schur_coefficient(outer_plethysm_h_h(d, n), lam)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"plethysm coefficient {value} for {lam} is not a natural number")
    return int(value)
