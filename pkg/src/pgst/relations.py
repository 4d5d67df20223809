"""Rational dependences among path eigenvalues, and an explicit fidelity bound.

When n + 1 = m p with p odd and m >= 3, the alternating cosine identity

    1 + 2 sum_{r=1}^{(p-1)/2} (-1)^r cos(pi r / p) = 0

multiplied through by cos(x pi / (n+1)) gives, for x = 1, 2,

    theta_x + sum_r (-1)^r theta_{mr+x} + sum_r (-1)^r theta_{mr-x} = 0,

and the difference of the two is an integer relation that forbids PGST.
For n = 3k + 2 with k even, theta_1 = theta_k + theta_{k+2} is used instead to
bound the end-to-end fidelity away from one.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .classifier import classify
from .errors import DomainError, InvalidInputError, WitnessError
from .spectrum import path_spectrum

__all__ = [
    "DependenceWitness",
    "BoundReport",
    "cosine_identity_residual",
    "relation_coefficients",
    "eigen_relation_residual",
    "dependence_witness",
    "bound_report",
]

_SQRT3 = math.sqrt(3.0)


def cosine_identity_residual(p: int) -> float:
    """|1 + 2 sum_{r=1}^{(p-1)/2} (-1)^r cos(pi r/p)|; vanishes for every odd p >= 3."""
    if p < 3 or p % 2 == 0:
        raise DomainError(f"p must be odd and >= 3, got {p}")
    r = np.arange(1, (p - 1) // 2 + 1)
    terms = np.where(r % 2 == 0, 1.0, -1.0) * np.cos(np.pi * r / p)
    return abs(math.fsum([1.0, *(2.0 * terms)]))


def _check_factorisation(n: int, m: int, p: int) -> None:
    if n + 1 != m * p:
        raise WitnessError(f"n+1={n + 1} is not m*p={m}*{p}")
    if m < 3 or p < 3 or p % 2 == 0:
        raise WitnessError(f"need m >= 3 and p odd >= 3, got m={m}, p={p}")


def relation_coefficients(n: int, m: int, p: int, x: int) -> dict[int, int]:
    """Integer coefficients of the x-relation, keyed by eigenvalue index."""
    _check_factorisation(n, m, p)
    if x not in (1, 2):
        raise DomainError(f"x must be 1 or 2, got {x}")
    coeffs: dict[int, int] = {x: 1}
    for r in range(1, (p - 1) // 2 + 1):
        sign = -1 if r % 2 else 1
        for idx in (m * r + x, m * r - x):
            if not 1 <= idx <= n:
                raise AssertionError(f"index {idx} left 1..{n} for n={n}, m={m}, p={p}")
            coeffs[idx] = coeffs.get(idx, 0) + sign
    return {k: c for k, c in sorted(coeffs.items()) if c}


def _residual(n: int, coeffs: dict[int, int]) -> float:
    theta = path_spectrum(n).eigenvalues
    return abs(math.fsum(c * theta[i - 1] for i, c in coeffs.items()))


def eigen_relation_residual(n: int, m: int, p: int, x: int) -> float:
    return _residual(n, relation_coefficients(n, m, p, x))


@dataclass(frozen=True)
class DependenceWitness:
    """A nonzero integer vector c with sum_r c_r theta_r = 0 (up to rounding)."""

    n: int
    m: int
    p: int
    coefficients: dict[int, int]
    residual: float

    def positive_coefficients(self) -> dict[int, int]:
        """The same relation folded onto theta_1..theta_{floor(n/2)} via theta_{n+1-r} = -theta_r."""
        folded: dict[int, int] = {}
        for r, c in self.coefficients.items():
            if 2 * r == self.n + 1:
                continue  # theta = 0
            if 2 * r > self.n + 1:
                r, c = self.n + 1 - r, -c
            folded[r] = folded.get(r, 0) + c
        return {r: c for r, c in sorted(folded.items()) if c}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "coefficients": {str(k): v for k, v in self.coefficients.items()},
            "positive_coefficients": {str(k): v for k, v in self.positive_coefficients().items()},
            "residual": self.residual,
        }


def dependence_witness(n: int) -> DependenceWitness:
    """The x=1 relation minus the x=2 relation, for a length without PGST."""
    c = classify(n)
    if c.pgst:
        raise InvalidInputError(f"P_{n} has PGST ({c.describe()}); no dependence witness exists")
    m, p = c.witness
    coeffs = dict(relation_coefficients(n, m, p, 1))
    for i, v in relation_coefficients(n, m, p, 2).items():
        coeffs[i] = coeffs.get(i, 0) - v
    coeffs = {k: v for k, v in sorted(coeffs.items()) if v}
    if not coeffs:
        raise AssertionError(f"relation for n={n} cancelled to zero")
    return DependenceWitness(n, m, p, coeffs, _residual(n, coeffs))


@dataclass(frozen=True)
class BoundReport:
    """Case analysis bounding the fidelity of P_{3k+2}, k even.

    All bounds refer to the real part of the four-term partial sum over
    r in {1, k, k+2, n}, whose aligned maximum is 2 a_1 + a_k + a_{k+2}.
    Each deficiency is how far a case's bound sits below that maximum.
    """

    n: int
    k: int
    a_1: float
    a_k: float
    a_k2: float
    a_n: float
    identity_residual: float
    aligned_maximum: float
    # case A: both cosines <= -sqrt(3)/2; B: cos(theta_{k+2} t) >= sqrt(3)/2;
    # C: cos(theta_k t) >= sqrt(3)/2
    case_deficiencies: tuple[float, float, float]
    # case B as first printed, 3 a_1 + sqrt(3) a_k / 2 + a_{k+2}, next to its simplification
    case_b_printed: float
    case_b_simplified: float
    claimed_ceiling: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "weights": {"a_1": self.a_1, "a_k": self.a_k, "a_k+2": self.a_k2, "a_n": self.a_n},
            "identity_residual": self.identity_residual,
            "aligned_maximum": self.aligned_maximum,
            "case_deficiencies": {
                "A": self.case_deficiencies[0],
                "B": self.case_deficiencies[1],
                "C": self.case_deficiencies[2],
            },
            "case_b_bound_printed": self.case_b_printed,
            "case_b_bound_simplified": self.case_b_simplified,
            "claimed_ceiling": self.claimed_ceiling,
        }


def bound_k(n: int) -> int | None:
    """k when n = 3k + 2 with k even and k >= 2, else None."""
    if n >= 8 and (n - 2) % 3 == 0 and ((n - 2) // 3) % 2 == 0:
        return (n - 2) // 3
    return None


def bound_report(n: int) -> BoundReport:
    k = bound_k(n)
    if k is None:
        raise DomainError(f"n={n} is not of the form 3k+2 with k even, k >= 2")
    spec = path_spectrum(n)
    a = spec.endpoint_weights
    a1, ak, ak2, an = (float(a[i - 1]) for i in (1, k, k + 2, n))
    theta = spec.eigenvalues
    identity = abs(theta[0] - theta[k - 1] - theta[k + 1])
    c = 2.0 - _SQRT3
    deficiencies = (
        (a1 + c * (ak + ak2)) / 2.0,
        c * ak / 2.0,
        c * ak2 / 2.0,
    )
    aligned = 2.0 * a1 + ak + ak2
    return BoundReport(
        n=n,
        k=k,
        a_1=a1,
        a_k=ak,
        a_k2=ak2,
        a_n=an,
        identity_residual=float(identity),
        aligned_maximum=aligned,
        case_deficiencies=deficiencies,
        case_b_printed=3.0 * a1 + _SQRT3 * ak / 2.0 + ak2,
        case_b_simplified=aligned - deficiencies[1],
        claimed_ceiling=1.0 - min(deficiencies),
    )
