"""Which chain lengths admit pretty good state transfer.

P_n has PGST between its end vertices iff n + 1 is a prime, twice a prime,
or a power of two. Every other n factors as n + 1 = m * p with p an odd
prime and m >= 3, and that factorisation is the witness against PGST.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
import math

from .errors import DomainError

__all__ = [
    "Form",
    "Verdict",
    "Classification",
    "is_prime",
    "factorize",
    "euler_phi",
    "pgst_form",
    "nopgst_witness",
    "classify",
    "theta_degree",
]

# Strong-pseudoprime bases that are deterministic below 3.3e24 (> 2**64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# the bases above are a proof below this bound; past it the extra bases make the test probabilistic
_MR_DETERMINISTIC = 3317044064679887385961981
_MR_EXTRA = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_SIEVE_LIMIT = 1 << 21


@lru_cache(maxsize=1)
def _sieve() -> bytearray:
    flags = bytearray([1]) * _SIEVE_LIMIT
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(_SIEVE_LIMIT - 1) + 1):
        if flags[i]:
            flags[i * i::i] = bytes(len(range(i * i, _SIEVE_LIMIT, i)))
    return flags


def _strong_probable_prime(k: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, k)
    if x == 1 or x == k - 1:
        return True
    for _ in range(s - 1):
        x = x * x % k
        if x == k - 1:
            return True
    return False


def is_prime(k: int) -> bool:
    """Primality, deterministic for k < 3.3e24 and a strong probable-prime test past that."""
    if k < _SIEVE_LIMIT:
        return k >= 2 and bool(_sieve()[k])
    for p in _MR_BASES:
        if k % p == 0:
            return False
    d, s = k - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if k < _MR_DETERMINISTIC else _MR_BASES + _MR_EXTRA
    return all(_strong_probable_prime(k, a, d, s) for a in bases)


def _pollard_brent(k: int) -> int:
    """A nontrivial factor of the odd composite k."""
    for c in range(1, k):
        y, r, q, g = 2, 1, 1, 1
        f = lambda v: (v * v + c) % k  # noqa: E731
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            j = 0
            while j < r and g == 1:
                ys = y
                for _ in range(min(128, r - j)):
                    y = f(y)
                    q = q * abs(x - y) % k
                g = math.gcd(q, k)
                j += 128
            r *= 2
        if g == k:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), k)
        if g != k:
            return g
    raise ArithmeticError(f"no factor found for {k}")


def factorize(k: int) -> dict[int, int]:
    """Prime factorisation {p: e} of k >= 1."""
    if k < 1:
        raise DomainError(f"factorize needs k >= 1, got {k}")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
    # wheel mod 30 up to a modest bound, then Pollard-Brent on the cofactor
    p, steps = 7, (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= k and p < 10_000:
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
        p += steps[i]
        i = (i + 1) % 8
    stack = [k] if k > 1 else []
    while stack:
        c = stack.pop()
        if is_prime(c):
            out[c] = out.get(c, 0) + 1
        else:
            d = _pollard_brent(c)
            stack += [d, c // d]
    return dict(sorted(out.items()))


def euler_phi(k: int) -> int:
    if k < 1:
        raise DomainError(f"euler_phi needs k >= 1, got {k}")
    result = k
    for p in factorize(k):
        result = result // p * (p - 1)
    return result


class Verdict(str, Enum):
    PGST = "PGST"
    NO_PGST = "NoPGST"


class Form(str, Enum):
    """Arithmetic shape of a PGST length, in display-priority order."""

    PRIME_MINUS_ONE = "PrimeMinusOne"
    TWO_PRIME_MINUS_ONE = "TwoPrimeMinusOne"
    POWER_OF_TWO_MINUS_ONE = "PowerOfTwoMinusOne"


@dataclass(frozen=True)
class Classification:
    n: int
    verdict: Verdict
    theta_degree: int
    form: Form | None = None
    # prime p for the two prime forms, exponent m for 2**m - 1
    parameter: int | None = None
    # (m, p) with n + 1 = m * p, p odd prime, m >= 3
    witness: tuple[int, int] | None = None
    # theta_degree at n = 2 comes from the formula without the index-two argument
    degree_flagged: bool = field(default=False)

    @property
    def pgst(self) -> bool:
        return self.verdict is Verdict.PGST

    def describe(self) -> str:
        if self.form is None:
            m, p = self.witness
            return f"NoPGST(n+1={m}*{p})"
        return f"{self.form.value}({self.parameter})"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pgst": self.pgst,
            "form": self.describe() if self.pgst else None,
            "witness": (
                {"m": self.witness[0], "p": self.witness[1]} if self.witness
                else {"form": self.form.value, "parameter": self.parameter}
            ),
            "theta_degree": self.theta_degree,
            "theta_degree_flagged": self.degree_flagged,
        }


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 2:
        raise DomainError(f"chain length must be >= 2, got {n}")


def pgst_form(n: int) -> tuple[Form, int] | None:
    """(form, parameter) when n + 1 is p, 2p or 2**m; None otherwise."""
    _check_n(n)
    N = n + 1
    if is_prime(N):
        return Form.PRIME_MINUS_ONE, N
    if N % 2 == 0 and is_prime(N // 2):
        return Form.TWO_PRIME_MINUS_ONE, N // 2
    if N & (N - 1) == 0:
        return Form.POWER_OF_TWO_MINUS_ONE, N.bit_length() - 1
    return None


def _smallest_odd_prime_factor(k: int) -> int | None:
    while k % 2 == 0:
        k //= 2
    if k == 1:
        return None
    if is_prime(k):
        return k
    return min(factorize(k))


def nopgst_witness(n: int) -> tuple[int, int] | None:
    """(m, p) with n + 1 = m*p, p odd prime, m >= 3, choosing the smallest p."""
    _check_n(n)
    N = n + 1
    p = _smallest_odd_prime_factor(N)
    if p is None or N // p < 3:
        return None
    return N // p, p


def theta_degree(n: int) -> int:
    """Algebraic degree of 2cos(pi/(n+1)), i.e. phi(2n+2)/2."""
    _check_n(n)
    return euler_phi(2 * n + 2) // 2


def classify(n: int) -> Classification:
    _check_n(n)
    degree = theta_degree(n)
    found = pgst_form(n)
    if found is not None:
        form, param = found
        return Classification(n, Verdict.PGST, degree, form=form, parameter=param,
                              degree_flagged=n == 2)
    witness = nopgst_witness(n)
    if witness is None:  # pragma: no cover - the two predicates are complementary
        raise AssertionError(f"n={n} has neither a PGST form nor a witness")
    return Classification(n, Verdict.NO_PGST, degree, witness=witness,
                          degree_flagged=n == 2)
