"""Closed-form eigensystem of the n-path adjacency matrix.

The path P_n on vertices 1..n (edges {u, u+1}) has simple spectrum

    theta_r = 2 cos(pi r / (n + 1)),            r = 1..n
    phi_r(u) = sqrt(2 / (n + 1)) sin(pi r u / (n + 1))

so nothing here ever calls an eigensolver. Vertex and eigenvalue indices are
1-based on the public surface; arrays are stored 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import DomainError

__all__ = [
    "THETA_ZERO",
    "PathSpectrum",
    "path_spectrum",
    "eigenvalue",
    "idempotent_entry",
    "endpoint_weights",
    "adjacency_matrix",
]

#: 2 cos(0); not an eigenvalue of P_n but the natural companion of theta_1..theta_n
THETA_ZERO = 2.0


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 2:
        raise DomainError(f"chain length must be >= 2, got {n}")


def _check_index(name: str, i: int, n: int) -> None:
    if not isinstance(i, (int, np.integer)) or isinstance(i, bool) or not 1 <= i <= n:
        raise DomainError(f"{name}={i!r} outside 1..{n}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PathSpectrum:
    """Eigenvalues, unit eigenvectors and endpoint weights of P_n.

    ``eigenvalues[r-1]`` is theta_r, ``amplitudes[r-1, u-1]`` is phi_r(u) and
    ``endpoint_weights[r-1]`` is a_r = (E_r)_{1,1}. Arrays are read-only.
    """

    n: int
    eigenvalues: np.ndarray
    amplitudes: np.ndarray
    endpoint_weights: np.ndarray

    @classmethod
    def of(cls, n: int) -> "PathSpectrum":
        _check_n(n)
        n = int(n)
        r = np.arange(1, n + 1)
        x = np.pi / (n + 1)
        theta = 2.0 * np.cos(x * r)
        # sin(pi*r*u/(n+1)) with r*u reduced mod 2(n+1) keeps the argument small
        ru = np.mod(np.outer(r, r), 2 * (n + 1))
        phi = math.sqrt(2.0 / (n + 1)) * np.sin(x * ru)
        weights = (2.0 / (n + 1)) * np.sin(x * r) ** 2
        return cls(n, _frozen(theta), _frozen(phi), _frozen(weights))

    @property
    def half(self) -> int:
        """floor(n/2): the number of strictly positive eigenvalues."""
        return self.n // 2

    @property
    def endpoint_signs(self) -> np.ndarray:
        """(-1)^(r-1), so that (E_r)_{1,n} = sign_r * a_r."""
        return np.where(np.arange(self.n) % 2 == 0, 1.0, -1.0)

    @property
    def transfer_weights(self) -> np.ndarray:
        """Signed weights (E_r)_{1,n}; the end-to-end amplitude is their e^{i theta t} mix."""
        return self.endpoint_signs * self.endpoint_weights

    def theta(self, r: int) -> float:
        _check_index("r", r, self.n)
        return float(self.eigenvalues[r - 1])

    def phi(self, r: int, u: int) -> float:
        _check_index("r", r, self.n)
        _check_index("u", u, self.n)
        return float(self.amplitudes[r - 1, u - 1])

    def idempotent_entry(self, r: int, u: int, v: int) -> float:
        """(E_r)_{u,v} = phi_r(u) phi_r(v)."""
        _check_index("r", r, self.n)
        _check_index("u", u, self.n)
        _check_index("v", v, self.n)
        return float(self.amplitudes[r - 1, u - 1] * self.amplitudes[r - 1, v - 1])

    def idempotent(self, r: int) -> np.ndarray:
        """The rank-one projector E_r as a dense n x n array."""
        _check_index("r", r, self.n)
        row = self.amplitudes[r - 1]
        return np.outer(row, row)

    def column(self, u: int, v: int) -> np.ndarray:
        """(E_r)_{u,v} for r = 1..n."""
        _check_index("u", u, self.n)
        _check_index("v", v, self.n)
        return self.amplitudes[:, u - 1] * self.amplitudes[:, v - 1]


@lru_cache(maxsize=256)
def path_spectrum(n: int) -> PathSpectrum:
    """Cached :class:`PathSpectrum` for P_n."""
    return PathSpectrum.of(n)


def eigenvalue(n: int, r: int) -> float:
    _check_n(n)
    _check_index("r", r, n)
    return 2.0 * math.cos(math.pi * r / (n + 1))


def idempotent_entry(n: int, r: int, u: int, v: int) -> float:
    return path_spectrum(n).idempotent_entry(r, u, v)


def endpoint_weights(n: int) -> list[float]:
    """a_r = (2/(n+1)) sin^2(pi r/(n+1)); these are convex weights summing to 1."""
    return path_spectrum(n).endpoint_weights.tolist()


def adjacency_matrix(n: int) -> np.ndarray:
    """Dense 0/1 adjacency matrix of P_n (test and oracle use only)."""
    _check_n(n)
    a = np.zeros((n, n))
    i = np.arange(n - 1)
    a[i, i + 1] = a[i + 1, i] = 1.0
    return a
