"""Transfer amplitudes and fidelity of the continuous-time walk on P_n.

We evolve with U(t) = exp(+iAt). Fidelity is phase-insensitive, so the sign
convention only shows up in the argument of complex amplitudes.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import DomainError, UnsupportedSizeError
from .spectrum import PathSpectrum, _check_index

__all__ = [
    "LARGE_TIME",
    "LargeTimeWarning",
    "TWO_PI_HI",
    "TWO_PI_LO",
    "amplitude",
    "amplitude_matrix",
    "fidelity",
    "fidelity_many",
    "oracle_exponential",
    "phase_reduced",
    "reduced_phases",
]

# 2*pi as an unevaluated double-double sum; |hi + lo - 2*pi| < 1e-31
TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16

#: phase reduction is certified to 1e-9 absolute up to this time
LARGE_TIME = 1e9

ORACLE_MAX_N = 64

_SPLIT = 134217729.0  # 2**27 + 1


class LargeTimeWarning(UserWarning):
    """Raised (as a warning) when t exceeds the certified phase-accuracy range."""


def _two_prod(a, b):
    """Error-free product: a*b == p + e exactly (Dekker/Veltkamp, no FMA)."""
    p = a * b
    c = _SPLIT * a
    a_hi = c - (c - a)
    a_lo = a - a_hi
    c = _SPLIT * b
    b_hi = c - (c - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def reduced_phases(theta, t) -> np.ndarray:
    """theta*t mod 2pi in [0, 2pi), elementwise with broadcasting.

    The product is formed exactly as a double-double and reduced against a
    double-double 2pi, so the absolute error stays near 1e-15 regardless of t
    (inputs are taken as exact doubles).
    """
    theta = np.asarray(theta, dtype=float)
    t = np.asarray(t, dtype=float)
    p, e = _two_prod(theta, t)
    k = np.round(p / TWO_PI_HI)
    q, f = _two_prod(k, TWO_PI_HI)
    # p - q is exact (Sterbenz) since p and q agree to within a factor of two
    r = (p - q) + (e - f) - k * TWO_PI_LO
    r = np.where(r < 0.0, (r + TWO_PI_HI) + TWO_PI_LO, r)
    return np.where(r >= TWO_PI_HI, 0.0, r)


def _warn_large(t) -> None:
    if np.any(np.asarray(t) > LARGE_TIME):
        warnings.warn(
            f"t > {LARGE_TIME:g}: phases are exact for the given doubles, but "
            "the rounding of theta itself dominates the result",
            LargeTimeWarning,
            stacklevel=3,
        )


def phase_reduced(theta: float, t: float) -> float:
    """theta*t modulo 2pi, in [0, 2pi)."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    _warn_large(t)
    return float(reduced_phases(theta, t))


def _check_time(t: float) -> None:
    if not t >= 0 or not math.isfinite(t):
        raise DomainError(f"t must be finite and >= 0, got {t}")


def amplitude(spec: PathSpectrum, u: int, v: int, t: float) -> complex:
    """<v|U(t)|u> = sum_r (E_r)_{u,v} exp(i theta_r t)."""
    _check_index("u", u, spec.n)
    _check_index("v", v, spec.n)
    _check_time(t)
    _warn_large(t)
    ph = reduced_phases(spec.eigenvalues, t)
    return complex(np.dot(spec.column(u, v), np.exp(1j * ph)))


def amplitude_matrix(spec: PathSpectrum, t: float) -> np.ndarray:
    """Full U(t) assembled from the spectral decomposition."""
    _check_time(t)
    _warn_large(t)
    phase = np.exp(1j * reduced_phases(spec.eigenvalues, t))
    phi = spec.amplitudes
    return (phi.T * phase) @ phi


def _rotation_minus_one(ph: np.ndarray) -> np.ndarray:
    """exp(i ph) - 1 without cancellation near ph = 0."""
    s = np.sin(0.5 * ph)
    return -2.0 * s * s + 1j * np.sin(ph)


def fidelity(spec: PathSpectrum, t: float) -> float:
    """|<n|U(t)|1>|, evaluated from the signed endpoint weights in O(n).

    The weights sum to exactly zero (U(0) is the identity), so the sum is
    taken against exp(i theta t) - 1; that makes t = 0 give exactly 0.
    """
    _check_time(t)
    _warn_large(t)
    ph = reduced_phases(spec.eigenvalues, t)
    return float(abs(np.dot(spec.transfer_weights, _rotation_minus_one(ph))))


def fidelity_many(spec: PathSpectrum, times, chunk: int = 1 << 15) -> np.ndarray:
    """Vectorised :func:`fidelity` over an array of times."""
    times = np.asarray(times, dtype=float)
    if times.size and (times.min() < 0 or not np.all(np.isfinite(times))):
        raise DomainError("times must be finite and >= 0")
    _warn_large(times)
    w = spec.transfer_weights
    theta = spec.eigenvalues
    flat = times.ravel()
    out = np.empty(flat.shape)
    for lo in range(0, flat.size, chunk):
        tt = flat[lo:lo + chunk]
        ph = reduced_phases(theta[None, :], tt[:, None])
        out[lo:lo + chunk] = np.abs(_rotation_minus_one(ph) @ w)
    return out.reshape(times.shape)


def oracle_exponential(n: int, t: float) -> np.ndarray:
    """exp(iAt) for the n-path by Taylor series with scaling and squaring.

    Works on the adjacency matrix directly and shares nothing with the
    spectrum module; it is the cross-check for :func:`amplitude`.
    """
    if n > ORACLE_MAX_N:
        raise UnsupportedSizeError(f"oracle is capped at n={ORACLE_MAX_N}, got {n}")
    if n < 2:
        raise DomainError(f"chain length must be >= 2, got {n}")
    _check_time(t)
    a = np.zeros((n, n))
    i = np.arange(n - 1)
    a[i, i + 1] = a[i + 1, i] = 1.0
    x = 1j * t * a
    norm = np.abs(x).sum(axis=1).max()
    s = max(0, math.ceil(math.log2(norm / 0.25))) if norm > 0 else 0
    x = x / 2.0**s
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 30):
        term = term @ x / k
        result = result + term
        if np.abs(term).max() < 1e-18:
            break
    for _ in range(s):
        result = result @ result
    return result
