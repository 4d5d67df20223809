"""Time searches over the end-to-end fidelity of P_n.

All searches walk a uniform grid t_i = i*h and refine near grid points whose
fidelity comes within h**2/8 of the level of interest. That margin is safe:
near a local maximum t0 of |h(t)| the real part of exp(-i arg h(t0)) h(t) has
second derivative bounded by sum_r a_r theta_r**2 = (A**2)_{11} = 1, so the
nearest grid point (at most h/2 away) loses at most h**2/8.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
import math
from typing import Iterator

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConvergenceError, DomainError
from .evolution import fidelity, fidelity_many, reduced_phases
from .spectrum import PathSpectrum, path_spectrum

__all__ = [
    "PhaseTarget",
    "SearchResult",
    "Figure1Row",
    "phase_target",
    "phase_residual",
    "default_grid_step",
    "earliest_time",
    "max_fidelity_estimate",
    "realize_target",
    "figure1_table",
]

_CHUNK = 1 << 15
_BISECT_TOL = 1e-10


@dataclass(frozen=True)
class PhaseTarget:
    """exp(i theta_r t) ~ (-1)^(r-1) gamma for r = 1..floor(n/2).

    ``delta`` and ``alpha`` are the same targets in units of full turns of
    theta_r t / 2: the condition reads theta_r t / (2 pi) ~ delta + alpha_r (mod 1).
    """

    n: int
    half: int
    gamma: complex
    delta: float
    alpha: tuple[float, ...]

    @property
    def angles(self) -> np.ndarray:
        """Target arguments in [0, 2pi) for r = 1..half."""
        return np.mod(2.0 * np.pi * (self.delta + np.asarray(self.alpha)), 2.0 * np.pi)

    def full_angles(self) -> np.ndarray:
        """Target arguments of (-1)^(r-1) gamma for all r = 1..n."""
        r = np.arange(self.n)
        return np.mod(2.0 * np.pi * self.delta + np.pi * (r % 2), 2.0 * np.pi)

    def label(self) -> str:
        return {1: "1", -1: "-1", 1j: "i", -1j: "-i"}[self.gamma]


_DELTA = {1: 0.0, -1: 0.5, 1j: 0.25, -1j: 0.75}


def phase_target(n: int) -> tuple[PhaseTarget, ...]:
    """The admissible limiting phases gamma: 1 (n = 1 mod 4), -1 (n = 3 mod 4), +/-i (n even)."""
    if n < 2:
        raise DomainError(f"chain length must be >= 2, got {n}")
    half = n // 2
    alpha = tuple(0.5 if r % 2 == 0 else 0.0 for r in range(1, half + 1))
    if n % 2 == 0:
        gammas = (1j, -1j)
    elif n % 4 == 1:
        gammas = (1,)
    else:
        gammas = (-1,)
    return tuple(PhaseTarget(n, half, g, _DELTA[g], alpha) for g in gammas)


def _circular(d: np.ndarray) -> np.ndarray:
    d = np.mod(d, 2.0 * np.pi)
    return np.minimum(d, 2.0 * np.pi - d)


def phase_residual(spec: PathSpectrum, target: PhaseTarget, t: float, full: bool = False) -> float:
    """Largest circular distance (radians) between theta_r t and its target.

    Over r = 1..floor(n/2) by default; ``full=True`` checks all n eigenvalues.
    """
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    if full:
        ph = reduced_phases(spec.eigenvalues, t)
        return float(_circular(ph - target.full_angles()).max())
    if target.half == 0:
        return 0.0
    ph = reduced_phases(spec.eigenvalues[: target.half], t)
    return float(_circular(ph - target.angles).max())


def _best_target(spec: PathSpectrum, t: float) -> tuple[PhaseTarget, float]:
    # ties go to the first candidate, which is +i for even n
    best = None
    for target in phase_target(spec.n):
        res = phase_residual(spec, target, t)
        if best is None or res < best[1]:
            best = (target, res)
    return best


def default_grid_step(spec: PathSpectrum) -> float:
    """2 pi / (20 theta_1 floor(n/2))."""
    return 2.0 * np.pi / (20.0 * spec.eigenvalues[0] * max(spec.half, 1))


@dataclass(frozen=True)
class SearchResult:
    n: int
    t_star: float | None
    fidelity_at_t: float | None
    epsilon: float
    phase_residual: float | None
    gamma: str | None
    converged: bool
    scan_ceiling: float
    t_max: float
    grid_step: float

    def to_dict(self) -> dict:
        return asdict(self)


def _check_scan(t_max: float, grid_step: float) -> None:
    if not (t_max > 0 and math.isfinite(t_max)):
        raise DomainError(f"t_max must be positive, got {t_max}")
    if not (grid_step > 0 and math.isfinite(grid_step)):
        raise DomainError(f"grid_step must be positive, got {grid_step}")


def _runs(spec: PathSpectrum, t_max: float, h: float, level) -> Iterator[tuple[float, float, float]]:
    """Yield (grid_max_so_far, t_best, f_best) for each run of grid points with f >= level.

    ``level`` is a callable of the running grid maximum so the max search can
    tighten it as it goes. Runs split at chunk boundaries are reported twice.
    """
    count = int(math.floor(t_max / h + 1e-9)) + 1
    grid_max = -1.0
    for lo in range(0, count, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, count))
        t = idx * h
        f = fidelity_many(spec, t)
        grid_max = max(grid_max, float(f.max()))
        hit = f >= level(grid_max)
        if not hit.any():
            continue
        edges = np.flatnonzero(np.diff(np.concatenate(([0], hit.view(np.int8), [0]))))
        for a, b in zip(edges[::2], edges[1::2]):
            j = a + int(np.argmax(f[a:b]))
            yield grid_max, float(t[j]), float(f[j])


def _refine_peak(spec: PathSpectrum, t0: float, h: float) -> tuple[float, float]:
    """Local maximum of the fidelity within one grid step of t0."""
    lo = max(0.0, t0 - h)
    ts = np.linspace(lo, t0 + h, 17)
    fs = fidelity_many(spec, ts)
    j = int(np.argmax(fs))
    a, b = ts[max(j - 1, 0)], ts[min(j + 1, 16)]
    res = minimize_scalar(lambda t: -fidelity(spec, t), bounds=(a, b), method="bounded",
                          options={"xatol": 1e-12})
    t_best, f_best = float(res.x), -float(res.fun)
    if fs[j] > f_best:
        t_best, f_best = float(ts[j]), float(fs[j])
    return t_best, f_best


def _bisect(spec: PathSpectrum, below: float, above: float, thr: float) -> float:
    """Shrink [below, above] (either order) around a crossing of thr; returns the above-side end."""
    while abs(above - below) > _BISECT_TOL:
        mid = 0.5 * (below + above)
        if fidelity(spec, mid) > thr:
            above = mid
        else:
            below = mid
    return above


def _crossing_window(spec: PathSpectrum, t_peak: float, h: float, thr: float) -> tuple[float, float]:
    """Earliest and latest times around t_peak where the fidelity exceeds thr."""
    step = h / 4.0
    left = t_peak
    while left > 0.0 and fidelity(spec, left) > thr:
        left = max(0.0, left - step)
    right = t_peak
    while fidelity(spec, right) > thr:
        right += step
    return _bisect(spec, left, t_peak, thr), _bisect(spec, right, t_peak, thr)


def earliest_time(spec: PathSpectrum, epsilon: float = 0.01, t_max: float = 1e4,
                  grid_step: float | None = None) -> SearchResult:
    """First time the fidelity exceeds 1 - epsilon, located to within 1e-9."""
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    h = default_grid_step(spec) if grid_step is None else grid_step
    _check_scan(t_max, h)
    thr = 1.0 - epsilon
    margin = h * h / 8.0
    for grid_max, t0, _ in _runs(spec, t_max, h, lambda _: thr - margin):
        t_peak, f_peak = _refine_peak(spec, t0, h)
        if f_peak <= thr:
            continue
        t_star, _ = _crossing_window(spec, t_peak, h, thr)
        if t_star > t_max:
            break
        target, res = _best_target(spec, t_star)
        return SearchResult(spec.n, t_star, fidelity(spec, t_star), epsilon, res,
                            target.label(), True, max(grid_max, f_peak), t_max, h)
    ceiling = max_fidelity_estimate(spec, t_max, h)[1]
    return SearchResult(spec.n, None, None, epsilon, None, None, False, ceiling, t_max, h)


def max_fidelity_estimate(spec: PathSpectrum, t_max: float,
                          grid_step: float | None = None) -> tuple[float, float]:
    """(t_best, f_best): the largest fidelity on [0, t_max] after local refinement."""
    h = default_grid_step(spec) if grid_step is None else grid_step
    _check_scan(t_max, h)
    margin = h * h / 8.0
    candidates: list[tuple[float, float]] = []
    grid_max = 0.0
    for grid_max, t0, f0 in _runs(spec, t_max, h, lambda g: g - margin):
        candidates.append((t0, f0))
    best_t, best_f = 0.0, 0.0
    for t0, f0 in candidates:
        if f0 < grid_max - margin:
            continue
        t, f = _refine_peak(spec, t0, h)
        if t <= t_max and f > best_f:
            best_t, best_f = t, f
    return best_t, best_f


def realize_target(spec: PathSpectrum, epsilon: float = 0.01, rho: float = 0.2,
                   t_max: float = 1e5, grid_step: float | None = None) -> SearchResult:
    """First high-fidelity window containing a time whose phases sit within rho of a target.

    This is the constructive side of PGST: a time where every
    exp(i theta_r t), r <= floor(n/2), is close to (-1)^(r-1) gamma and the
    fidelity exceeds 1 - epsilon.
    """
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    h = default_grid_step(spec) if grid_step is None else grid_step
    _check_scan(t_max, h)
    thr = 1.0 - epsilon
    margin = h * h / 8.0
    targets = phase_target(spec.n)
    ceiling = 0.0
    last_window_end = -1.0
    for grid_max, t0, _ in _runs(spec, t_max, h, lambda _: thr - margin):
        if t0 <= last_window_end:
            continue
        t_peak, f_peak = _refine_peak(spec, t0, h)
        ceiling = max(ceiling, grid_max, f_peak)
        if f_peak <= thr:
            continue
        a, b = _crossing_window(spec, t_peak, h, thr)
        last_window_end = b
        for target in targets:
            t, res = _min_residual(spec, target, a, b)
            f = fidelity(spec, t)
            if res < rho and f > thr and t <= t_max:
                return SearchResult(spec.n, t, f, epsilon, res, target.label(), True,
                                    ceiling, t_max, h)
    return SearchResult(spec.n, None, None, epsilon, None, None, False, ceiling, t_max, h)


def _min_residual(spec: PathSpectrum, target: PhaseTarget, a: float, b: float) -> tuple[float, float]:
    ts = np.linspace(a, b, 65)
    half = target.half
    ph = reduced_phases(spec.eigenvalues[None, :half], ts[:, None])
    res = _circular(ph - target.angles[None, :]).max(axis=1)
    j = int(np.argmin(res))
    lo, hi = ts[max(j - 1, 0)], ts[min(j + 1, 64)]
    out = minimize_scalar(lambda t: phase_residual(spec, target, t), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    if out.fun < res[j]:
        return float(out.x), float(out.fun)
    return float(ts[j]), float(res[j])


@dataclass(frozen=True)
class Figure1Row:
    n: int
    t_star: float | None
    log_t_star: float | None
    converged: bool
    t_max: float


def figure1_table(epsilon: float = 0.01, ns=range(2, 8), t_start: float = 16.0,
                  t_limit: float = 1e6) -> list[Figure1Row]:
    """Earliest times with fidelity above 1 - epsilon, doubling t_max until found."""
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    rows = []
    for n in ns:
        spec = path_spectrum(n)
        t_max = t_start
        while True:
            result = earliest_time(spec, epsilon, t_max)
            if result.converged or t_max >= t_limit:
                break
            t_max *= 2.0
        t = result.t_star
        rows.append(Figure1Row(n, t, math.log(t) if t else None, result.converged, t_max))
    if not any(r.converged for r in rows):
        raise ConvergenceError(f"no chain reached fidelity {1 - epsilon} by t={t_limit:g}")
    return rows
