"""Walk matrices, controllability and cospectrality on the path.

Everything that decides a rank or a determinant runs over Python integers or
:class:`fractions.Fraction`; floating point only enters the cospectrality
checks, which read the closed-form spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .classifier import is_prime
from .errors import DomainError
from .spectrum import path_spectrum, _check_index, _check_n

__all__ = [
    "WalkMatrix",
    "walk_matrix",
    "is_controllable",
    "bareiss_determinant",
    "cofactor_determinant",
    "closed_walk_counts",
    "cospectral_diagonal",
    "strongly_cospectral",
    "module_polynomial",
    "apply_polynomial",
    "InternalTransferReport",
    "internal_transfer_implication",
]

COSPECTRAL_TOL = 1e-12


def _adjacent(n: int, x: Sequence) -> list:
    """A x for the n-path, on any exact number type."""
    if n == 1:
        return [0 * x[0]]
    out = [x[1]]
    out += [x[i - 1] + x[i + 1] for i in range(1, n - 1)]
    out.append(x[n - 2])
    return out


def _indicator(n: int, subset: Iterable[int]) -> list[int]:
    _check_n(n)
    s = sorted(set(subset))
    if not s:
        raise DomainError("vertex subset must be nonempty")
    for v in s:
        _check_index("vertex", v, n)
    z = [0] * n
    for v in s:
        z[v - 1] = 1
    return z


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def cofactor_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Laplace expansion along the first row; exponential, for cross-checks only."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * cofactor_determinant(minor)
    return total


@dataclass(frozen=True)
class WalkMatrix:
    """W_z = [z | Az | ... | A^{n-1} z] for the indicator z of a vertex set."""

    n: int
    subset: tuple[int, ...]
    z: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]
    determinant: int

    @property
    def rows(self) -> list[list[int]]:
        return [list(r) for r in zip(*self.columns)]

    @property
    def controllable(self) -> bool:
        return self.determinant != 0


def walk_matrix(n: int, subset: Iterable[int]) -> WalkMatrix:
    z = _indicator(n, subset)
    cols = [z]
    for _ in range(n - 1):
        cols.append(_adjacent(n, cols[-1]))
    rows = [list(r) for r in zip(*cols)]
    det = bareiss_determinant(rows)
    return WalkMatrix(
        n=n,
        subset=tuple(v for v in range(1, n + 1) if z[v - 1]),
        z=tuple(z),
        columns=tuple(tuple(c) for c in cols),
        determinant=det,
    )


def is_controllable(n: int, subset: Iterable[int]) -> bool:
    return walk_matrix(n, subset).determinant != 0


def closed_walk_counts(n: int, u: int, upto: int) -> list[int]:
    """(A^j)_{u,u} for j = 0..upto, exactly."""
    _check_index("u", u, n)
    x = [0] * n
    x[u - 1] = 1
    counts = []
    for _ in range(upto + 1):
        counts.append(x[u - 1])
        x = _adjacent(n, x)
    return counts


def cospectral_diagonal(n: int, u: int, v: int) -> bool:
    """(E_r)_{u,u} == (E_r)_{v,v} for every r, within 1e-12."""
    spec = path_spectrum(n)
    return bool(np.all(np.abs(spec.column(u, u) - spec.column(v, v)) <= COSPECTRAL_TOL))


def strongly_cospectral(n: int, u: int, v: int) -> bool:
    """E_r|u> == +/- E_r|v> for every r, within 1e-12 per entry."""
    spec = path_spectrum(n)
    _check_index("u", u, n)
    _check_index("v", v, n)
    for r in range(1, n + 1):
        eu = spec.idempotent(r)[:, u - 1]
        ev = spec.idempotent(r)[:, v - 1]
        if not (np.all(np.abs(eu - ev) <= COSPECTRAL_TOL)
                or np.all(np.abs(eu + ev) <= COSPECTRAL_TOL)):
            return False
    return True


def module_polynomial(n: int, k: int, l: int) -> list[Fraction] | None:
    """Coefficients c_0..c_d of the minimal-degree f with f(A)|k> = |l>, or None.

    The Krylov vectors A^j |k> are taken in ascending order until the first
    dependent one; |l> is solved for in that basis by exact elimination.
    """
    _check_n(n)
    _check_index("k", k, n)
    _check_index("l", l, n)
    x = [0] * n
    x[k - 1] = 1
    basis: list[list[int]] = []
    # echelon form of the Krylov vectors with their combination records
    echelon: list[tuple[int, list[Fraction], list[Fraction]]] = []
    for j in range(n):
        vec = [Fraction(c) for c in x]
        combo = [Fraction(0)] * n
        combo[j] = Fraction(1)
        vec, combo = _reduce(vec, combo, echelon)
        pivot = next((i for i, c in enumerate(vec) if c), None)
        if pivot is None:
            break
        echelon.append((pivot, vec, combo))
        basis.append(x)
        x = _adjacent(n, x)
    target = [Fraction(0)] * n
    target[l - 1] = Fraction(1)
    combo = [Fraction(0)] * n
    rest, combo = _reduce(target, combo, echelon)
    if any(rest):
        return None
    # target - sum(...) == 0 means target = -combo applied to the Krylov vectors
    coeffs = [-c for c in combo[:len(basis)]]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _reduce(vec, combo, echelon):
    for pivot, row, rcombo in echelon:
        c = vec[pivot]
        if c:
            f = c / row[pivot]
            vec = [a - f * b for a, b in zip(vec, row)]
            combo = [a - f * b for a, b in zip(combo, rcombo)]
    return vec, combo


def apply_polynomial(n: int, coeffs: Sequence[Fraction], x: Sequence) -> list:
    """f(A) x, exactly, with f given by ascending coefficients."""
    out = [Fraction(0)] * n
    power = list(x)
    for c in coeffs:
        out = [o + c * p for o, p in zip(out, power)]
        power = _adjacent(n, power)
    return out


@dataclass(frozen=True)
class InternalTransferReport:
    """What PGST from k to n+1-k would imply for other vertices.

    ``implied`` lists every l with |l> in the A-module of |k>; for each, the
    polynomial f is also checked to send |n+1-k> to |n+1-l> (the flip
    commutes with A).
    """

    n: int
    k: int
    partner: int
    controllable: bool
    central: bool
    implied: tuple[int, ...]
    flip_verified: bool
    reaches_end_vertices: bool
    case_note: str
    polynomials: dict[int, list[Fraction]] = field(repr=False, default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "partner": self.partner,
            "controllable": self.controllable,
            "central": self.central,
            "implied": list(self.implied),
            "flip_verified": self.flip_verified,
            "reaches_end_vertices": self.reaches_end_vertices,
            "case_note": self.case_note,
        }


def _case_note(n: int, k: int) -> str:
    """Which known case (n, k) falls under; the computed fields are authoritative."""
    N = n + 1
    if 2 * k == N:
        return "central vertex: PGST cannot occur at k"
    if is_prime(N):
        return "n+1 prime: every vertex is controllable"
    if N % 2 == 0 and is_prime(N // 2):
        if k == 2 or n + 1 - k == 2:
            return "unresolved: k = 2 with n+1 = 2p"
        return "n+1 = 2p with k not in {2, p}"
    if (N - 2) & (N - 3) == 0:
        return "open: n = 2^m + 1, no conclusion drawn"
    return "not covered by a known case"


def internal_transfer_implication(n: int, k: int) -> InternalTransferReport:
    _check_n(n)
    _check_index("k", k, n)
    partner = n + 1 - k
    e_partner = [0] * n
    e_partner[partner - 1] = 1
    implied, polys, flip_ok = [], {}, True
    for l in range(1, n + 1):
        f = module_polynomial(n, k, l)
        if f is None:
            continue
        implied.append(l)
        polys[l] = f
        image = apply_polynomial(n, f, e_partner)
        expected = [Fraction(int(i == n - l)) for i in range(n)]
        flip_ok &= image == expected
    return InternalTransferReport(
        n=n,
        k=k,
        partner=partner,
        controllable=is_controllable(n, [k]),
        central=2 * k == n + 1,
        implied=tuple(implied),
        flip_verified=flip_ok,
        reaches_end_vertices=1 in implied and n in implied,
        case_note=_case_note(n, k),
        polynomials=polys,
    )
