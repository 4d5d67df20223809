import itertools
import math

import mpmath
import numpy as np
import pytest

from pgst.classifier import classify
from pgst.errors import DomainError, InvalidInputError, WitnessError
from pgst.relations import (
    bound_report,
    cosine_identity_residual,
    dependence_witness,
    eigen_relation_residual,
    relation_coefficients,
)
from pgst.spectrum import path_spectrum


def test_cosine_identity_p3():
    assert cosine_identity_residual(3) < 1e-15


def test_cosine_identity_p5_by_hand():
    by_hand = 1 - 2 * math.cos(math.pi / 5) + 2 * math.cos(2 * math.pi / 5)
    assert abs(by_hand) < 1e-14
    assert cosine_identity_residual(5) < 1e-14


def test_cosine_identity_p97():
    mpmath.mp.dps = 40
    exact = 1 + 2 * mpmath.fsum((-1) ** r * mpmath.cos(mpmath.pi * r / 97) for r in range(1, 49))
    assert abs(exact) < 1e-35
    assert cosine_identity_residual(97) < 1e-12


@pytest.mark.parametrize("p", [1, 2, 4, 10])
def test_cosine_identity_domain(p):
    with pytest.raises(DomainError):
        cosine_identity_residual(p)


def test_relation_n8_terms():
    # x=1, m=3, p=3: theta_1 - theta_4 - theta_2
    assert relation_coefficients(8, 3, 3, 1) == {1: 1, 2: -1, 4: -1}
    theta = path_spectrum(8).eigenvalues
    assert abs(theta[0] - theta[3] - theta[1]) < 1e-12


@pytest.mark.parametrize("n, m, p, x", [(8, 3, 3, 1), (14, 3, 5, 2), (8, 3, 3, 2), (14, 5, 3, 1)])
def test_eigen_relation_residual(n, m, p, x):
    assert eigen_relation_residual(n, m, p, x) < 1e-12


def test_eigen_relation_wrong_factorisation():
    with pytest.raises(WitnessError):
        eigen_relation_residual(9, 3, 3, 1)
    with pytest.raises(WitnessError):
        eigen_relation_residual(9, 2, 5, 1)


def test_dependence_witness_examples():
    w = dependence_witness(8)
    assert (w.m, w.p) == (3, 3)
    assert w.coefficients and w.residual < 1e-12
    assert dependence_witness(14).residual < 1e-12
    with pytest.raises(InvalidInputError):
        dependence_witness(4)


def test_witness_support_and_indices():
    for n in range(2, 301):
        if classify(n).pgst:
            continue
        w = dependence_witness(n)
        allowed = {1, 2}
        for r in range(1, (w.p - 1) // 2 + 1):
            allowed |= {w.m * r + s for s in (-2, -1, 1, 2)}
        assert set(w.coefficients) <= allowed
        assert all(1 <= i <= n for i in w.coefficients)
        assert all(isinstance(c, int) and c for c in w.coefficients.values())


def test_witness_exact_with_mpmath():
    mpmath.mp.dps = 60
    for n in (8, 14, 26, 44, 104, 209, 399):
        w = dependence_witness(n)
        total = mpmath.fsum(c * 2 * mpmath.cos(mpmath.pi * i / (n + 1)) for i, c in w.coefficients.items())
        assert abs(total) < mpmath.mpf(10) ** -50


def test_positive_fold_is_a_relation():
    for n in range(2, 201):
        if classify(n).pgst:
            continue
        folded = dependence_witness(n).positive_coefficients()
        assert folded and max(folded) <= n // 2
        theta = path_spectrum(n).eigenvalues
        assert abs(math.fsum(c * theta[i - 1] for i, c in folded.items())) < 1e-9


def _small_relation_exists(n, bound=3, tol=1e-6):
    theta = path_spectrum(n).eigenvalues[: n // 2]
    values = np.arange(-bound, bound + 1)
    combos = np.array(list(itertools.product(values, repeat=len(theta))), dtype=float)
    sums = np.abs(combos @ theta)
    nonzero = np.any(combos != 0, axis=1)
    return bool(np.any(sums[nonzero] < tol))


def test_brute_force_finds_known_relation_for_nopgst():
    # sanity for the oracle: it must see the n=8 and n=14 relations
    assert _small_relation_exists(8)
    assert _small_relation_exists(11)


def test_first_eigenvalue_splits_for_3k_plus_2():
    for k in range(2, 101, 2):
        n = 3 * k + 2
        theta = path_spectrum(n).eigenvalues
        assert abs(theta[0] - theta[k - 1] - theta[k + 1]) < 1e-12


def test_bound_report_n8():
    b = bound_report(8)
    assert b.k == 2
    assert b.identity_residual < 1e-12
    assert all(d > 0 for d in b.case_deficiencies)
    assert b.claimed_ceiling == pytest.approx(1 - min(b.case_deficiencies))
    a = path_spectrum(8).endpoint_weights
    assert (b.a_1, b.a_k, b.a_k2, b.a_n) == pytest.approx((a[0], a[1], a[3], a[7]))
    # both printed forms of case B are carried, and they differ
    assert b.case_b_printed != pytest.approx(b.case_b_simplified)
    assert b.case_b_simplified == pytest.approx(b.aligned_maximum - b.case_deficiencies[1])


def test_bound_report_case_a_matches_printed_bound():
    b = bound_report(8)
    printed = 1.5 * b.a_1 + (b.a_k + b.a_k2) * math.sqrt(3) / 2
    assert printed == pytest.approx(b.aligned_maximum - b.case_deficiencies[0], abs=1e-15)


def test_bound_report_n20():
    b = bound_report(20)
    assert b.k == 6 and b.identity_residual < 1e-12 and b.claimed_ceiling < 1


@pytest.mark.parametrize("n", [5, 9, 11, 2, 14 + 3])
def test_bound_report_domain(n):
    with pytest.raises(DomainError):
        bound_report(n)


def test_near_miss_is_not_a_relation():
    # a float residual below 1e-6 that is not an exact relation: P_18 has PGST
    c = [3, 0, -3, 1, -3, 2, 1, -2, -1]
    theta = path_spectrum(18).eigenvalues
    assert abs(math.fsum(ci * theta[i] for i, ci in enumerate(c))) < 1e-6
    mpmath.mp.dps = 40
    exact = mpmath.fsum(ci * 2 * mpmath.cos(mpmath.pi * (i + 1) / 19) for i, ci in enumerate(c))
    assert abs(exact) > 1e-7
