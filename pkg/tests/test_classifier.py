import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pgst.classifier import (
    Form,
    Verdict,
    classify,
    euler_phi,
    factorize,
    is_prime,
    nopgst_witness,
    pgst_form,
    theta_degree,
)
from pgst.errors import DomainError


def trial_division_prime(k):
    if k < 2:
        return False
    return all(k % d for d in range(2, math.isqrt(k) + 1))


def test_is_prime_small_cases():
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(0)


def test_is_prime_strong_pseudoprime():
    # strong pseudoprime to bases 2, 3, 5, 7
    k = 3215031751
    assert not trial_division_prime(k)
    assert not is_prime(k)
    assert k == 151 * 751 * 28351


def test_is_prime_matches_trial_division():
    assert [k for k in range(5000) if is_prime(k)] == [k for k in range(5000) if trial_division_prime(k)]


@pytest.mark.parametrize("k", [
    2**61 - 1, 2**64 - 59, 18446744073709551557, 3825123056546413051,
    318665857834031151167461, 2**64 + 1, 1000000007 * 1000000009,
])
def test_is_prime_large(k):
    assert is_prime(k) == sympy.isprime(k)


@settings(max_examples=300)
@given(st.integers(2**21, 2**64 - 1))
def test_is_prime_random_64bit(k):
    assert is_prime(k) == sympy.isprime(k)


def test_sieve_boundary():
    for k in range((1 << 21) - 50, (1 << 21) + 50):
        assert is_prime(k) == sympy.isprime(k)


@pytest.mark.parametrize("k, phi", [(10, 4), (20, 8), (16, 8), (1, 1), (2, 1), (9, 6)])
def test_euler_phi_values(k, phi):
    assert euler_phi(k) == phi


def test_euler_phi_brute_force():
    for k in range(1, 600):
        assert euler_phi(k) == sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**18))
def test_factorize_and_phi_against_sympy(k):
    assert factorize(k) == sympy.factorint(k)
    assert euler_phi(k) == sympy.totient(k)


def test_euler_phi_domain():
    with pytest.raises(DomainError):
        euler_phi(0)


@pytest.mark.parametrize("n, form, parameter", [
    (4, Form.PRIME_MINUS_ONE, 5),
    (7, Form.POWER_OF_TWO_MINUS_ONE, 3),
    (9, Form.TWO_PRIME_MINUS_ONE, 5),
    (2, Form.PRIME_MINUS_ONE, 3),
    (3, Form.TWO_PRIME_MINUS_ONE, 2),  # also 2**2 - 1; priority picks the prime form
    (15, Form.POWER_OF_TWO_MINUS_ONE, 4),
])
def test_classify_pgst(n, form, parameter):
    c = classify(n)
    assert c.verdict is Verdict.PGST
    assert (c.form, c.parameter) == (form, parameter)
    assert c.witness is None


def test_classify_n8():
    c = classify(8)
    assert c.verdict is Verdict.NO_PGST
    assert c.witness == (3, 3)
    assert c.form is None


def test_classify_domain():
    for bad in (1, 0, -3):
        with pytest.raises(DomainError):
            classify(bad)


def test_only_eight_fails_up_to_ten():
    assert [n for n in range(2, 11) if not classify(n).pgst] == [8]


def test_witness_prefers_smallest_odd_prime():
    # 45 = 15*3 = 9*5: smallest odd prime is 3
    assert nopgst_witness(44) == (15, 3)
    # 2*3*5*7 = 210
    assert nopgst_witness(209) == (70, 3)
    # 4*5 = 20, no factor 3
    assert nopgst_witness(19) == (4, 5)


def test_witness_validity():
    for n in range(2, 20000):
        w = nopgst_witness(n)
        if w is None:
            continue
        m, p = w
        assert m * p == n + 1 and m >= 3 and p % 2 == 1 and is_prime(p)


def test_form_equivalence_small():
    for n in range(2, 5000):
        N = n + 1
        positive = (sympy.isprime(N) or (N % 2 == 0 and sympy.isprime(N // 2))
                    or N & (N - 1) == 0)
        assert (pgst_form(n) is not None) == positive
        assert (nopgst_witness(n) is None) == positive
        assert classify(n).pgst == positive


@pytest.mark.parametrize("n, degree", [(4, 2), (6, 3), (7, 4), (2, 1)])
def test_theta_degree(n, degree):
    assert theta_degree(n) == degree


def test_theta_degree_matches_minimal_polynomial():
    x = sympy.Symbol("x")
    for n in range(2, 25):
        poly = sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / (n + 1)), x)
        assert sympy.degree(poly, x) == theta_degree(n), n


def test_theta_degree_closed_forms():
    for p in sympy.primerange(3, 200):
        # the cyclotomic field has degree p - 1 in both cases; theta sits at index two
        assert euler_phi(2 * p) == euler_phi(4 * p) // 2 == p - 1
        assert theta_degree(p - 1) == (p - 1) // 2
        assert theta_degree(2 * p - 1) == p - 1
    for m in range(2, 20):
        assert theta_degree(2**m - 1) == 2 ** (m - 1)


def test_degree_flag_only_at_two():
    assert classify(2).degree_flagged
    assert not any(classify(n).degree_flagged for n in range(3, 50))


def test_classification_dict_shape():
    d = classify(8).to_dict()
    assert d["pgst"] is False and d["witness"] == {"m": 3, "p": 3} and d["form"] is None
    d = classify(4).to_dict()
    assert d["form"] == "PrimeMinusOne(5)" and d["theta_degree"] == 2
