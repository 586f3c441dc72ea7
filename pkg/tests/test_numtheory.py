import math
import random

import pytest
from hypothesis import given, strategies as st

from autbound.numtheory import (
    crt,
    divisors,
    factorize,
    iroot,
    is_power_of,
    is_prime,
    smallest_prime,
    solve_b,
    solve_b_exists_criterion,
    valuation,
)
from oracles import brute_solve_b, brute_solve_b_vectorised


@given(st.integers(1, 10**6))
def test_factorize_multiplies_back(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f) == n
    assert all(is_prime(p) for p, _ in f)
    assert [p for p, _ in f] == sorted(p for p, _ in f)


def test_small_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert smallest_prime(1) is None
    assert smallest_prime(91) == 7


@given(st.integers(1, 5000))
def test_divisors_match_trial_division(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


def test_valuation_and_powers():
    assert valuation(96, 2) == 5
    assert is_power_of(343, 7) and is_power_of(1, 7) and not is_power_of(98, 7)
    assert iroot(5**12, 12) == 5 and iroot(5**12 + 1, 12) is None


@given(st.lists(st.sampled_from([3, 4, 5, 7, 11, 13]), min_size=1, max_size=4, unique=True), st.data())
def test_crt_solves_every_congruence(moduli, data):
    moduli = [m for i, m in enumerate(moduli) if all(math.gcd(m, k) == 1 for k in moduli[:i])]
    residues = [data.draw(st.integers(0, m - 1)) for m in moduli]
    x, M = crt(residues, moduli)
    assert M == math.prod(moduli) and 0 <= x < M
    assert all(x % m == r for r, m in zip(residues, moduli))


def test_solve_b_matches_brute_force_up_to_10000():
    for t in range(2, 10001):
        expected = brute_solve_b_vectorised(t)
        got = solve_b(t)
        assert got == expected, t
        assert solve_b_exists_criterion(t) == (expected is not None), t
        if got is not None:
            assert (1 + got + got * got) % t == 0


@pytest.mark.parametrize("t,b", [(7, 2), (13, 3), (21, 4), (49, 18)])
def test_solve_b_known_values(t, b):
    assert solve_b(t) == b == brute_solve_b(t)


def test_vectorised_oracle_agrees_with_loop_oracle():
    assert all(brute_solve_b(t) == brute_solve_b_vectorised(t) for t in range(2, 800))


def test_solve_b_large_random():
    rng = random.Random(11)
    for _ in range(50):
        t = rng.randrange(10**5, 10**6)
        b = solve_b(t)
        if b is None:
            assert not solve_b_exists_criterion(t)
        else:
            assert math.gcd(b, t) == 1 and (1 + b + b * b) % t == 0
