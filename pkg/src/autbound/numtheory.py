"""Small exact integer helpers: factoring, roots, CRT, and the 1+b+b^2 solver."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n >= 1`` as ``((p, e), ...)`` with ascending p."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def smallest_prime(n: int) -> int | None:
    f = factorize(n)
    return f[0][0] if f else None


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def valuation(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_power_of(n: int, p: int) -> bool:
    """True when ``n = p**k`` for some k >= 0."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def only_primes(n: int, allowed) -> bool:
    """True when every prime divisor of ``n`` lies in ``allowed``."""
    return n >= 1 and all(p in allowed for p in prime_divisors(n))


def iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of ``n >= 0``, or None."""
    if n < 0:
        return None
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


def crt(residues, moduli) -> tuple[int, int]:
    """Combine pairwise coprime congruences; returns ``(x, M)`` with 0 <= x < M."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = math.gcd(m, n)
        if g != 1:
            raise ValueError("moduli must be pairwise coprime")
        x = (x + m * ((r - x) * pow(m, -1, n) % n)) % (m * n)
        m *= n
    return x, m


def _cube_root_roots_mod_prime_power(p: int, e: int) -> list[int]:
    """Roots of 1 + b + b^2 modulo p**e."""
    if p == 3:
        return [1] if e == 1 else []
    if p % 3 != 1:
        return []
    roots = [b for b in range(p) if (1 + b + b * b) % p == 0]
    # Hensel lift: derivative 1 + 2b is a unit mod p because the two roots are distinct
    mod = p
    for _ in range(1, e):
        nxt = mod * p
        lifted = []
        for b in roots:
            f = 1 + b + b * b
            df = 1 + 2 * b
            lifted.append((b - f * pow(df, -1, nxt)) % nxt)
        roots, mod = lifted, nxt
    return roots


def solve_b(t: int) -> int | None:
    """Least ``b`` in ``[1, t)`` with ``gcd(b, t) = 1`` and ``t | 1 + b + b^2``."""
    if t < 2:
        raise ValueError("t must be at least 2")
    per_prime = []
    moduli = []
    for p, e in factorize(t):
        roots = _cube_root_roots_mod_prime_power(p, e)
        if not roots:
            return None
        per_prime.append(roots)
        moduli.append(p**e)
    best = None
    for combo in itertools.product(*per_prime):
        b, _ = crt(combo, moduli)
        if b == 0:
            continue
        if best is None or b < best:
            best = b
    return best


def solve_b_exists_criterion(t: int) -> bool:
    """Closed-form existence test: 9 does not divide t and all other primes are 1 mod 3."""
    if t % 9 == 0:
        return False
    core = t // 3 if t % 3 == 0 else t
    return all(p % 3 == 1 for p in prime_divisors(core))
