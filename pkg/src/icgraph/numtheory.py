"""Arithmetic functions on positive integers.

Primality testing, factorization, Moebius mu, Euler phi, divisor lists,
prime sieves and Ramanujan sums. Everything works on Python ints, which
are arbitrary precision, and everything here is a pure function.

Factorization is deterministic trial division, so general (non prime
power) inputs should stay at desk scale (<= 10^12 or so). Prime powers
are never factored by the rest of the library; their (p, s) shape is
given explicitly.
"""

from __future__ import annotations

import math
from functools import lru_cache


def _check_positive(n: int, what: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"{what} must be an int, got {n!r}")
    if n < 1:
        raise ValueError(f"{what} must be >= 1, got {n}")


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (6k +- 1 wheel)."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"expected an int, got {n!r}")
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as [(prime, multiplicity), ...].

    Primes come out strictly increasing and the product of p**m
    reconstructs n. factorize(1) == [].
    """
    _check_positive(n)
    out: list[tuple[int, int]] = []
    rest = n
    for p in (2, 3):
        if rest % p == 0:
            m = 0
            while rest % p == 0:
                rest //= p
                m += 1
            out.append((p, m))
    f = 5
    while f * f <= rest:
        for p in (f, f + 2):
            if rest % p == 0:
                m = 0
                while rest % p == 0:
                    rest //= p
                    m += 1
                out.append((p, m))
        f += 6
    if rest > 1:
        out.append((rest, 1))
    return out


def mobius(n: int) -> int:
    """Moebius mu: 0 if a square divides n, else (-1)^(number of prime factors)."""
    _check_positive(n)
    result = 1
    for _, m in factorize(n):
        if m > 1:
            return 0
        result = -result
    return result


def totient(n: int) -> int:
    """Euler phi: count of 1 <= k <= n with gcd(k, n) = 1."""
    _check_positive(n)
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n >= 1, increasing."""
    _check_positive(n)
    out = [1]
    for p, m in factorize(n):
        out = [d * p**e for d in out for e in range(m + 1)]
    return sorted(out)


def ramanujan_sum(q: int, k: int) -> int:
    """Ramanujan sum c_q(k): sum of k-th powers of the primitive q-th roots of unity.

    Evaluated as mu(q/g) * phi(q) / phi(q/g) with g = gcd(q, k); the
    quotient is always an integer. Depends on k only through gcd(q, k).
    """
    _check_positive(q, "q")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError(f"k must be an int >= 0, got {k!r}")
    g = math.gcd(q, k)
    m = q // g
    mu = mobius(m)
    if mu == 0:
        return 0
    return mu * (totient(q) // totient(m))


@lru_cache(maxsize=None)
def primes_up_to(limit: int) -> tuple[int, ...]:
    """All primes <= limit, increasing (simple sieve)."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(2, limit + 1) if sieve[i])
