"""Exact gcd-graph energies.

Two independent routes to the energy (sum of absolute eigenvalues):

* the prime-power product formula
      E(D(a), p^s) = 2(p-1) p^(s-1) (r - (p-1) h(a)),
  with h(a) the double sum of p^-(a_i - a_k) over index pairs k < i,
  evaluated all-integer as 2(p-1)(r p^(s-1) - (p-1) T) where
  T = sum p^(s-1-(a_i-a_k));
* the spectral route for arbitrary n via Ramanujan sums,
      lambda_k = sum_{d in D} c_{n/d}(k).

Closed forms for the minimal and maximal energy over divisor sets of
p^s live here too, along with the equidistant h sums they rest on, the
hyper/hypoenergetic classification against 2(n-1), and the
Koolen-Moulton bound check.

All arithmetic is exact: ints and fractions.Fraction throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .model import (
    PrimePowerOrder,
    ResourceLimitError,
    check_divisor_set,
    check_exponent_tuple,
    delta_inverse,
)
from .numtheory import divisors, is_prime, ramanujan_sum

# energy_general / spectrum_gcd_graph refuse larger n; the per-order
# gcd histogram pass is O(n log n) and meant for desk-scale checking.
GENERAL_N_CAP = 10**6


def h_value(p: int, a: Sequence[int]) -> Fraction:
    """h(a) = sum over pairs k < i of p^-(a_i - a_k), exact.

    a must be strictly increasing with nonnegative entries; r = 1 gives 0.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    a = tuple(a)
    check_exponent_tuple(a, a[-1] + 1 if a else 1)
    if len(a) == 1:
        return Fraction(0)
    span = a[-1] - a[0]
    t = 0
    for k in range(len(a)):
        for i in range(k + 1, len(a)):
            t += p ** (span - (a[i] - a[k]))
    return Fraction(t, p**span)


def energy_prime_power(order: PrimePowerOrder, a: Sequence[int]) -> int:
    """Energy of the gcd graph on p^s with divisor set {p^a_1, ..., p^a_r}.

    Integer-exact: E = 2(p-1)(r p^(s-1) - (p-1) T) with
    T = sum_{k<i} p^(s-1-(a_i-a_k)). Works for every exponent tuple,
    admissible or not (singletons give the minimal energy 2(p-1)p^(s-1)).
    """
    p, s = order.p, order.s
    a = check_exponent_tuple(a, s)
    r = len(a)
    t = 0
    for k in range(r):
        for i in range(k + 1, r):
            t += p ** (s - 1 - (a[i] - a[k]))
    return 2 * (p - 1) * (r * p ** (s - 1) - (p - 1) * t)


@lru_cache(maxsize=4096)
def _divisor_tuple(n: int) -> tuple[int, ...]:
    return tuple(divisors(n))


@lru_cache(maxsize=64)
def _gcd_class_counts(n: int) -> tuple[int, ...]:
    """Count, for each divisor g of n (ascending), the k in [0, n) with gcd(k, n) = g."""
    gs = _divisor_tuple(n)
    index = {g: i for i, g in enumerate(gs)}
    counts = [0] * len(gs)
    for k in range(n):
        counts[index[math.gcd(k, n)]] += 1
    return tuple(counts)


@lru_cache(maxsize=4096)
def _eigenvalue_classes(n: int, d: int) -> tuple[int, ...]:
    """c_{n/d}(g) for each divisor g of n (ascending)."""
    q = n // d
    return tuple(ramanujan_sum(q, g) for g in _divisor_tuple(n))


def spectrum_gcd_graph(n: int, divisor_set: Iterable[int]) -> list[int]:
    """Eigenvalues lambda_0..lambda_{n-1} of the gcd graph on Z/nZ.

    lambda_k = sum_{d in D} c_{n/d}(k); all integers. lambda_0 equals the
    degree sum_{d in D} phi(n/d), and the whole list sums to 0.
    """
    ds = check_divisor_set(n, divisor_set)
    if n > GENERAL_N_CAP:
        raise ResourceLimitError(f"n = {n} exceeds the spectral scan cap {GENERAL_N_CAP}")
    gs = _divisor_tuple(n)
    index = {g: i for i, g in enumerate(gs)}
    by_class = [sum(_eigenvalue_classes(n, d)[i] for d in ds) for i in range(len(gs))]
    return [by_class[index[math.gcd(k, n)]] for k in range(n)]


def energy_general(n: int, divisor_set: Iterable[int]) -> int:
    """Energy sum_k |lambda_k| of the gcd graph on Z/nZ, spectral route.

    lambda_k depends on k only through gcd(k, n), so the scan groups k
    by gcd class (one cached histogram pass per n). Exact integer result,
    identical to summing |.| over spectrum_gcd_graph. Cap: n <= 10^6.
    """
    ds = check_divisor_set(n, divisor_set)
    if n > GENERAL_N_CAP:
        raise ResourceLimitError(f"n = {n} exceeds the spectral scan cap {GENERAL_N_CAP}")
    counts = _gcd_class_counts(n)
    vectors = [_eigenvalue_classes(n, d) for d in ds]
    total = 0
    for i, count in enumerate(counts):
        lam = sum(vec[i] for vec in vectors)
        total += count * abs(lam)
    return total


def emin_closed(order: PrimePowerOrder) -> tuple[int, list[tuple[int, ...]]]:
    """Minimal energy over divisor sets of p^s and all attaining sets.

    The minimum 2(p-1)p^(s-1) is attained exactly by the singletons {p^t}.
    """
    p, s = order.p, order.s
    value = 2 * (p - 1) * p ** (s - 1)
    return value, [(p**t,) for t in range(s)]


def emax_closed(order: PrimePowerOrder) -> tuple[int, list[tuple[int, ...]]]:
    """Maximal energy over divisor sets of p^s and all maximizing exponent tuples.

    Odd s:  ((s+1)(p^2-1)p^s + 2(p^(s+1)-1)) / (p+1)^2,
            attained by (0,2,...,s-3,s-1), plus (0,1,3,...,s-2,s-1) when p = 2.
    Even s: (s(p^2-1)p^s + 2(2p^(s+1)-p^(s-1)+p^2-p-1)) / (p+1)^2,
            attained by (0,2,...,s-2,s-1) and (0,1,3,...,s-3,s-1).
    Both divisions are exact (checked). s = 1 gives 2(p-1) with the sole
    divisor set {1}, returned as the singleton tuple (0).
    """
    p, s = order.p, order.s
    if s == 1:
        return 2 * (p - 1), [(0,)]
    if s % 2:
        numerator = (s + 1) * (p * p - 1) * p**s + 2 * (p ** (s + 1) - 1)
        tuples = [delta_inverse((2,) * ((s - 1) // 2))]
        if p == 2:
            tuples.append(delta_inverse((1,) + (2,) * ((s - 3) // 2) + (1,)))
    else:
        numerator = s * (p * p - 1) * p**s + 2 * (
            2 * p ** (s + 1) - p ** (s - 1) + p * p - p - 1
        )
        half = (s - 2) // 2
        tuples = [
            delta_inverse((2,) * half + (1,)),
            delta_inverse((1,) + (2,) * half),
        ]
    value, remainder = divmod(numerator, (p + 1) ** 2)
    if remainder:
        raise RuntimeError(
            f"maximal-energy closed form did not divide exactly for p={p}, s={s}"
        )
    unique: list[tuple[int, ...]] = []
    for t in tuples:
        if t not in unique:
            unique.append(t)
    return value, unique


def emax_alternative(order: PrimePowerOrder) -> int:
    """Maximal energy in the summation form that shows the 2(p-1) factor.

    s = 2m+1: 2(p-1)((m+1)p^(2m) - (p-1) sum_{j=0}^{m-1} (j+1)p^(2j)),
    s = 2m:   2(p-1)(m p^(2m-1) - (p-1) sum_{j=0}^{m-3} (j+1)p^(2j+3) + 1),
    with empty sums when the upper limit is negative. Equals emax_closed.
    """
    p, s = order.p, order.s
    if s % 2:
        m = (s - 1) // 2
        inner = (m + 1) * p ** (2 * m) - (p - 1) * sum(
            (j + 1) * p ** (2 * j) for j in range(m)
        )
    else:
        m = s // 2
        inner = (
            m * p ** (2 * m - 1)
            - (p - 1) * sum((j + 1) * p ** (2 * j + 3) for j in range(m - 2))
            + 1
        )
    return 2 * (p - 1) * inner


def h_equidistant(p: int, s: int) -> Fraction:
    """Closed form of h at the gap-2 tuple, s >= 2.

    Odd s uses (0,2,...,s-3,s-1):
        ((s-1)p^(s+1) - (s+1)p^(s-1) + 2) / (2(p^2-1)^2 p^(s-1)).
    Even s uses (0,2,...,s-2,s-1):
        ((s-2)p^s - s p^(s-2) + 2) / (2(p^2-1)^2 p^(s-2))
        + (p^s - 1) / ((p^2-1) p^(s-1)).
    Must (and does, see tests) agree with h_value on those tuples.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if not isinstance(s, int) or isinstance(s, bool) or s < 2:
        raise ValueError(f"s must be an int >= 2, got {s!r}")
    sq = (p * p - 1) ** 2
    if s % 2:
        return Fraction((s - 1) * p ** (s + 1) - (s + 1) * p ** (s - 1) + 2, 2 * sq * p ** (s - 1))
    return Fraction((s - 2) * p**s - s * p ** (s - 2) + 2, 2 * sq * p ** (s - 2)) + Fraction(
        p**s - 1, (p * p - 1) * p ** (s - 1)
    )


def classify_energy(n: int, energy: int) -> str:
    """Compare an energy to the complete graph's 2(n-1).

    Returns 'hyperenergetic' (above), 'hypoenergetic' (below) or 'neither'.
    """
    threshold = 2 * (n - 1)
    if energy > threshold:
        return "hyperenergetic"
    if energy < threshold:
        return "hypoenergetic"
    return "neither"


def classify_energeticity(n: int, divisor_set: Iterable[int]) -> str:
    """classify_energy applied to the spectral energy of (n, D)."""
    return classify_energy(n, energy_general(n, divisor_set))


def koolen_moulton_check(n: int, energy: int) -> bool:
    """Whether E <= (n/2)(sqrt(n) + 1), decided in exact integer arithmetic.

    E <= (n/2)(sqrt(n)+1)  iff  t := 2E - n satisfies t <= 0 or t^2 <= n^3.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be an int >= 1, got {n!r}")
    if not isinstance(energy, int) or isinstance(energy, bool) or energy < 0:
        raise ValueError(f"energy must be an int >= 0, got {energy!r}")
    t = 2 * energy - n
    return t <= 0 or t * t <= n**3
