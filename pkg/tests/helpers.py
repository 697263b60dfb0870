"""Shared hypothesis strategies for the test suite."""

from hypothesis import strategies as st

from icgraph import PrimePowerOrder, divisors

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@st.composite
def exponent_tuples(draw, max_s: int = 16, min_middle: int = 0):
    """(s, a) with a strictly increasing, a_1 = 0, a_r = s - 1."""
    s = draw(st.integers(min_value=2 + min_middle, max_value=max_s))
    if s > 2:
        middle = draw(
            st.sets(st.integers(min_value=1, max_value=s - 2), min_size=min_middle)
        )
    else:
        middle = set()
    return s, (0,) + tuple(sorted(middle)) + (s - 1,)


@st.composite
def order_and_tuple(draw, max_p: int = 13, max_s: int = 16, min_middle: int = 0):
    p = draw(st.sampled_from([q for q in SMALL_PRIMES if q <= max_p]))
    s, a = draw(exponent_tuples(max_s=max_s, min_middle=min_middle))
    return PrimePowerOrder(p, s), a


@st.composite
def small_order_and_tuple(draw, max_n: int = 30000):
    """Order and tuple with n = p^s small enough for spectral evaluation."""
    p = draw(st.sampled_from(SMALL_PRIMES))
    max_s = 1
    while p ** (max_s + 1) <= max_n:
        max_s += 1
    s, a = draw(exponent_tuples(max_s=max(2, max_s)))
    return PrimePowerOrder(p, s), a


@st.composite
def general_instances(draw, max_n: int = 400):
    """(n, D) with D a nonempty set of proper divisors of n."""
    n = draw(st.integers(min_value=2, max_value=max_n))
    proper = divisors(n)[:-1]
    subset = draw(st.sets(st.sampled_from(proper), min_size=1))
    return n, tuple(sorted(subset))
