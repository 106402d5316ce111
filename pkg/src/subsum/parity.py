"""Parity of #{p in [a, b]} without enumerating the primes.

For n >= 2 the unitary divisor count 2^omega(n) is divisible by 4 unless n is
a prime power, so the interval sum T2*(b) - T2*(a-1) taken mod 4 counts prime
powers mod 2.  Subtracting the cheap j >= 2 corrections (p^j in [a, b] means
p in [a^(1/j), b^(1/j)], a short scan with a primality test) isolates the
parity of the prime count itself:

    #{p in [a,b]} = (T2*(b) - T2*(a-1)) / 2 - sum_{j>=2} #{p : p^j in [a,b]}  (mod 2)

n = 1 contributes the odd value 1 and is handled by an explicit adjustment.
"""

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .arith import ikrt, is_prime, wide_check
from .base_summatory import divisor_summatory, mobius_sieve

# Cumulative divisor counts up to this limit are cached so that the tail of
# the T2* loop (small x/d^2) becomes one vectorized gather.
_T2_TABLE_LIMIT = 1 << 18

_t2_table: np.ndarray | None = None
_mu_cache: np.ndarray | None = None


def _t2_prefix_table() -> np.ndarray:
    global _t2_table
    if _t2_table is None:
        counts = np.zeros(_T2_TABLE_LIMIT + 1, dtype=np.int64)
        for d in range(1, _T2_TABLE_LIMIT + 1):
            counts[d::d] += 1
        _t2_table = np.cumsum(counts, dtype=np.int64)
    return _t2_table


def _mu_up_to(limit: int) -> np.ndarray:
    global _mu_cache
    if _mu_cache is None or _mu_cache.shape[0] <= limit:
        _mu_cache = mobius_sieve(max(limit, 1 << 16))
    return _mu_cache


def unitary_divisor_summatory(x: int) -> int:
    """T2*(x) = sum_{n<=x} 2^omega(n), via sum_{d<=sqrt(x)} mu(d) T2(x/d^2).

    Agrees with evaluating the expression "mu@2 * tau2"; this specialized
    loop exists because the parity search hammers it at large x.
    """
    if x < 0:
        raise ValueError("negative bound")
    if x == 0:
        return 0
    r = isqrt(x)
    mu = _mu_up_to(r)
    table = _t2_prefix_table()
    d_table = isqrt(x // _T2_TABLE_LIMIT) + 1  # x // d^2 < table limit from here on
    total = 0
    for d in range(1, min(d_table, r + 1)):
        m = int(mu[d])
        if m:
            total += m * divisor_summatory(x // (d * d))
    if d_table <= r:
        ds = np.arange(d_table, r + 1, dtype=np.int64)
        mvals = mu[ds].astype(np.int64)
        args = x // (ds * ds)
        total += int(np.sum(mvals * table[args]))
    return wide_check(total)


def prime_power_counts(a: int, b: int) -> list[tuple[int, int]]:
    """For j >= 2, how many primes p have p^j in [a, b]; zero counts omitted.

    Each prime power is counted once, at its true exponent (16 shows up under
    j = 4 only, via p = 2).
    """
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    out = []
    j = 2
    while (1 << j) <= b:
        lo = max(2, ikrt(a - 1, j) + 1)
        hi = ikrt(b, j)
        count = sum(1 for n in range(lo, hi + 1) if is_prime(n))
        if count:
            out.append((j, count))
        j += 1
    return out


@dataclass(frozen=True)
class ParityReport:
    """Parity of the prime count in [a, b] plus the quantities behind it."""

    parity: int
    t2star_b: int
    t2star_a_minus_1: int
    corrections: list[tuple[int, int]] = field(default_factory=list)
    one_adjustment: int = 0


def interval_prime_parity(a: int, b: int) -> ParityReport:
    """Decide whether [a, b] contains an odd number of primes."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    t2star_b = unitary_divisor_summatory(b)
    t2star_a1 = unitary_divisor_summatory(a - 1)
    one_adjustment = 1 if a == 1 else 0
    interval = t2star_b - t2star_a1 - one_adjustment
    if interval % 2:
        # impossible while the summatories are right: every n >= 2 term is even
        raise ArithmeticError(
            f"self-check failed: T2*({b}) - T2*({a - 1}) - {one_adjustment} is odd"
        )
    corrections = prime_power_counts(a, b)
    parity = (interval % 4) // 2
    for _, count in corrections:
        parity ^= count & 1
    return ParityReport(
        parity=parity,
        t2star_b=t2star_b,
        t2star_a_minus_1=t2star_a1,
        corrections=corrections,
        one_adjustment=one_adjustment,
    )
