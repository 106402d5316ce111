"""Exact integer primitives: floor roots, checked wide arithmetic, primality, sieves.

Everything here is pure integer arithmetic.  Floating point appears only as an
initial guess for k-th roots and is always followed by integer correction
steps, because rounding near perfect powers is a classic off-by-one source.
"""

from dataclasses import dataclass
from math import isqrt

import numpy as np

# Signed fixed-width ranges used as overflow contracts.  Python ints never
# wrap, so "overflow" here means "left the contracted range" and is raised,
# never silently absorbed.
I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1
I128_MIN = -(1 << 127)
I128_MAX = (1 << 127) - 1

U64_MAX = (1 << 64) - 1


def wide_check(value: int) -> int:
    """Return *value* unchanged if it fits a signed 128-bit word, else raise."""
    if value < I128_MIN or value > I128_MAX:
        raise OverflowError(f"value does not fit in signed 128 bits: {value}")
    return value


def wide_add(a: int, b: int) -> int:
    return wide_check(a + b)


def wide_mul(a: int, b: int) -> int:
    return wide_check(a * b)


def ikrt(n: int, k: int = 2) -> int:
    """Floor k-th root: the unique r with r**k <= n < (r+1)**k.

    Exact for any nonnegative int n (not just 64-bit) and any k >= 1.
    """
    if n < 0:
        raise ValueError("ikrt of a negative number")
    if k < 1:
        raise ValueError("root order must be >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return isqrt(n)
    if n.bit_length() <= k:
        return 1
    if n < (1 << 53):
        # float guess is within +-1 here; correct anyway
        r = int(n ** (1.0 / k))
    else:
        # Newton iteration from a power-of-two overestimate
        r = 1 << -(-n.bit_length() // k)
        while True:
            nxt = ((k - 1) * r + n // r ** (k - 1)) // k
            if nxt >= r:
                break
            r = nxt
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


# Smallest sieve-free Miller-Rabin witness set proven complete for n < 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2^64 (Miller-Rabin, fixed witnesses)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array b of length limit+1 with b[n] true iff n is prime."""
    if limit < 0:
        raise ValueError("negative sieve limit")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def primes_up_to(limit: int) -> np.ndarray:
    """Ascending int64 array of the primes <= limit."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return np.nonzero(prime_sieve(limit))[0].astype(np.int64)


@dataclass(frozen=True)
class SieveTable:
    """Smallest-prime-factor table for 2..limit (index 0 and 1 unused)."""

    limit: int
    smallest_prime_factor: np.ndarray

    def spf(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range 2..{self.limit}")
        return int(self.smallest_prime_factor[n])

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization [(p, alpha), ...] of 1 <= n <= limit."""
        if n == 1:
            return []
        out = []
        table = self.smallest_prime_factor
        while n > 1:
            p = int(table[n])
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
        return out


def sieve_smallest_factor(limit: int) -> SieveTable:
    """Build the SPF table up to limit (>= 2)."""
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    # anything still unset is prime
    rest = np.nonzero(spf[2:] == 0)[0] + 2
    spf[rest] = rest
    return SieveTable(limit=limit, smallest_prime_factor=spf)


_SEGMENT = 1 << 22


def segmented_prime_count(a: int, b: int) -> int:
    """Exact #{prime p : a <= p <= b} via a segmented sieve."""
    if a > b:
        raise ValueError("empty interval: a > b")
    lo = max(a, 2)
    if lo > b:
        return 0
    base = primes_up_to(isqrt(b))
    total = 0
    for start in range(lo, b + 1, _SEGMENT):
        stop = min(start + _SEGMENT - 1, b)
        flags = np.ones(stop - start + 1, dtype=bool)
        for p in base.tolist():
            first = max(p * p, (start + p - 1) // p * p)
            if first > stop:
                continue
            flags[first - start :: p] = False
        total += int(np.count_nonzero(flags))
    return total


def sum_int64(arr: np.ndarray) -> int:
    """Exact sum of a nonnegative int64 array (no silent int64 wrap).

    Splits each element into high/low halves so partial sums fit int64 for
    arrays of up to 2^30 elements.
    """
    total = 0
    for i in range(0, arr.size, 1 << 26):
        chunk = arr[i : i + (1 << 26)]
        lo = int(np.sum(chunk & 0x7FFFFFFF, dtype=np.int64))
        hi = int(np.sum(chunk >> 31, dtype=np.int64))
        total += (hi << 31) + lo
    return total
