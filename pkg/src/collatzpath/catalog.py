"""The 47 known Mersenne prime exponents with reference path lengths.

Each row carries the measured Collatz path length D(2**n - 1) and the
rounded ratio D/n as published alongside the exponent list this package
reproduces.  Rows up to rank 31 are recomputed directly by the test suite;
the larger ones take days of compute and stand as reference data.

Also houses the primality utilities the survey sets are built from: a
deterministic Miller-Rabin below 2**64 and the Lucas-Lehmer test for
Mersenne numbers themselves.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from .errors import DomainError, RangeError

try:
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover
    _gmpy2 = None

CATALOG_SIZE = 47

# Rank 45 is misprinted as 371566673 in some circulations of this table.
# The correct exponent is 37156667: the published ratio 13.4539 matches
# 499902411 / 37156667, and 371566673 would break the strict monotonic
# growth against ranks 44 and 46.  The corrected value is authoritative;
# the misprint is kept available for reference.
RANK_45_EXPONENT_MISPRINT = 371566673

# (rank, exponent, reference_d, reference_ratio)
_ROWS = (
    (1, 2, 7, 3.5),
    (2, 3, 16, 5.33333),
    (3, 5, 106, 21.2),
    (4, 7, 46, 6.57143),
    (5, 13, 158, 12.1538),
    (6, 17, 224, 13.1765),
    (7, 19, 177, 9.31579),
    (8, 31, 450, 14.5161),
    (9, 61, 860, 14.0984),
    (10, 89, 1454, 16.3371),
    (11, 107, 1441, 13.4673),
    (12, 127, 1660, 13.0709),
    (13, 521, 6769, 12.9923),
    (14, 607, 8494, 13.9934),
    (15, 1279, 17094, 13.3651),
    (16, 2203, 29821, 13.5365),
    (17, 2281, 30734, 13.4739),
    (18, 3217, 43478, 13.5151),
    (19, 4253, 55906, 13.1451),
    (20, 4423, 60716, 13.7273),
    (21, 9689, 129608, 13.3768),
    (22, 9941, 134345, 13.5142),
    (23, 11213, 153505, 13.6899),
    (24, 19937, 265860, 13.335),
    (25, 21701, 293161, 13.5091),
    (26, 23209, 312164, 13.4501),
    (27, 44497, 598067, 13.4406),
    (28, 86243, 1158876, 13.4373),
    (29, 110503, 1482529, 13.4162),
    (30, 132049, 1771117, 13.4126),
    (31, 216091, 2906179, 13.4489),
    (32, 756839, 10197081, 13.4732),
    (33, 859433, 11568589, 13.4607),
    (34, 1257787, 16927967, 13.4585),
    (35, 1398269, 18807193, 13.4503),
    (36, 2976221, 40055567, 13.4585),
    (37, 3021377, 40663017, 13.4584),
    (38, 6972593, 93778449, 13.4496),
    (39, 13466917, 181209792, 13.4559),
    (40, 20996011, 282515044, 13.4557),
    (41, 24036583, 323346876, 13.4523),
    (42, 25964951, 349304386, 13.4529),
    (43, 30402457, 409093991, 13.456),
    (44, 32582657, 438465334, 13.457),
    (45, 37156667, 499902411, 13.4539),
    (46, 42643801, 573966881, 13.4596),
    (47, 43112609, 580260946, 13.4592),
)


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row: the k-th Mersenne prime and its reference data."""

    rank: int
    exponent: int
    reference_d: int
    reference_ratio: float


_ENTRIES = tuple(CatalogEntry(*row) for row in _ROWS)


def _as_int(value: object, name: str) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"{name} must be an integer, got {type(value).__name__}") from None


def mersenne_number(n: int) -> int:
    """2**n - 1; the result has bit length exactly n."""
    n = _as_int(n, "n")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return (1 << n) - 1


def catalog_entry(k: int) -> CatalogEntry:
    """The fixture row at rank k, 1-based."""
    k = _as_int(k, "k")
    if not 1 <= k <= CATALOG_SIZE:
        raise RangeError(f"rank must be in [1, {CATALOG_SIZE}], got {k}")
    return _ENTRIES[k - 1]


def catalog_entries() -> tuple[CatalogEntry, ...]:
    """All 47 rows in rank order."""
    return _ENTRIES


_U64_LIMIT = 1 << 64

# Witness set proven deterministic for every n < 3.3e24, far past 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64.

    Miller-Rabin over the first twelve prime bases, which is a proven
    deterministic witness set for the full 64-bit range.  Larger inputs
    raise RangeError rather than silently degrading to a probable-prime
    answer.
    """
    n = _as_int(n, "n")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n >= _U64_LIMIT:
        raise RangeError("is_prime is only deterministic below 2**64")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
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


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    n = _as_int(n, "n")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    candidate = n + 1
    if candidate <= 2:
        return 2
    candidate |= 1
    while candidate < _U64_LIMIT:
        if is_prime(candidate):
            return candidate
        candidate += 2
    raise RangeError("next prime would exceed 2**64")


def lucas_lehmer(p: int) -> bool:
    """Whether 2**p - 1 is prime, for an odd prime p.

    Runs the classic s -> s**2 - 2 recurrence from s = 4 for p - 2 rounds
    modulo 2**p - 1; the Mersenne number is prime exactly when the final
    value is 0.  Reduction never divides: (s & m) + (s >> p) folds the high
    half back in, using 2**p = 1 (mod m).
    """
    p = _as_int(p, "p")
    if not p & 1:
        raise DomainError(f"p must be an odd prime, got {p}")
    if not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    m = (1 << p) - 1
    if _gmpy2 is not None:
        m = _gmpy2.mpz(m)
        s = _gmpy2.mpz(4)
    else:
        s = 4
    for _ in range(p - 2):
        s = s * s - 2
        if s < 0:
            s += m
        s = (s & m) + (s >> p)
        while s >= m:
            s -= m
    return s == 0
