"""Curve families with controlled Selmer growth, and a class-number census.

The large-rank family takes products of 2n+1 distinct primes p = -1 (mod 12)
as 4a + 27 with b = 1; for such curves S2 is empty and S3 consists of the
chosen primes, so the psi-Selmer dimension is at least |S3| - |S2| - 1 = 2n
by counting alone -- no class group is ever computed, which keeps the family
usable far beyond any class-group range.

The biquadratic family fixes a squarefree a' coprime to 3 and runs b over
split primes ell with a' a non-residue, arranged so that S1 and S2 are both
empty; members sharing a j-invariant are emitted once.

The census counts n <= X eligible for the twist construction (squarefree,
n = 2, 3 mod 4, n = 2 mod 3, non-residue mod 31) and how often the class
group of discriminant -12n has trivial 3-part, against the Euler-product
prediction 31 X / (2^8 zeta(2)).
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .descent import classify, normalize, psi_psihat_gap
from .eisenstein import is_square_in_K
from .formclass import OutOfRange, class_number_table
from .intbase import is_prime, kronecker, squarefree_core
from .sclass import PreconditionViolated

__all__ = [
    "LargeRankMember",
    "BiquadraticMember",
    "DensityResult",
    "large_rank_family",
    "biquadratic_family",
    "eligible_n",
    "density_experiment",
]

MAX_CENSUS = 10**7


class LargeRankMember(NamedTuple):
    a: int
    b: int
    primes: tuple
    psi_lower_certified: int


class BiquadraticMember(NamedTuple):
    a: int
    b: int
    ell: int
    j_invariant: Fraction


class DensityResult(NamedTuple):
    bound: int
    eligible_count: int
    predicted_eligible: float
    predicted_eligible_alt: float
    h3_zero_count: int
    h3_zero_fraction: float


# ---------------------------------------------------------------------------
# large-rank family
# ---------------------------------------------------------------------------


def _extend_pool(pool, size):
    cand = pool[-1] if pool else -1
    while len(pool) < size:
        cand = cand + 12 if cand > 0 else 11
        if is_prime(cand):
            pool.append(cand)
    return pool


def _large_rank_member(primes, n):
    prod = math.prod(primes)
    assert (prod - 27) % 4 == 0
    a = (prod - 27) // 4
    params = normalize(a, 1)
    assert params == (a, 1, prod)
    assert not is_square_in_K(a) and a % 3 != 0
    ssets = classify(params)
    assert not ssets.s2
    assert sorted(q.residue_char for q in ssets.s3) == sorted(primes)
    assert all(q.kind == "inert" for q in ssets.s3)
    certified = psi_psihat_gap(ssets)  # a lower bound since h13 >= 0
    assert certified == 2 * n
    return LargeRankMember(a, 1, tuple(primes), certified)


def large_rank_family(n, count=1):
    """First `count` members (by increasing 4a + 27) with psi-Selmer
    dimension certified >= 2n, using 2n+1 prime factors each."""
    if n < 0 or count < 1:
        raise ValueError("need n >= 0 and count >= 1")
    k = 2 * n + 1
    pool = _extend_pool([], k + 1)
    start = tuple(range(k))
    heap = [(math.prod(pool[i] for i in start), start)]
    seen = {start}
    out = []
    while heap and len(out) < count:
        prod, idx = heapq.heappop(heap)
        out.append(_large_rank_member(tuple(pool[i] for i in idx), n))
        for j in range(k):
            cand = idx[:j] + (idx[j] + 1,) + idx[j + 1 :]
            if j + 1 < k and cand[j] >= idx[j + 1]:
                continue
            if cand in seen:
                continue
            seen.add(cand)
            _extend_pool(pool, cand[-1] + 2)
            heapq.heappush(heap, (prod // pool[idx[j]] * pool[idx[j] + 1], cand))
    return out


# ---------------------------------------------------------------------------
# biquadratic family
# ---------------------------------------------------------------------------


def _j_invariant(a, b):
    return Fraction(-256 * a * (a + 6 * b) ** 3, b**3 * (4 * a + 27 * b))


def biquadratic_family(a_prime, count=4):
    """First `count` members (b = ell ascending) of the family attached to
    the squarefree twist parameter a_prime, one per j-invariant."""
    if a_prime in (0, 1) or squarefree_core(a_prime)[1] != 1 or a_prime % 3 == 0:
        raise PreconditionViolated(f"a' = {a_prime} must be squarefree, not 1, and coprime to 3")
    if count < 1:
        raise ValueError("count >= 1")
    a = 16 * a_prime if a_prime % 4 == 1 else a_prime
    assert not is_square_in_K(a)
    out = []
    seen_j = set()
    ell = 3
    while len(out) < count:
        ell += 1
        if ell % 3 != 1 or not is_prime(ell) or (3 * a_prime) % ell == 0:
            continue
        if kronecker(a_prime % ell, ell) != -1:
            continue
        params = normalize(a, ell)
        assert params == (a, ell, 4 * a + 27 * ell)
        ssets = classify(params)
        assert not ssets.s1 and not ssets.s2
        j = _j_invariant(a, ell)
        if j in seen_j:
            continue
        seen_j.add(j)
        out.append(BiquadraticMember(a, ell, ell, j))
    return out


# ---------------------------------------------------------------------------
# eligibility census
# ---------------------------------------------------------------------------


def eligible_n(n):
    """Twist parameters entering the census.

    >>> eligible_n(11)
    True
    >>> eligible_n(2), eligible_n(4)
    (False, False)
    """
    if n <= 0:
        return False
    _, cof = squarefree_core(n)
    if cof != 1:
        return False
    return n % 4 in (2, 3) and n % 3 == 2 and kronecker(n, 31) == -1


def density_experiment(bound):
    """Count eligible n <= bound and how many have 3 coprime to h(-12n).

    The discriminant -12n is fundamental for every eligible n (n is
    squarefree and 2 or 3 mod 4), so the batch form count at 12n is exactly
    the class number.
    """
    bound = int(bound)
    if bound > MAX_CENSUS:
        raise OutOfRange(f"census bound {bound} exceeds {MAX_CENSUS}")
    if bound < 11:
        raise ValueError("bound too small to contain any eligible n")
    n = np.arange(bound + 1, dtype=np.int64)
    ok = ((n % 4 == 2) | (n % 4 == 3)) & (n % 3 == 2)
    kron31 = np.array([kronecker(r, 31) for r in range(31)], dtype=np.int64)
    ok &= kron31[n % 31] == -1
    p = 2
    while p * p <= bound:
        if is_prime(p):
            ok[p * p :: p * p] = False
        p += 1
    elig = np.nonzero(ok)[0]
    table = class_number_table(12 * bound, multiples_of_12_only=True)
    h = table[12 * elig]
    h3_zero = int(np.count_nonzero(h % 3 != 0))
    predicted = 31 * bound * 6 / (256 * math.pi**2)
    return DensityResult(
        bound=bound,
        eligible_count=int(elig.size),
        predicted_eligible=predicted,
        predicted_eligible_alt=predicted / 2,
        h3_zero_count=h3_zero,
        h3_zero_fraction=h3_zero / elig.size,
    )
