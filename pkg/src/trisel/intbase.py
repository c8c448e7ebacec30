"""Integer arithmetic helpers: primality, factorization, Kronecker symbols.

Everything here is deterministic.  Primality testing uses the Miller-Rabin
test with a fixed witness set that is known to be exact for all inputs below
3.3 * 10**24, far beyond anything the rest of the package feeds it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Unfactorable",
    "Factorization",
    "is_prime",
    "factorize",
    "val",
    "squarefree_core",
    "kronecker",
    "sqrtmod",
    "xgcd",
]

# Exact for n < 3_317_044_064_679_887_385_961_981 (Sorenson & Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 10**6


class Unfactorable(Exception):
    """Raised when the factorization loop makes no progress."""


def _miller_rabin_witness(n, a):
    # returns True if a witnesses compositeness of n
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n):
    """True iff n is prime.

    >>> is_prime(4409)
    True
    >>> [p for p in range(20) if is_prime(p)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    return not any(_miller_rabin_witness(n, a) for a in _MR_WITNESSES)


def _pollard_rho(n):
    # Brent's cycle-finding variant; n odd composite, not a prime power check
    # is left to the caller loop.
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise Unfactorable(f"rho failed on {n}")


@dataclass(frozen=True)
class Factorization:
    """Sign and sorted prime powers of a nonzero integer."""

    n: int
    sign: int
    powers: tuple  # ((p, e), ...) with p ascending

    def primes(self):
        return [p for p, _ in self.powers]

    def val(self, p):
        for q, e in self.powers:
            if q == p:
                return e
        return 0


def factorize(n):
    """Factor a nonzero integer.

    >>> factorize(11891).powers
    ((11, 1), (23, 1), (47, 1))
    """
    if n == 0:
        raise ValueError("0 has no factorization")
    sign = 1 if n > 0 else -1
    m = abs(n)
    powers = {}
    for p in (2, 3, 5):
        while m % p == 0:
            powers[p] = powers.get(p, 0) + 1
            m //= p
    # wheel over 6k+-1
    q = 7
    step = 4
    while q * q <= m and q < _TRIAL_BOUND:
        while m % q == 0:
            powers[q] = powers.get(q, 0) + 1
            m //= q
        q += step
        step = 6 - step
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            powers[m] = powers.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(n=n, sign=sign, powers=tuple(sorted(powers.items())))


def val(n, p):
    """p-adic valuation of a nonzero integer n."""
    assert n != 0
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_core(n):
    """Write n = core * cofactor**2 with core squarefree (sign on core).

    >>> squarefree_core(80)
    (5, 4)
    >>> squarefree_core(-12)
    (-3, 2)
    """
    f = factorize(n)
    core, cof = f.sign, 1
    for p, e in f.powers:
        if e % 2:
            core *= p
        cof *= p ** (e // 2)
    return core, cof


def kronecker(a, n):
    """Kronecker symbol (a|n), defined for all integers.

    >>> kronecker(-3, 11)
    -1
    >>> kronecker(2, 31)
    1
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # pull out the even part of n; (a|2) depends on a mod 8
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and abs(a) % 8 in (3, 5):
            sign = -sign
    a %= n
    # quadratic reciprocity loop on odd n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def sqrtmod(a, p):
    """A square root of a modulo an odd prime p, or -1 if none (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return -1
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p-1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def xgcd(a, b):
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0
