"""Binary quadratic forms: reduction, composition, class groups, 3-ranks.

Forms are integer triples (a, b, c) of discriminant D = b^2 - 4ac.  For
D < 0 we work with positive definite reduced representatives (unique per
class); for nonsquare D > 0 classes of the narrow (form) class group are the
rho-cycles of reduced indefinite forms, and a class is represented by the
lexicographically smallest form of its cycle.  The narrow group has the same
odd part as the ordinary class group, so all 3-rank computations downstream
are unaffected by the narrow convention.

Only primitive forms are enumerated.  Group structure is read off the full
element list: the partition of each Sylow subgroup comes from counting
elements of order dividing p^k, and explicit basis forms are extracted
greedily.  Everything is cached per discriminant.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .intbase import kronecker, sqrtmod, val, xgcd

__all__ = [
    "OutOfRange",
    "DiscMismatch",
    "INERT",
    "RAMIFIED",
    "ClassGroup",
    "Sylow3",
    "disc",
    "identity",
    "inverse",
    "is_fundamental",
    "fundamental_discriminant",
    "reduce_form",
    "compose",
    "power_form",
    "prime_form",
    "class_group",
    "three_rank",
    "coords_mod3",
    "class_number_table",
]

MAX_DISC = int(os.environ.get("TRISEL_MAX_DISC", 10**8))

INERT = "inert"
RAMIFIED = "ramified"


class OutOfRange(Exception):
    """Discriminant or search bound outside the configured range."""


class DiscMismatch(ValueError):
    """Composition of forms with different discriminants."""


def disc(f):
    a, b, c = f
    return b * b - 4 * a * c


def identity(D):
    """The principal form of discriminant D."""
    if D % 4 == 0:
        return (1, 0, -D // 4)
    return (1, 1, (1 - D) // 4)


def inverse(f):
    a, b, c = f
    return (a, -b, c)


def is_fundamental(D):
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n):
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def fundamental_discriminant(m):
    """Discriminant of Q(sqrt(m)) for squarefree m != 0, 1."""
    assert m not in (0, 1) and _squarefree(m)
    return m if m % 4 == 1 else 4 * m


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


def _is_reduced_neg(a, b, c):
    if not (-a < b <= a <= c):
        return False
    return b >= 0 if a == c else True


def _is_reduced_pos(a, b, c, D):
    # |sqrt(D) - 2|a|| < b < sqrt(D), integer-exact for nonsquare D
    if b <= 0:
        return False
    t = 2 * abs(a)
    if (t + b) ** 2 <= D:
        return False
    if b * b >= D:
        return False
    return t <= b or (t - b) ** 2 < D


def _rho_pos(f, D, rD):
    """One step of the reduction / cycle operator for indefinite forms."""
    a, b, c = f
    ac = abs(c)
    bp = (-b) % (2 * ac)
    if ac > rD:
        if bp > ac:
            bp -= 2 * ac
    else:
        bp += ((rD - bp) // (2 * ac)) * 2 * ac
    return (c, bp, (bp * bp - D) // (4 * c))


def reduce_form(f):
    """The reduced form equivalent to f (canonical for D < 0)."""
    a, b, c = f
    D = b * b - 4 * a * c
    if D < 0:
        if a <= 0:
            raise ValueError("positive definite forms only for D < 0")
        while not _is_reduced_neg(a, b, c):
            if c < a:
                a, b, c = c, -b, a
                continue
            if b > a or b <= -a:
                b = b % (2 * a)
                if b > a:
                    b -= 2 * a
                c = (b * b - D) // (4 * a)
                continue
            b = -b  # boundary cases (a == c, b < 0) and b == -a
        return (a, b, c)
    if D == 0 or math.isqrt(D) ** 2 == D:
        raise ValueError("degenerate (square) discriminant")
    rD = math.isqrt(D)
    g = (a, b, c)
    for _ in range(10 * (a.bit_length() + c.bit_length() + D.bit_length()) + 64):
        if _is_reduced_pos(*g, D):
            return g
        g = _rho_pos(g, D, rD)
    raise AssertionError(f"reduction did not terminate on {f}")


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------


def compose(f1, f2):
    """Gauss composition (reduced output; some cycle member for D > 0)."""
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    D = b1 * b1 - 4 * a1 * c1
    if b2 * b2 - 4 * a2 * c2 != D:
        raise DiscMismatch(f"{f1} vs {f2}")
    if a1 == 1:
        return reduce_form(f2)
    if a2 == 1:
        return reduce_form(f1)
    s = (b1 + b2) // 2
    d1, u1, v1 = xgcd(a1, a2)
    d, u2, v2 = xgcd(d1, s)
    a3 = a1 * a2 // (d * d)
    num = u2 * u1 * a1 * b2 + u2 * v1 * a2 * b1 + v2 * (b1 * b2 + D) // 2
    assert num % d == 0
    b3 = num // d % (2 * a3)
    assert (b3 * b3 - D) % (4 * a3) == 0
    return reduce_form((a3, b3, (b3 * b3 - D) // (4 * a3)))


def power_form(f, n):
    """n-th power of the class of f, n any integer."""
    D = disc(f)
    if n < 0:
        f, n = inverse(f), -n
    g = reduce_form(identity(D))
    h = reduce_form(f)
    while n > 0:
        if n & 1:
            g = compose(g, h)
        h = compose(h, h)
        n >>= 1
    return g


# ---------------------------------------------------------------------------
# prime forms
# ---------------------------------------------------------------------------


def prime_form(ell, D):
    """Form (ell, b, c) for a degree-1 prime over ell, else INERT/RAMIFIED.

    b is the minimal nonnegative solution of b^2 = D (mod 4 ell).  Assumes D
    is fundamental (no conductor at ell).
    """
    k = kronecker(D, ell)
    if k == 0:
        return RAMIFIED
    if k == -1:
        return INERT
    if ell == 2:
        return (2, 1, (1 - D) // 8)
    r = sqrtmod(D % ell, ell)
    # exactly one of r, ell - r matches the parity of D (their sum is odd)
    b = r if (r - D) % 2 == 0 else ell - r
    return (ell, b, (b * b - D) // (4 * ell))


# ---------------------------------------------------------------------------
# enumeration of reduced primitive forms
# ---------------------------------------------------------------------------


def _reduced_forms_neg(D):
    out = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        b = np.arange(-a + 1, a + 1, dtype=np.int64)
        num = b * b - D
        mask = num % (4 * a) == 0
        if not mask.any():
            continue
        bs = b[mask]
        cs = num[mask] // (4 * a)
        keep = (cs > a) | ((cs == a) & (bs >= 0))
        for bi, ci in zip(bs[keep].tolist(), cs[keep].tolist()):
            if math.gcd(math.gcd(a, bi), ci) == 1:
                out.append((a, bi, ci))
    return out


def _reduced_forms_pos(D):
    out = []
    rD = math.isqrt(D)
    for b in range(2 - (D % 2), rD + 1, 2):
        M = (D - b * b) // 4  # = -ac > 0
        d = 1
        while d * d <= M:
            if M % d == 0:
                for a in {d, M // d}:
                    t = 2 * a
                    if (t + b) ** 2 > D and (t <= b or (t - b) ** 2 < D):
                        c = -(M // a)
                        if math.gcd(math.gcd(a, b), c) == 1:
                            out.append((a, b, c))
                            out.append((-a, b, -c))
            d += 1
    return out


def _cycle_partition(forms, D):
    """Map each reduced indefinite form to the minimum of its rho-cycle."""
    rD = math.isqrt(D)
    pool = set(forms)
    canon = {}
    for f in sorted(pool):
        if f in canon:
            continue
        cyc = [f]
        g = _rho_pos(f, D, rD)
        while g != f:
            assert g in pool, ("rho left the reduced set", f, g)
            cyc.append(g)
            g = _rho_pos(g, D, rD)
        rep = min(cyc)
        for x in cyc:
            canon[x] = rep
    return canon


# ---------------------------------------------------------------------------
# class group structure
# ---------------------------------------------------------------------------


@dataclass
class Sylow3:
    order: int
    rank: int
    basis: tuple  # forms of orders 3^lam_1 >= 3^lam_2 >= ...
    part_orders: tuple  # (3^lam_1, ...)


@dataclass
class ClassGroup:
    disc: int
    order: int
    elementary_divisors: tuple  # ascending divisor chain d1 | d2 | ...
    generators: tuple  # one form per elementary divisor
    sylow3: Sylow3
    elements: tuple = field(repr=False)
    _canon: dict = field(repr=False, default=None, compare=False)

    def canon(self, f):
        g = reduce_form(f)
        return self._canon[g] if self._canon is not None else g

    def op(self, f, g):
        return self.canon(compose(f, g))

    def pow(self, f, n):
        return self.canon(power_form(f, n % self.order))

    @property
    def one(self):
        return self.canon(identity(self.disc))


_CACHE = {}


def class_group(D):
    """The (narrow, for D > 0) form class group of discriminant D."""
    if D in _CACHE:
        return _CACHE[D]
    if D % 4 not in (0, 1) or D == 0:
        raise ValueError(f"{D} is not a discriminant")
    if abs(D) > MAX_DISC:
        raise OutOfRange(f"|{D}| exceeds the class-group bound {MAX_DISC}")
    if D < 0:
        elements = sorted(_reduced_forms_neg(D))
        canon = None
    else:
        if math.isqrt(D) ** 2 == D:
            raise ValueError("degenerate (square) discriminant")
        canon = _cycle_partition(_reduced_forms_pos(D), D)
        elements = sorted(set(canon.values()))
    cg = ClassGroup(
        disc=D,
        order=len(elements),
        elementary_divisors=(),
        generators=(),
        sylow3=Sylow3(1, 0, (), ()),
        elements=tuple(elements),
        _canon=canon,
    )
    _structure(cg)
    _CACHE[D] = cg
    return cg


def _generated(cg, gens):
    seen = {cg.one}
    frontier = [cg.one]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = cg.op(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _structure(cg):
    h = cg.order
    per_prime = {}  # p -> (partition desc, basis forms)
    n = h
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            per_prime[p] = _p_structure(cg, p)
        p += 1
    if n > 1:
        per_prime[n] = _p_structure(cg, n)
    width = max((len(lam) for lam, _ in per_prime.values()), default=0)
    divisors, gens = [], []
    for j in range(width):
        d, g = 1, cg.one
        for p, (lam, basis) in per_prime.items():
            if j < len(lam):
                d *= p ** lam[j]
                g = cg.op(g, basis[j])
        divisors.append(d)
        gens.append(g)
    cg.elementary_divisors = tuple(reversed(divisors))  # ascending chain
    cg.generators = tuple(reversed(gens))
    if 3 in per_prime:
        lam, basis = per_prime[3]
        cg.sylow3 = Sylow3(3 ** sum(lam), len(lam), tuple(basis), tuple(3**k for k in lam))
    assert math.prod(cg.elementary_divisors) == h


def _p_structure(cg, p):
    """Partition (descending) and a basis of the p-Sylow subgroup."""
    h = cg.order
    e = val(h, p)
    cof = h // p**e
    syl = sorted({cg.pow(x, cof) for x in cg.elements})
    assert len(syl) == p**e
    # lambda from the order-counting filtration
    ranks = []
    prev = 1
    k = 1
    while prev < len(syl):
        nk = sum(1 for x in syl if cg.pow(x, p**k) == cg.one)
        ranks.append(round(math.log(nk / prev, p)))
        prev = nk
        k += 1
    # ranks is the conjugate partition: lam_j = #{k : ranks[k] >= j}
    lam = [sum(1 for r in ranks if r >= j) for j in range(1, (ranks[0] if ranks else 0) + 1)]
    # greedy basis extraction
    basis = []
    sub = {cg.one}
    for part in lam:
        o = p**part
        for x in syl:
            if cg.pow(x, o) != cg.one or cg.pow(x, o // p) == cg.one:
                continue
            closure = _generated(cg, basis + [x])
            if len(closure) == len(sub) * o:
                basis.append(x)
                sub = closure
                break
        else:
            raise AssertionError(f"no basis element of order {o} in disc {cg.disc}")
    return lam, basis


def three_rank(D):
    """dim_F3 of Cl(D) tensor F_3."""
    return class_group(D).sylow3.rank


_COORD_CACHE = {}


def coords_mod3(f):
    """Coordinates of the class of f in Cl(D) tensor F_3, basis from sylow3."""
    D = disc(f)
    cg = class_group(D)
    s3 = cg.sylow3
    if s3.rank == 0:
        return ()
    if D not in _COORD_CACHE:
        syl = _generated(cg, s3.basis)
        cubes = frozenset(cg.pow(x, 3) for x in syl)
        _COORD_CACHE[D] = cubes
    cubes = _COORD_CACHE[D]
    y = cg.pow(cg.canon(f), cg.order // s3.order)
    for vec in product(range(3), repeat=s3.rank):
        z = y
        for g, o, e in zip(s3.basis, s3.part_orders, vec):
            if e:
                z = cg.op(z, cg.pow(g, o - e))
        if z in cubes:
            return vec
    raise AssertionError(f"coordinates not found for {f}")


# ---------------------------------------------------------------------------
# batch class numbers for negative discriminants
# ---------------------------------------------------------------------------


def class_number_table(max_abs_disc, multiples_of_12_only=False):
    """counts[k] = number of reduced forms of discriminant -k for k <= bound.

    No primitivity filter is applied, so entries are only class numbers at
    fundamental discriminants (imprimitive forms cannot be fundamental:
    g^2 | D with g > 1 forces D/4 = 0 or 1 mod 4).  With
    multiples_of_12_only, only the entries at k = 0 (mod 12) are populated,
    which cuts the work by ~6x; other entries are zero.
    """
    N = int(max_abs_disc)
    if N > 2 * MAX_DISC:
        raise OutOfRange(f"table bound {N} too large")
    counts = np.zeros(N + 1, dtype=np.int32)
    amax = math.isqrt(N // 3)
    for a in range(1, amax + 1):
        step = 4 * a
        for b in range(0, a + 1):
            if multiples_of_12_only and b % 2:
                continue
            weight = 2 if 0 < b < a else 1
            # c = a boundary: one form for each b in [0, a]
            k = 4 * a * a - b * b
            if k <= N and (not multiples_of_12_only or k % 12 == 0):
                counts[k] += 1
            # c > a: arithmetic progression k = 4ac - b^2 over c = a+1, a+2, ...
            if not multiples_of_12_only:
                k0 = 4 * a * (a + 1) - b * b
                if k0 <= N:
                    counts[k0::step] += weight
            elif a % 3 != 0:
                # with b even, 12 | k forces c = a*b^2 (mod 3)
                t = a * b * b % 3
                c0 = a + 1 + (t - a - 1) % 3
                k0 = 4 * a * c0 - b * b
                if k0 <= N:
                    counts[k0 :: 3 * step] += weight
            elif b % 3 == 0:
                # 3 | a and 3 | b: every c works
                k0 = 4 * a * (a + 1) - b * b
                if k0 <= N:
                    counts[k0::step] += weight
    return counts
