"""3-ranks of S-class groups of L = Q(zeta_3, sqrt(a)).

For a not a square in K = Q(zeta_3), the field L = K(sqrt(a)) is biquadratic
over Q with quadratic subfields Q(sqrt(m)) and Q(sqrt(-3m)), where m is the
squarefree core of a (the third subfield K itself has trivial class group).
The 3-part of Cl(L) decomposes as the product of the 3-parts of the two
subfield class groups, so

    dim_F3 Cl(L)/3 = rank3(D1) + rank3(D2),

with D1, D2 the two fundamental discriminants.  Killing a set S of primes of
L cuts each subfield quotient by the F_3-span of the classes of the primes
below: a rational prime ell contributes the prime-form class of ell in
Cl(Di) when ell splits in that subfield, and nothing when it is inert (the
prime is principal) or ramified (the class has order dividing 2, trivial in
the 3-quotient).

Every prime of K admitted into S must have a as a local square there (that
is what makes it split in L/K); passing one that does not is an error, not a
zero contribution.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .eisenstein import KPrime, is_local_square, is_square_in_K
from .formclass import coords_mod3, fundamental_discriminant, prime_form, three_rank
from .intbase import squarefree_core

__all__ = [
    "PreconditionViolated",
    "SubfieldPair",
    "subfield_discriminants",
    "h3_of_L",
    "h3_S",
    "s_primes_in_L_count",
]


class PreconditionViolated(ValueError):
    """An argument breaks a stated hypothesis (square a, non-split prime...)."""


class SubfieldPair(NamedTuple):
    d1: int  # fundamental discriminant of Q(sqrt(m))
    d2: int  # fundamental discriminant of Q(sqrt(-3m))


def subfield_discriminants(a) -> SubfieldPair:
    """Fundamental discriminants of the two quadratic subfields of L.

    >>> subfield_discriminants(79)
    SubfieldPair(d1=316, d2=-948)
    >>> subfield_discriminants(29)
    SubfieldPair(d1=29, d2=-87)
    """
    if a == 0 or is_square_in_K(a):
        raise PreconditionViolated(f"a = {a} is a square in K; L would not be quadratic over K")
    m, _ = squarefree_core(a)
    n, _ = squarefree_core(-3 * m)
    return SubfieldPair(fundamental_discriminant(m), fundamental_discriminant(n))


def _checked(a, s_members: Iterable[KPrime]):
    out = set()
    for q in s_members:
        if not isinstance(q, KPrime):
            raise TypeError(f"expected KPrime, got {q!r}")
        if not is_local_square(a, q).is_square:
            raise PreconditionViolated(f"a = {a} is not a local square at {q}")
        out.add(q)
    return out


def _f3_rank(vectors):
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % 3), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 if rows[rank][col] % 3 == 1 else 2
        rows[rank] = [x * inv % 3 for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % 3:
                f = rows[i][col]
                rows[i] = [(x - f * y) % 3 for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def h3_of_L(a) -> int:
    """dim_F3 of Cl(L) tensor F_3, L = Q(zeta_3, sqrt(a)).

    >>> h3_of_L(29)
    1
    >>> h3_of_L(79)
    2
    """
    d1, d2 = subfield_discriminants(a)
    return three_rank(d1) + three_rank(d2)


def h3_S(a, s_members: Iterable[KPrime]) -> int:
    """dim_F3 of the S-class group Cl_S(L) tensor F_3.

    s_members are primes of K at which a is a local square; the primes of L
    above them get killed.  Conjugate split primes of K sit over the same
    rational prime and their classes span the same line, so members are
    deduplicated by residue characteristic within each subfield.
    """
    ells = sorted({q.residue_char for q in _checked(a, s_members)})
    total = 0
    for d in subfield_discriminants(a):
        r = three_rank(d)
        if r == 0:
            continue
        vecs = []
        for ell in ells:
            pf = prime_form(ell, d)
            if isinstance(pf, tuple):
                vecs.append(coords_mod3(pf))
        total += r - _f3_rank(vecs)
    return total


def s_primes_in_L_count(a, s_members: Iterable[KPrime]) -> int:
    """Number of primes of L above s_members (each splits in L/K: two each)."""
    if a == 0 or is_square_in_K(a):
        raise PreconditionViolated(f"a = {a} is a square in K")
    return 2 * len(_checked(a, s_members))
