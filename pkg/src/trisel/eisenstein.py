"""Primes of K = Q(zeta_3) and local square tests for rational integers.

A rational prime ell splits in the Eisenstein integers Z[zeta_3] when
ell = 1 (mod 3), stays inert when ell = 2 (mod 3), and ramifies at ell = 3
where the unique prime is p = (1 - zeta_3) with e(p/3) = 2.

Local square criteria for a nonzero rational integer x at a K-prime q:

* split q over ell: K_q = Q_ell, so x is a square iff v_ell(x) is even and
  the unit part is a square in Z_ell^* (for ell = 2: unit = 1 mod 8);
* inert q over odd ell: the residue field is F_{ell^2}, where every element
  of F_ell^* is a square, so only even valuation is needed;
* inert q over 2: K_2 = Q_2(zeta_3) is unramified with residue field F_4 and
  mu(K_2) = mu_6; a rational unit u is a square there iff u = 1 (mod 4)
  (1 + 4 Z_2[zeta_3] consists of squares, while -1 cannot be a square since
  a square root of -1 would enlarge mu_6 to mu_12);
* ramified p: O_p^{*2} = mu_3 (1 + pi O_p) and zeta_3 = 1 (mod pi), so a
  rational unit u is a square iff u = 1 (mod 3); odd powers of 3 contribute
  the unit -1 via 3 = -zeta_3^2 (1-zeta_3)^2, whence the (-1)^{v_3} twist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .intbase import kronecker, val

__all__ = [
    "KPrime",
    "LocalSquareVerdict",
    "k_primes_above",
    "kprime_from_label",
    "val_q",
    "is_local_square",
    "is_square_in_K",
    "RAMIFIED_PRIME",
]

_KINDS = ("split", "inert", "ramified")


@dataclass(frozen=True, order=True)
class KPrime:
    """A prime of Z[zeta_3], identified by residue characteristic and kind.

    Split primes come in conjugate pairs; conjugate_index 1 and 2 follow the
    numeric order of the two roots of x^2 + x + 1 mod ell.
    """

    residue_char: int
    kind: str
    conjugate_index: int = 0

    def __post_init__(self):
        assert self.kind in _KINDS
        if self.kind == "split":
            assert self.residue_char % 3 == 1
            assert self.conjugate_index in (1, 2)
        elif self.kind == "ramified":
            assert self.residue_char == 3 and self.conjugate_index == 0
        else:
            assert self.residue_char % 3 == 2 and self.conjugate_index == 0

    @property
    def canonical_label(self):
        if self.kind == "ramified":
            return "p"
        if self.kind == "inert":
            return str(self.residue_char)
        return "%d%s" % (self.residue_char, "ab"[self.conjugate_index - 1])

    def __repr__(self):
        return f"KPrime({self.canonical_label})"


RAMIFIED_PRIME = KPrime(3, "ramified")


@dataclass(frozen=True)
class LocalSquareVerdict:
    is_square: bool
    valuation_parity: int  # K-valuation mod 2
    unit_class_witness: int  # residue that decided the unit test


def k_primes_above(ell):
    """The K-primes over a rational prime ell, split conjugates in label order."""
    if ell == 3:
        return [RAMIFIED_PRIME]
    if ell % 3 == 1:
        return [KPrime(ell, "split", 1), KPrime(ell, "split", 2)]
    return [KPrime(ell, "inert")]


def kprime_from_label(label):
    """Inverse of canonical_label ("p", "131", "7a", ...)."""
    if label == "p":
        return RAMIFIED_PRIME
    if label[-1] in "ab":
        return KPrime(int(label[:-1]), "split", 1 + "ab".index(label[-1]))
    return KPrime(int(label), "inert")


def val_q(n, q):
    """K-valuation of a nonzero rational integer at q (2*v_3 at the ramified prime)."""
    assert n != 0
    v = val(n, q.residue_char)
    return 2 * v if q.kind == "ramified" else v


def is_local_square(a, q):
    """Decide whether the rational integer a is a square in K_q."""
    assert a != 0
    ell = q.residue_char
    v = val(a, ell)
    u = a // ell**v
    if q.kind == "split":
        if ell == 2:
            w = u % 8
            ok = v % 2 == 0 and w == 1
        else:
            w = u % ell
            ok = v % 2 == 0 and kronecker(w, ell) == 1
        return LocalSquareVerdict(ok, v % 2, w)
    if q.kind == "inert":
        if ell == 2:
            w = u % 4
            return LocalSquareVerdict(v % 2 == 0 and w == 1, v % 2, w)
        return LocalSquareVerdict(v % 2 == 0, v % 2, 1)
    # ramified: the K-valuation 2v is always even, only the unit class decides
    w = u * (-1) ** v % 3
    return LocalSquareVerdict(w == 1, 0, w)


def is_square_in_K(a):
    """True iff the integer a is a square in K^* = Q(zeta_3)^*.

    K^{*2} meets Q^* exactly in Q^{*2} union -3 Q^{*2}, and for an integer a
    the twisted branch a/(-3) in Q^{*2} is equivalent to -3a being a perfect
    square (9 is already a square).
    """
    assert a != 0
    m = a if a > 0 else -3 * a
    r = math.isqrt(m)
    return r * r == m
