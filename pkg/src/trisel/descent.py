"""Selmer-group bounds for the curves y^2 = x^3 + a(x-b)^2 over Q(zeta_3).

E_{a,b} carries a 3-isogeny psi whose kernel is generated by the points with
x = 0; it lands on the dual curve E_{-27a, d} with d = 4a + 27b, and the
dual isogeny psihat composes back to multiplication by 3.  Over K =
Q(zeta_3) the F_3-dimensions of the psi-, psihat- and 3-Selmer groups are
squeezed between 3-ranks of S-class groups of L = K(sqrt(a)), where S is
assembled from the bad primes.

Bad primes with a a local square are sorted into three disjoint sets:
members of S2 see the Tamagawa number of the curve exceed that of the dual
by a factor 3, members of S3 the reverse, and members of S1 have equal
local contributions on both sides but pick up unramified cohomology in L.
The classification is by explicit valuation conditions on a, b and d; primes
where a is not a local square never enter (they do not split in L/K and
contribute nothing).

Everything here works with exact integers; no floating point enters any
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .eisenstein import (
    RAMIFIED_PRIME,
    is_local_square,
    is_square_in_K,
    k_primes_above,
    val_q,
)
from .intbase import factorize, sqrtmod, val
from .sclass import h3_S, s_primes_in_L_count

__all__ = [
    "DegenerateCurve",
    "BadReductionPrime",
    "NotApplicable",
    "CurveParams",
    "SSets",
    "TamagawaEntry",
    "SelmerReport",
    "normalize",
    "dual_params",
    "classify",
    "tamagawa",
    "psi_psihat_gap",
    "psi_bounds",
    "psihat_bounds",
    "sel3_bounds",
    "root_number",
    "analyze",
    "ec_add",
    "ec_neg",
    "ec_mul",
    "is_point_on",
    "random_point",
    "apply_isogeny",
]


class DegenerateCurve(ValueError):
    """a, b, or 4a + 27b vanishes: the equation is not an elliptic curve."""


class BadReductionPrime(ValueError):
    """Reduction mod ell requested at a prime of bad reduction (or ell | 6)."""


class NotApplicable(ValueError):
    """The requested invariant is not defined under the given hypotheses."""


class CurveParams(NamedTuple):
    a: int
    b: int
    d: int  # always 4a + 27b


class SSets(NamedTuple):
    s1: frozenset
    s2: frozenset
    s3: frozenset
    rules: dict  # KPrime -> short tag naming the admitting condition


class TamagawaEntry(NamedTuple):
    c_curve: int | None
    c_dual: int | None
    note: str  # empty when both numbers are known


# ---------------------------------------------------------------------------
# models of the curves
# ---------------------------------------------------------------------------


def normalize(a, b):
    """Minimal model (a, b, d) of the K-isomorphism class of y^2 = x^3 + a(x-b)^2.

    Scaling (a, b) by c^2 and by -3 (a square in K) gives isomorphic curves
    over K; both are divided out.  The result never has a common square
    factor in (a, b) nor 3 dividing both.
    """
    if a == 0 or b == 0 or 4 * a + 27 * b == 0:
        raise DegenerateCurve(f"(a, b) = ({a}, {b}) does not give an elliptic curve")
    while True:
        _, c = _square_part(math.gcd(a, b))
        if c > 1:
            a //= c * c
            b //= c * c
            continue
        if a % 3 == 0 and b % 3 == 0:
            a, b = -(a // 3), -(b // 3)
            continue
        break
    return CurveParams(a, b, 4 * a + 27 * b)


def _square_part(n):
    from .intbase import squarefree_core

    core, c = squarefree_core(n)
    return core, c


def dual_params(params):
    """Parameters of the isogenous curve (not renormalized: the maps below
    are literal formulas between these two models)."""
    a, b, d = params
    return CurveParams(-27 * a, d, 729 * b)


def _wcoeffs(params):
    a, b, _ = params
    return a, -2 * a * b, a * b * b


# ---------------------------------------------------------------------------
# bad-prime classification
# ---------------------------------------------------------------------------


def _candidate_primes(params):
    a, b, d = params
    rats = {2, 3}
    for n in (a, b, d):
        rats.update(factorize(n).primes())
    out = []
    for ell in sorted(rats):
        out.extend(k_primes_above(ell))
    return out


def classify(params):
    """The three S-sets of K-primes, with the admitting rule for each member.

    Disjoint by construction; every member has a as a local square (and so
    splits in L = K(sqrt(a))).
    """
    a, b, d = params
    s1, s2, s3 = set(), set(), set()
    rules = {}
    for q in _candidate_primes(params):
        if not is_local_square(a, q).is_square:
            continue
        ell = q.residue_char
        if q.kind == "ramified":
            va, vb, vd = val_q(a, q), val_q(b, q), val_q(d, q)
            if va > 0 and not (va == 6 and vd >= 12):
                s1.add(q)
                rules[q] = "S1:triadic"
            elif vb > 0 and va == 0:
                s2.add(q)
                rules[q] = "S2:triadic"
            elif vd > 12:
                s3.add(q)
                rules[q] = "S3:triadic"
        elif ell == 2 and a % 2 != 0:
            v2b = val(b, 2)
            if v2b < 2:
                s1.add(q)
                rules[q] = "S1:dyadic"
            elif v2b == 2:
                s3.add(q)
                rules[q] = "S3:dyadic"
            else:
                s2.add(q)
                rules[q] = "S2:dyadic"
        else:
            va, vb, vd = val(a, ell), val(b, ell), val(d, ell)
            if va > 0:
                if val_q(4 * a * b * b, q) % 6 != 0:
                    s1.add(q)
                    rules[q] = "S1:order-valuation"
            elif vb > 0:
                s2.add(q)
                rules[q] = "S2:divides-b"
            elif vd > 0:
                s3.add(q)
                rules[q] = "S3:divides-d"
    return SSets(frozenset(s1), frozenset(s2), frozenset(s3), rules)


def tamagawa(params):
    """Tamagawa numbers (c_E, c_dual) at every candidate bad prime of K.

    Entries with None record cases the valuation table does not decide
    (non-split local behaviour, even a at 2, or 3 | a); the note says which.
    """
    a, b, d = params
    out = {}
    for q in _candidate_primes(params):
        ell = q.residue_char
        if q.kind == "ramified":
            if a % 3 == 0:
                out[q] = TamagawaEntry(None, None, "additive reduction with 3 | a is not tabulated")
            elif b % 3 == 0:
                if is_local_square(a, q).is_square:
                    vpb = val_q(b, q)
                    out[q] = TamagawaEntry(3 * vpb, vpb, "")
                else:
                    out[q] = TamagawaEntry(2, 2, "")
            else:
                out[q] = TamagawaEntry(1, 1, "")
            continue
        if ell == 2 and a % 2 == 0:
            out[q] = TamagawaEntry(None, None, "even a: the dyadic table requires odd a")
            continue
        bad = ell == 2 or (a * b * d) % ell == 0
        if not bad:
            out[q] = TamagawaEntry(1, 1, "")
            continue
        if not is_local_square(a, q).is_square:
            out[q] = TamagawaEntry(None, None, "a is not a local square here")
            continue
        if ell == 2:
            v2b, v2d = val(b, 2), val(d, 2)
            if v2b < 2:
                out[q] = TamagawaEntry(3, 3, "")
            elif v2b == 2:
                out[q] = TamagawaEntry(v2d - 2, 3 * (v2d - 2), "")
            else:
                out[q] = TamagawaEntry(3 * (v2b - 2), v2b - 2, "")
            continue
        va = val(a, ell)
        if va > 0:
            t = val_q(4 * a * b * b, q) % 6
            out[q] = TamagawaEntry(1, 1, "") if t == 0 else TamagawaEntry(3, 3, "")
        elif b % ell == 0:
            vb = val_q(b, q)
            out[q] = TamagawaEntry(3 * vb, vb, "")
        elif d % ell == 0:
            vd = val_q(d, q)
            out[q] = TamagawaEntry(vd, 3 * vd, "")
        else:
            out[q] = TamagawaEntry(1, 1, "")
    return out


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def psi_psihat_gap(ssets):
    """dim Sel_psi - dim Sel_psihat, an exact quantity when 3 does not divide a."""
    return len(ssets.s3) - len(ssets.s2) - 1


def _class_data(a, ssets):
    s12 = ssets.s1 | ssets.s2
    s13 = ssets.s1 | ssets.s3
    return (
        h3_S(a, s12),
        h3_S(a, s13),
        s_primes_in_L_count(a, s12),
        s_primes_in_L_count(a, s13),
    )


def psi_bounds(params, ssets):
    """Provable (lower, upper) for dim_F3 of the psi-Selmer group."""
    a = params.a
    if is_square_in_K(a):
        return (0, len(ssets.s1 | ssets.s3) + 1)
    h12, h13, sl12, sl13 = _class_data(a, ssets)
    if a % 3 == 0:
        return (h12, h13 + sl13 + 2)
    gap = psi_psihat_gap(ssets)
    lower = max(h12, h13 + gap, 0)
    upper = min(h12 + sl12 + gap + 2, h13 + sl13 + 2)
    return (lower, upper)


def psihat_bounds(params, ssets):
    """Provable (lower, upper) for dim_F3 of the psihat-Selmer group."""
    a = params.a
    if is_square_in_K(a):
        return (0, len(ssets.s1 | ssets.s2) + 1)
    h12, h13, sl12, sl13 = _class_data(a, ssets)
    return (h13, h12 + sl12 + 2)


def _dual_route(ssets):
    """Whether the 3-Selmer upper bound routes psihat through the dual model.

    Both routes are theorems (the containment argument applies verbatim to
    the dual curve, whose S-sets are S1, S3, S2 in that order and whose
    field L is the same); which one is sharper depends on the shape of the
    S-sets, and these two shapes are the ones where the dual reading is the
    published choice.
    """
    s1, s2, s3 = ssets.s1, ssets.s2, ssets.s3
    return (RAMIFIED_PRIME in s2 and not s3) or (bool(s1) and not s2 and bool(s3))


def sel3_bounds(params, ssets, rank=None):
    """Provable (lower, upper) for dim_F3 of the full 3-Selmer group."""
    rlo = _rank_tuple(rank)[0] if rank is not None else 0
    a = params.a
    if is_square_in_K(a):
        up = len(ssets.s1 | ssets.s2) + len(ssets.s1 | ssets.s3) + 2
        return (max(rlo, 0), up)
    h12, h13, sl12, sl13 = _class_data(a, ssets)
    psi_lo, psi_hi = psi_bounds(params, ssets)
    basic = h12 + sl12 + 2
    dual = h13 + sl13 + 2
    route = dual if (a % 3 != 0 and _dual_route(ssets)) else basic
    return (max(h12, rlo, 0), psi_hi + route)


def root_number(params, ssets):
    """Global root number (-1)^(|S2| + |S3| + 1); needs 3 coprime to a and
    a nonsquare in K."""
    if is_square_in_K(params.a):
        raise NotApplicable("a is a square in K")
    if params.a % 3 == 0:
        raise NotApplicable("3 divides a")
    return (-1) ** (len(ssets.s2) + len(ssets.s3) + 1)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _rank_tuple(rank):
    if rank is None:
        return None
    if isinstance(rank, int):
        rank = (rank, rank)
    lo, hi = int(rank[0]), int(rank[1])
    if lo < 0 or hi < lo:
        raise ValueError(f"bad rank interval {rank}")
    return (lo, hi)


def _labels(s):
    return tuple(q.canonical_label for q in sorted(s))


@dataclass(frozen=True)
class SelmerReport:
    params: CurveParams
    a_square_in_K: bool
    ssets: dict  # {"S1": (label, ...), "S2": ..., "S3": ...}
    h12: int | None
    h13: int | None
    sL12: int | None
    sL13: int | None
    psi_lower: int
    psi_upper: int
    psihat_lower: int
    psihat_upper: int
    sel3_lower: int
    sel3_upper: int
    sel3_upper_coarse: int
    root_number: int | None
    rank_input: tuple | None
    theorem_trace: tuple

    def to_dict(self):
        d = {
            "a": self.params.a,
            "b": self.params.b,
            "d": self.params.d,
            "a_square_in_K": self.a_square_in_K,
            "ssets": {k: list(v) for k, v in self.ssets.items()},
            "h12": self.h12,
            "h13": self.h13,
            "sL12": self.sL12,
            "sL13": self.sL13,
            "psi_lower": self.psi_lower,
            "psi_upper": self.psi_upper,
            "psihat_lower": self.psihat_lower,
            "psihat_upper": self.psihat_upper,
            "sel3_lower": self.sel3_lower,
            "sel3_upper": self.sel3_upper,
            "sel3_upper_coarse": self.sel3_upper_coarse,
            "root_number": self.root_number,
            "rank_input": list(self.rank_input) if self.rank_input is not None else None,
            "theorem_trace": list(self.theorem_trace),
        }
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(
            params=CurveParams(d["a"], d["b"], d["d"]),
            a_square_in_K=d["a_square_in_K"],
            ssets={k: tuple(v) for k, v in d["ssets"].items()},
            h12=d["h12"],
            h13=d["h13"],
            sL12=d["sL12"],
            sL13=d["sL13"],
            psi_lower=d["psi_lower"],
            psi_upper=d["psi_upper"],
            psihat_lower=d["psihat_lower"],
            psihat_upper=d["psihat_upper"],
            sel3_lower=d["sel3_lower"],
            sel3_upper=d["sel3_upper"],
            sel3_upper_coarse=d["sel3_upper_coarse"],
            root_number=d["root_number"],
            rank_input=tuple(d["rank_input"]) if d["rank_input"] is not None else None,
            theorem_trace=tuple(d["theorem_trace"]),
        )


def analyze(a, b, rank=None):
    """Full report for y^2 = x^3 + a(x-b)^2: S-sets, class data, all bounds.

    rank, if given (an integer or an (lo, hi) interval of the Mordell-Weil
    rank over K), only sharpens the 3-Selmer lower bound.
    """
    params = normalize(a, b)
    ssets = classify(params)
    asq = is_square_in_K(params.a)
    ranktup = _rank_tuple(rank)
    trace = ["a:square-in-K" if asq else "a:nonsquare"]
    psi_lo, psi_hi = psi_bounds(params, ssets)
    psihat_lo, psihat_hi = psihat_bounds(params, ssets)
    sel_lo, sel_hi = sel3_bounds(params, ssets, ranktup)
    if asq:
        h12 = h13 = sl12 = sl13 = None
        coarse = sel_hi
        root = None
        trace += ["psi:square-case", "psihat:square-case", "sel3:square-case", "root:not-applicable"]
    else:
        h12, h13, sl12, sl13 = _class_data(params.a, ssets)
        coarse = h12 + h13 + sl12 + sl13 + 4
        trace.append("psi:refined" if params.a % 3 != 0 else "psi:containment-only")
        trace.append("psihat:containment")
        if params.a % 3 != 0 and _dual_route(ssets):
            trace.append("sel3:psihat-dual-containment")
        else:
            trace.append("sel3:psihat-basic-containment")
        try:
            root = root_number(params, ssets)
            trace.append("root:defined")
        except NotApplicable:
            root = None
            trace.append("root:not-applicable")
    return SelmerReport(
        params=params,
        a_square_in_K=asq,
        ssets={
            "S1": _labels(ssets.s1),
            "S2": _labels(ssets.s2),
            "S3": _labels(ssets.s3),
        },
        h12=h12,
        h13=h13,
        sL12=sl12,
        sL13=sl13,
        psi_lower=psi_lo,
        psi_upper=psi_hi,
        psihat_lower=psihat_lo,
        psihat_upper=psihat_hi,
        sel3_lower=sel_lo,
        sel3_upper=sel_hi,
        sel3_upper_coarse=coarse,
        root_number=root,
        rank_input=ranktup,
        theorem_trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# point arithmetic mod ell and the isogeny pair
# ---------------------------------------------------------------------------


def is_point_on(params, pt, ell):
    if pt is None:
        return True
    A, B, C = _wcoeffs(params)
    x, y = pt
    return (y * y - (x * x * x + A * x * x + B * x + C)) % ell == 0


def ec_neg(pt, ell):
    return None if pt is None else (pt[0], (-pt[1]) % ell)


def ec_add(params, p1, p2, ell):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    A, B, _ = _wcoeffs(params)
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if (y1 + y2) % ell == 0:
            return None
        lam = (3 * x1 * x1 + 2 * A * x1 + B) * pow(2 * y1, -1, ell) % ell
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, ell) % ell
    x3 = (lam * lam - A - x1 - x2) % ell
    y3 = (lam * (x1 - x3) - y1) % ell
    return (x3, y3)


def ec_mul(params, pt, n, ell):
    if n < 0:
        pt, n = ec_neg(pt, ell), -n
    acc = None
    while n:
        if n & 1:
            acc = ec_add(params, acc, pt, ell)
        pt = ec_add(params, pt, pt, ell)
        n >>= 1
    return acc


def random_point(params, ell, rng):
    """A uniformish affine point of E_{a,b}(F_ell); ell must be good."""
    _check_good(params, ell)
    A, B, C = _wcoeffs(params)
    while True:
        x = rng.randrange(ell)
        rhs = (x * x * x + A * x * x + B * x + C) % ell
        r = sqrtmod(rhs, ell)
        if r < 0:
            continue
        y = r if rng.random() < 0.5 else (-r) % ell
        return (x, y)


def _check_good(params, ell):
    a, b, d = params
    if ell in (2, 3) or (a * b * d) % ell == 0:
        raise BadReductionPrime(f"ell = {ell} is not a prime of good reduction")


def apply_isogeny(params, pt, ell, which="psi"):
    """Image of pt under the 3-isogeny (which="psi", from E_{a,b} to its
    dual) or under the dual isogeny (which="psihat", from the dual back).

    Points in the kernel (x = 0) map to None, the point at infinity.
    """
    a, b, d = params
    _check_good(params, ell)
    if pt is None:
        return None
    x, y = pt
    if x % ell == 0:
        return None
    xi = pow(x, -1, ell)
    if which == "psi":
        X = (9 * x * x * x + 12 * a * x * x - 36 * a * b * x + 36 * a * b * b) * xi * xi
        Y = 27 * y * (x * x * x + 4 * a * b * x - 8 * a * b * b) * xi * xi * xi
    elif which == "psihat":
        i81 = pow(81, -1, ell)
        X = (x * x * x - 36 * a * x * x + 108 * a * d * x - 108 * a * d * d) * xi * xi * i81
        Y = y * (x * x * x - 108 * a * d * x + 216 * a * d * d) * xi * xi * xi * i81 * pow(9, -1, ell)
    else:
        raise ValueError(f"unknown isogeny {which!r}")
    return (X % ell, Y % ell)
