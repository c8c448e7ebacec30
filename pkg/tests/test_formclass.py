"""Form reduction, composition, and class-group structure tests.

Oracles: naive reduced-form enumeration (independent loops in _bruteforce),
published class numbers, and invariance of classes under explicit SL2(Z)
substitutions, which is the definition of proper equivalence.
"""

import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from _bruteforce import (
    KNOWN_H_NEG,
    KNOWN_H_POS,
    naive_reduced_forms_neg,
    naive_reduced_forms_pos,
)
from trisel.formclass import (
    INERT,
    RAMIFIED,
    DiscMismatch,
    OutOfRange,
    class_group,
    class_number_table,
    compose,
    coords_mod3,
    disc,
    fundamental_discriminant,
    identity,
    inverse,
    is_fundamental,
    power_form,
    prime_form,
    reduce_form,
    three_rank,
)

FUND_NEG = [D for D in range(-3, -600, -1) if is_fundamental(D)]
FUND_POS = [D for D in range(5, 400) if is_fundamental(D)]


def sl2_apply(f, mat):
    a, b, c = f
    (p, q), (r, s) = mat
    assert p * s - q * r == 1
    return (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def random_sl2(rng, steps=6):
    mat = ((1, 0), (0, 1))
    for _ in range(steps):
        k = rng.randint(-3, 3)
        t = ((1, k), (0, 1))
        s = ((0, -1), (1, 0))
        g = t if rng.random() < 0.6 else s
        (p, q), (r, s_) = mat
        (p2, q2), (r2, s2) = g
        mat = ((p * p2 + q * r2, p * q2 + q * s2), (r * p2 + s_ * r2, r * q2 + s_ * s2))
    return mat


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


def test_reduce_spot():
    assert reduce_form((3, -1, 2)) == (2, 1, 3)
    assert reduce_form((1, 1, 6)) == (1, 1, 6)
    assert reduce_form((6, 5, 2)) == (2, -1, 3)  # disc -23, c < a path
    assert reduce_form((1, 15, -1)) == (1, 15, -1)  # disc 229, already reduced


def test_reduce_rejects_degenerate():
    with pytest.raises(ValueError):
        reduce_form((-1, 0, -1))  # negative definite
    with pytest.raises(ValueError):
        reduce_form((1, 2, 0))  # square discriminant 4
    with pytest.raises(ValueError):
        reduce_form((1, 3, 2))  # square discriminant 1


def test_reduce_is_projection_neg():
    rng = random.Random(1)
    for D in FUND_NEG[:40]:
        for f in naive_reduced_forms_neg(D):
            assert reduce_form(f) == f
            g = sl2_apply(f, random_sl2(rng))
            assert disc(g) == D
            assert reduce_form(g) == f


def test_reduce_lands_in_cycle_pos():
    rng = random.Random(2)
    for D in FUND_POS[:30]:
        cg = class_group(D)
        for f in naive_reduced_forms_pos(D):
            assert reduce_form(f) == f
            g = sl2_apply(f, random_sl2(rng))
            assert cg.canon(g) == cg.canon(f)


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------


def test_compose_spot():
    assert compose((2, 1, 3), (2, 1, 3)) == (2, -1, 3)
    assert compose((2, 1, 3), (2, -1, 3)) == (1, 1, 6)
    assert compose((1, 1, 6), (2, 1, 3)) == (2, 1, 3)


def test_compose_disc_mismatch():
    with pytest.raises(DiscMismatch):
        compose((2, 1, 3), (1, 0, 1))


def test_group_axioms_sampled():
    rng = random.Random(3)
    pool = FUND_NEG[:25] + FUND_POS[:15] + [-3299, -5027, 761]
    for D in pool:
        cg = class_group(D)
        els = cg.elements
        e = cg.one
        for _ in range(8):
            x, y, z = (rng.choice(els) for _ in range(3))
            assert cg.op(x, y) == cg.op(y, x)
            assert cg.op(cg.op(x, y), z) == cg.op(x, cg.op(y, z))
            assert cg.op(x, e) == x
            assert cg.op(x, cg.canon(inverse(x))) == e
            assert cg.pow(x, cg.order) == e


def test_power_form():
    f = (2, 1, 3)
    assert power_form(f, 0) == (1, 1, 6)
    assert power_form(f, 3) == (1, 1, 6)
    assert power_form(f, -1) == (2, -1, 3)
    assert power_form(f, 2) == power_form(f, -1)


# ---------------------------------------------------------------------------
# class numbers and structure
# ---------------------------------------------------------------------------


def test_known_class_numbers_neg():
    for D, h in KNOWN_H_NEG.items():
        assert class_group(D).order == h, D


def test_known_class_numbers_pos():
    for D, hplus in KNOWN_H_POS.items():
        assert class_group(D).order == hplus, D


def test_order_matches_naive_enumeration():
    for D in FUND_NEG[:60]:
        assert class_group(D).order == len(naive_reduced_forms_neg(D))


def test_structure_spot():
    assert class_group(-23).order == 3
    assert class_group(-23).elementary_divisors == (3,)
    assert class_group(-4).order == 1
    assert class_group(-4).elementary_divisors == ()
    assert class_group(229).order == 3
    assert class_group(-132).elementary_divisors == (2, 2)
    assert three_rank(-87) == 1
    assert three_rank(-23) == 1
    assert three_rank(-4) == 0
    assert three_rank(229) == 1
    assert three_rank(-3299) == 2  # Cl = Z/3 x Z/9, order 27


def test_structure_invariants():
    for D in FUND_NEG[:40] + FUND_POS[:20] + [-3299, -3896]:
        cg = class_group(D)
        divs = cg.elementary_divisors
        assert math.prod(divs) == cg.order
        for i in range(len(divs) - 1):
            assert divs[i + 1] % divs[i] == 0
        for g, d in zip(cg.generators, divs):
            assert cg.pow(g, d) == cg.one
            for p in {q for q in (2, 3, 5, 7, 11, 13) if d % q == 0}:
                assert cg.pow(g, d // p) != cg.one
        # basis generates everything
        from trisel.formclass import _generated

        assert len(_generated(cg, cg.generators)) == cg.order
        # 3-rank by direct cube counting
        n3 = sum(1 for x in cg.elements if cg.pow(x, 3) == cg.one)
        assert n3 == 3**cg.sylow3.rank
        assert cg.order % cg.sylow3.order == 0
        assert cg.sylow3.order == 3 ** sum(round(math.log(o, 3)) for o in cg.sylow3.part_orders)


def test_out_of_range_and_bad_disc():
    with pytest.raises(OutOfRange):
        class_group(-(10**8) - 3)
    with pytest.raises(ValueError):
        class_group(-5)  # -5 = 3 mod 4 is not a discriminant
    with pytest.raises(ValueError):
        class_group(16)  # square


# ---------------------------------------------------------------------------
# prime forms and coordinates
# ---------------------------------------------------------------------------


def test_prime_form_spot():
    assert prime_form(2, -23) == (2, 1, 3)
    assert prime_form(2, -87) == (2, 1, 11)
    assert prime_form(11, -339) == INERT
    assert prime_form(3, -87) == RAMIFIED
    assert prime_form(2, -20) == RAMIFIED
    assert prime_form(5, -39) == (5, 1, 2)
    assert prime_form(7, -39) == INERT
    assert prime_form(7, -20) == (7, 6, 2)


def test_prime_form_properties():
    from trisel.intbase import kronecker

    for D in FUND_NEG[:30] + FUND_POS[:15]:
        for ell in (2, 3, 5, 7, 11, 13):
            pf = prime_form(ell, D)
            k = kronecker(D, ell)
            if k == 1:
                assert isinstance(pf, tuple) and pf[0] == ell
                assert disc(pf) == D
                assert 0 <= pf[1] <= ell
            elif k == 0:
                assert pf == RAMIFIED
            else:
                assert pf == INERT


def test_coords_mod3():
    assert coords_mod3((1, 1, 6)) == (0,)
    assert coords_mod3((2, 1, 3)) in ((1,), (2,))
    assert coords_mod3((2, -1, 3)) != coords_mod3((2, 1, 3))
    assert coords_mod3((1, 0, 1)) == ()  # disc -4, trivial 3-part
    # additivity on a rank-2 example
    cg = class_group(-3299)
    assert cg.sylow3.rank == 2
    rng = random.Random(4)
    for _ in range(6):
        x, y = rng.choice(cg.elements), rng.choice(cg.elements)
        cx, cy, cxy = coords_mod3(x), coords_mod3(y), coords_mod3(cg.op(x, y))
        assert cxy == tuple((u + v) % 3 for u, v in zip(cx, cy))
        assert coords_mod3(cg.pow(x, 3)) == (0, 0)


# ---------------------------------------------------------------------------
# batch tables
# ---------------------------------------------------------------------------


def test_class_number_table_matches_enumeration():
    table = class_number_table(2000)
    for D in FUND_NEG:
        k = -D
        if k <= 2000:
            assert table[k] == len(naive_reduced_forms_neg(D)), D


def test_class_number_table_mod12():
    full = class_number_table(3000)
    only12 = class_number_table(3000, multiples_of_12_only=True)
    for k in range(3, 3001):
        if k % 12 == 0:
            assert only12[k] == full[k], k
        else:
            assert only12[k] == 0


# ---------------------------------------------------------------------------
# fundamental discriminants
# ---------------------------------------------------------------------------


def test_fundamental():
    assert is_fundamental(-3) and is_fundamental(-4) and is_fundamental(5)
    assert is_fundamental(-23) and is_fundamental(316) and is_fundamental(-948)
    assert not is_fundamental(-12) and not is_fundamental(25) and not is_fundamental(-18)
    assert fundamental_discriminant(-23) == -23
    assert fundamental_discriminant(79) == 316
    assert fundamental_discriminant(-3) == -3
    assert fundamental_discriminant(-6) == -24


@given(st.integers(min_value=3, max_value=500), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_class_invariant_under_sl2(k, rng):
    assume((-k) % 4 in (0, 1))
    cg = class_group(-k)
    f = rng.choice(cg.elements)
    g = sl2_apply(f, random_sl2(rng))
    assert cg.canon(g) == f
