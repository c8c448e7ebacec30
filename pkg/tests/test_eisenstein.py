import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisel.eisenstein import (
    RAMIFIED_PRIME,
    KPrime,
    is_local_square,
    is_square_in_K,
    k_primes_above,
    kprime_from_label,
    val_q,
)
from trisel.intbase import val

from _bruteforce import local_square_bruteforce

INERT2 = KPrime(2, "inert")


def test_k_primes_above():
    assert k_primes_above(3) == [RAMIFIED_PRIME]
    assert k_primes_above(2) == [INERT2]
    assert k_primes_above(5) == [KPrime(5, "inert")]
    pair = k_primes_above(7)
    assert [q.canonical_label for q in pair] == ["7a", "7b"]
    assert [q.canonical_label for q in k_primes_above(4409)] == ["4409"]
    assert [q.canonical_label for q in k_primes_above(2749)] == ["2749a", "2749b"]


def test_labels_roundtrip():
    for ell in (2, 3, 5, 7, 13, 131, 1277):
        for q in k_primes_above(ell):
            assert kprime_from_label(q.canonical_label) == q


def test_val_q():
    assert val_q(9, RAMIFIED_PRIME) == 4
    assert val_q(48, INERT2) == 4
    assert val_q(7, KPrime(7, "split", 1)) == 1
    assert val_q(5, RAMIFIED_PRIME) == 0


def test_local_square_spot():
    # spec-level anchors for the unit criteria
    assert is_local_square(137, INERT2).is_square  # 137 = 1 mod 4
    assert not is_local_square(137, RAMIFIED_PRIME).is_square  # 137 = 2 mod 3
    assert is_local_square(2230, RAMIFIED_PRIME).is_square  # 2230 = 1 mod 3
    assert is_local_square(25, KPrime(7, "split", 1)).is_square
    assert not is_local_square(-4, INERT2).is_square  # unit -1 = 3 mod 4
    assert is_local_square(-3, RAMIFIED_PRIME).is_square  # -3 = unit * pi^2
    assert not is_local_square(3, RAMIFIED_PRIME).is_square
    v = is_local_square(12, KPrime(5, "inert"))
    assert v.is_square and v.valuation_parity == 0


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 13])
def test_local_square_matches_residue_rings(ell):
    vmax = max(val(n, ell) for n in range(1, 501))
    for q in k_primes_above(ell):
        for a in range(-500, 501):
            if a == 0:
                continue
            got = is_local_square(a, q).is_square
            want = local_square_bruteforce(a, q, vmax)
            assert got == want, (a, q)


@given(st.integers(-(10**6), 10**6).filter(bool), st.sampled_from([2, 3, 5, 7, 13, 31]))
@settings(max_examples=300)
def test_local_square_invariant_under_square_scaling(a, ell):
    for q in k_primes_above(ell):
        base = is_local_square(a, q).is_square
        for c in (2, 3, 10):
            assert is_local_square(a * c * c, q).is_square == base


def test_is_square_in_K():
    assert is_square_in_K(-27)
    assert is_square_in_K(-3)
    assert is_square_in_K(4)
    assert is_square_in_K(-12)  # -3 * 2^2
    assert not is_square_in_K(79)
    assert not is_square_in_K(-4)
    assert not is_square_in_K(3)
    assert not is_square_in_K(2230)


@given(st.integers(-(10**4), 10**4).filter(bool))
def test_square_in_K_implies_locally_square_everywhere(a):
    if not is_square_in_K(a):
        return
    for ell in (2, 3, 5, 7, 11, 13, 31, 43):
        for q in k_primes_above(ell):
            assert is_local_square(a, q).is_square
