"""Binary quadratic form class groups, narrow classes, and 3-rank drops."""

from trisel.formclass import class_group, coords_mod3, prime_form, three_rank
from trisel.sclass import h3_S, h3_of_L, subfield_discriminants
from trisel.eisenstein import k_primes_above

print("imaginary: Cl(-23) =", class_group(-23).elementary_divisors)
print("imaginary: Cl(-3299) =", class_group(-3299).elementary_divisors,
      " three_rank:", three_rank(-3299))
print("real (narrow): Cl+(229) =", class_group(229).elementary_divisors)
print()

# the quadratic field L = K(sqrt a) decomposes over the two subfields
for a in (79, 142, 2230):
    d1, d2 = subfield_discriminants(a)
    print(f"a = {a}: subfield discriminants {d1}, {d2};"
          f" ranks {three_rank(d1)} + {three_rank(d2)} = {h3_of_L(a)}")
print()

# quotienting by the classes of primes in S can lower the 3-rank; inert
# primes never do (their classes are trivial on the relevant eigenspaces)
a = 2230
for ell in (1277, 3, 7):
    s = set(k_primes_above(ell))
    print(f"a = {a}, S = primes over {ell}: h3_S = {h3_S(a, s)} (full rank {h3_of_L(a)})")

# the drop is visible on the form classes themselves
d1, _ = subfield_discriminants(a)
f = prime_form(3, d1)
print(f"norm-3 form of disc {d1}: {f}, coordinates mod cubes {coords_mod3(f)}")
