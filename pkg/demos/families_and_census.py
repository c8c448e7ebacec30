"""Families with prescribed Selmer growth, plus the twist-parameter census.

The large-rank members certify dim Sel_psi >= 2n purely by counting primes:
|S3| - |S2| - 1 is a lower bound whatever the class groups do, so the family
scales to parameter sizes where no class group could be computed.
"""

from trisel import biquadratic_family, density_experiment, large_rank_family

for n in (0, 1, 2):
    members = large_rank_family(n, count=3)
    print(f"n = {n}: first members "
          + ", ".join(f"a={m.a}" for m in members)
          + f"  (certified lower bound {members[0].psi_lower_certified})")
print()

print("biquadratic family over a' = 5 (a = 80, b runs over split non-residues):")
for m in biquadratic_family(5, count=4):
    print(f"  b = {m.ell:3d}   j = {m.j_invariant}")
print()

res = density_experiment(200_000)
print(f"census to {res.bound}: {res.eligible_count} eligible twist parameters")
print(f"  predicted {res.predicted_eligible:.0f} "
      f"(alternative normalization {res.predicted_eligible_alt:.0f})")
print(f"  fraction with trivial 3-part: {res.h3_zero_fraction:.3f}")
