"""Walk through the descent bounds for a few curves y^2 = x^3 + a(x-b)^2.

Each report classifies the bad primes of Q(zeta_3) into the sets S1/S2/S3,
pulls 3-ranks of S-class groups of K(sqrt a) off binary quadratic forms, and
assembles dimension bounds for the two 3-isogeny Selmer groups and the full
3-Selmer group.
"""

import json

from trisel import analyze

CURVES = [
    (79, 131),   # S2 = {131}: the isogeny bounds close to a width-2 window
    (137, 143),  # three nonempty sets at once
    (142, 12),   # the ramified prime above 3 lands in S2
    (4, 1),      # a is a square in K: only containment bounds apply
    (3, 3),      # 3 | a after normalization is impossible; this rescales
]

for a, b in CURVES:
    rep = analyze(a, b)
    p = rep.params
    print(f"=== a={a}, b={b}" + (f"  (normalized to {p.a}, {p.b})" if (p.a, p.b) != (a, b) else ""))
    for name in ("S1", "S2", "S3"):
        print(f"  {name} = {{{', '.join(rep.ssets[name])}}}")
    if rep.h12 is not None:
        print(f"  h12={rep.h12} h13={rep.h13} (S-class 3-ranks), "
              f"sL12={rep.sL12} sL13={rep.sL13} (S-primes in L)")
    print(f"  Sel_psi    : [{rep.psi_lower}, {rep.psi_upper}]")
    print(f"  Sel_psihat : [{rep.psihat_lower}, {rep.psihat_upper}]")
    print(f"  Sel_3      : [{rep.sel3_lower}, {rep.sel3_upper}]")
    print(f"  trace      : {' / '.join(rep.theorem_trace)}")
    print()

# reports serialize losslessly
rep = analyze(79, 131, rank=(0, 2))
blob = json.dumps(rep.to_dict())
assert type(rep).from_dict(json.loads(blob)) == rep
print("JSON round-trip of the (79,131) report:", len(blob), "bytes")
