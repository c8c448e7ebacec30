"""trisel: bounds on 3-isogeny Selmer groups of y^2 = x^3 + a(x-b)^2 over Q(zeta_3).

The descent runs through three layers: classification of bad primes of the
curve into the sets S1/S2/S3, 3-ranks of S-class groups of the quadratic
extension L = K(sqrt(a)) computed on binary quadratic forms, and assembly of
the resulting lower/upper bounds for the psi-, dual-psi- and full 3-Selmer
groups.  See descent.analyze for the one-call entry point.
"""

from .descent import SelmerReport, analyze, classify, normalize, tamagawa  # noqa: F401
from .eisenstein import KPrime, is_local_square, is_square_in_K  # noqa: F401
from .families import (  # noqa: F401
    biquadratic_family,
    density_experiment,
    eligible_n,
    large_rank_family,
)
from .formclass import class_group, prime_form, three_rank  # noqa: F401
from .sclass import h3_S, h3_of_L, subfield_discriminants  # noqa: F401

__version__ = "0.1.0"
