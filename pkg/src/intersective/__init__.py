"""Roots modulo every integer for products of quadratics x^2 - a_i."""

from .certify import (
    Certificate,
    Check,
    Counterexample,
    Obstruction,
    check_theorem1,
    corollary1_check,
    corollary2_check,
    good_odd_primes,
    validate_certificate,
)
from .family import Family, validate_family
from .lifting import RootWitness, hensel_lift, lift_dyadic, root_mod, root_mod_prime_power, sqrt_mod_p
from .ntheory import (
    PrimePower,
    SquareFreeInt,
    crt_combine,
    is_perfect_square,
    jacobi,
    legendre,
    make_squarefree,
)
from .oracle import (
    factor_solvable_mod_pk,
    has_root_mod,
    lemma3_modulus,
    minimal_failing_modulus,
    verify_counterexample,
)
from .squaresubsets import exponent_vector, find_nonresidue_prime, odd_square_subsets

__version__ = "0.1.0"
