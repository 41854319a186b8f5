"""Decide whether prod (x^2 - a_i) has a root modulo every positive integer.

The verdict is either a :class:`Certificate` (an odd square subset T, a
residue witness for every odd prime dividing the product over T, and a member
congruent to 1 mod 8) or a :class:`Counterexample` listing explicit prime-power
moduli at which f has no root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

from .errors import DisallowedValue, Inconclusive, IntersectiveError, NotPrime, OutOfRange
from .family import Family, validate_family
from .ntheory import PrimePower, is_perfect_square, is_prime, legendre, make_squarefree
from .squaresubsets import (
    PRIME_SEARCH_BOUND,
    SUBSET_CAP,
    Gf2System,
    find_nonresidue_prime,
    odd_square_subsets,
    subset_indices,
)

Symbol = Callable[[int, int], int]

NO_QR_PRIME = "no_qr_prime"
ODD_PRIME = "odd_prime"
DYADIC = "dyadic"

# per-factor exponent k in the modulus p^(k*n) for each obstruction kind
OBSTRUCTION_K = {NO_QR_PRIME: 1, ODD_PRIME: 2, DYADIC: 3}


@dataclass(frozen=True)
class Check:
    """A boolean outcome carrying the reason; truthy iff ``ok``."""

    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Certificate:
    subset: tuple[int, ...]
    odd_prime_witnesses: dict[int, int]
    dyadic_witness: int


@dataclass(frozen=True)
class FactorEvidence:
    """Why x^2 = a_i has no solution modulo p^k.

    ``symbol`` is the Legendre value for odd p; ``residue`` is a_i mod 8 for p = 2.
    """

    index: int
    value: int
    rule: str
    symbol: int | None = None
    residue: int | None = None


@dataclass(frozen=True)
class Obstruction:
    kind: str
    modulus: PrimePower
    evidence: tuple[FactorEvidence, ...]

    @property
    def prime(self) -> int:
        return self.modulus.prime


@dataclass(frozen=True)
class Counterexample:
    obstructions: tuple[Obstruction, ...]
    # set when the prime search for a NoQrPrime obstruction hit its bound
    incomplete: bool = False

    @property
    def primary_index(self) -> int:
        """0-based position of the obstruction with the smallest modulus."""
        return min(range(len(self.obstructions)),
                   key=lambda i: self.obstructions[i].modulus.modulus)

    @property
    def primary(self) -> Obstruction:
        return self.obstructions[self.primary_index]


Verdict = Union[Certificate, Counterexample]


def good_odd_primes(family: Family, symbol: Symbol = legendre) -> dict[int, int | None]:
    """Map each odd prime dividing some a_i to the smallest i with (a_i/p) = +1.

    Primes without such a witness map to None ("bad" primes).
    """
    out: dict[int, int | None] = {}
    for p in family.odd_primes():
        out[p] = next((i for i, a in enumerate(family.values, 1) if symbol(a, p) == 1), None)
    return out


def dyadic_witness(family: Family) -> int | None:
    return next((i for i, a in enumerate(family.values, 1) if a % 8 == 1 and a != 1), None)


def _obstruction_modulus(p: int, k: int, n: int) -> PrimePower:
    return PrimePower(p, k * n)


def _odd_obstruction(family: Family, kind: str, p: int, symbol: Symbol) -> Obstruction:
    evidence = []
    for i, a in enumerate(family.values, 1):
        s = symbol(a, p)
        rule = "legendre_minus_one" if s == -1 else "divides_square_free"
        evidence.append(FactorEvidence(i, a, rule, symbol=s))
    return Obstruction(kind, _obstruction_modulus(p, OBSTRUCTION_K[kind], family.n), tuple(evidence))


def _dyadic_obstruction(family: Family) -> Obstruction:
    evidence = tuple(
        FactorEvidence(i, a, "not_one_mod_8", residue=a % 8)
        for i, a in enumerate(family.values, 1)
    )
    return Obstruction(DYADIC, _obstruction_modulus(2, 3, family.n), evidence)


def check_theorem1(
    family: Family, *, prime_bound: int = PRIME_SEARCH_BOUND,
    subset_cap: int = SUBSET_CAP, symbol: Symbol = legendre,
) -> Verdict:
    system = Gf2System.from_family(family)
    subsets = odd_square_subsets(family, subset_cap=subset_cap, system=system)
    goodness = good_odd_primes(family, symbol)
    bad = {p for p, w in goodness.items() if w is None}
    dyadic = dyadic_witness(family)

    # A subset qualifies iff none of its members is divisible by a bad prime;
    # every prime dividing some a_j (j in T) divides the square product.
    chosen = next(
        (T for T in subsets if not any(set(family[j].odd_primes) & bad for j in T)),
        None,
    )
    if chosen is None and system.truncated:
        # the capped enumeration may have missed a qualifying subset
        allowed = [j for j in range(1, family.n + 1) if not set(family[j].odd_primes) & bad]
        masks = Gf2System.from_members([family[j] for j in allowed]).solutions(subset_cap)
        candidates = [tuple(allowed[i - 1] for i in subset_indices(m)) for m in masks]
        chosen = min(candidates, key=lambda t: (len(t), t), default=None)
    if chosen is not None and dyadic is not None:
        primes = sorted({p for j in chosen for p in family[j].odd_primes})
        return Certificate(chosen, {p: goodness[p] for p in primes}, dyadic)

    obstructions = []
    incomplete = False
    if not subsets:
        p = find_nonresidue_prime(family, prime_bound, symbol)
        if p is None:
            incomplete = True
        else:
            obstructions.append(_odd_obstruction(family, NO_QR_PRIME, p, symbol))
    elif chosen is None:
        first = subsets[0]
        p = min(q for j in first for q in family[j].odd_primes if q in bad)
        obstructions.append(_odd_obstruction(family, ODD_PRIME, p, symbol))
    if dyadic is None:
        obstructions.append(_dyadic_obstruction(family))
    if not obstructions:
        raise Inconclusive(
            f"no odd square subset, and no all-nonresidue prime found below {prime_bound}"
        )
    return Counterexample(tuple(obstructions), incomplete)


def validate_certificate(family: Family, cert: Certificate, symbol: Symbol = legendre) -> Check:
    n = family.n
    T = tuple(cert.subset)
    if not T or any(not isinstance(j, int) or not 1 <= j <= n for j in T):
        return Check(False, "subset indices must lie in 1..n")
    if len(set(T)) != len(T):
        return Check(False, "subset has repeated indices")
    if len(T) % 2 == 0:
        return Check(False, f"subset has even cardinality {len(T)}")
    product = math.prod(family[j].value for j in T)
    if not is_perfect_square(product):
        return Check(False, f"product over subset is {product}, not a perfect square")
    primes = {p for j in T for p in family[j].odd_primes}
    keys = set(cert.odd_prime_witnesses)
    if keys != primes:
        return Check(False, f"witness primes {sorted(keys)} differ from the odd primes "
                            f"{sorted(primes)} of the subset product")
    for p, i in sorted(cert.odd_prime_witnesses.items()):
        if not isinstance(i, int) or not 1 <= i <= n:
            return Check(False, f"witness index for {p} out of range")
        if symbol(family[i].value, p) != 1:
            return Check(False, f"witness a_{i} = {family[i].value} is not a residue mod {p}")
    k = cert.dyadic_witness
    if not isinstance(k, int) or not 1 <= k <= n:
        return Check(False, "dyadic witness index out of range")
    if family[k].value % 8 != 1 or family[k].value == 1:
        return Check(False, f"dyadic witness a_{k} = {family[k].value} is not 8m+1 with m != 0")
    return Check(True, "certificate valid")


@dataclass(frozen=True)
class CorollaryReport:
    family: Family
    corollary_condition: bool
    verdict: Verdict
    conditions: dict[str, bool] = field(default_factory=dict)

    @property
    def discrepancy(self) -> bool:
        return self.corollary_condition != isinstance(self.verdict, Certificate)


def _require_odd_prime(p: int, name: str) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotPrime(f"{name} = {p} is not an odd prime")


def corollary1_check(p: int, q: int, symbol: Symbol = legendre, **kwargs) -> CorollaryReport:
    """Compare the reciprocal-residue condition for (p, q, pq) with the engine."""
    _require_odd_prime(p, "p")
    _require_odd_prime(q, "q")
    if p == q:
        raise OutOfRange(f"p and q must differ, both are {p}")
    family = validate_family((p, q, p * q))
    cond = symbol(p, q) == 1 and symbol(q, p) == 1
    return CorollaryReport(family, cond, check_theorem1(family, symbol=symbol, **kwargs),
                           {"reciprocal_residues": cond})


def corollary2_check(c: int, d: int, symbol: Symbol = legendre, **kwargs) -> CorollaryReport:
    """Compare the two listed conditions for (c, d, c1*d1) with the engine."""
    try:
        sc = make_squarefree(c)
    except IntersectiveError as exc:
        raise type(exc)(f"c: {exc}") from None
    try:
        sd = make_squarefree(d)
    except IntersectiveError as exc:
        raise type(exc)(f"d: {exc}") from None
    g = math.gcd(c, d)
    cd = (c // g) * (d // g)
    if cd in (0, 1):
        raise DisallowedValue(f"c1*d1 = {cd} is disallowed")
    if c == d:
        raise OutOfRange("c and d must differ")
    if cd in (c, d):
        raise OutOfRange(f"c1*d1 = {cd} coincides with c or d")
    family = validate_family((c, d, cd))

    def covered(primes, others):
        return all(any(symbol(o, p) == 1 for o in others) for p in primes)

    conditions = {
        "odd_primes_of_c": covered(sc.odd_primes, (d, cd)),
        "odd_primes_of_d": covered(sd.odd_primes, (c, cd)),
        "one_mod_8": any(v % 8 == 1 and v != 1 for v in (c, d, cd)),
    }
    return CorollaryReport(family, all(conditions.values()),
                           check_theorem1(family, symbol=symbol, **kwargs), conditions)

