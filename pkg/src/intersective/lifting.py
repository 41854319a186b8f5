"""Constructing roots of f modulo any m for a certified family.

Local roots come from Tonelli-Shanks plus Hensel lifting at odd primes and a
stepwise 2-adic lift at p = 2; CRT glues them together.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certify import Certificate, Symbol, validate_certificate
from .errors import InvalidCertificate, NonResidue, NotOneMod8, OutOfRange, Overflow, PreconditionViolated
from .family import Family
from .ntheory import MAX_MODULUS, PrimePower, crt_combine, factorize, legendre


def sqrt_mod_p(a: int, p: int) -> int:
    """The smaller square root of a modulo the odd prime p, i.e. min(r, p - r)."""
    if legendre(a, p) != 1:
        raise NonResidue(f"{a} is not a nonzero square modulo {p}")
    a %= p
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def hensel_lift(a: int, p: int, root: int, b: int) -> int:
    """Lift root (root^2 = a mod p) to the unique r = root (mod p) with r^2 = a (mod p^b)."""
    if a % p == 0 or (root * root - a) % p:
        raise PreconditionViolated(f"cannot lift {root} for a={a} at p={p}")
    if b < 1:
        raise OutOfRange(f"exponent must be >= 1, got {b}")
    r, pk = root % p, p
    for _ in range(b - 1):
        pk *= p
        # Newton step r <- r - (r^2 - a) / (2r) modulo the next power
        r = (r - (r * r - a) * pow(2 * r, -1, pk)) % pk
    return r


def lift_dyadic(a: int, b: int) -> int:
    """The smallest r >= 1 with r^2 = a (mod 2^b), for a = 1 (mod 8)."""
    if a % 8 != 1:
        raise NotOneMod8(f"{a} is {a % 8} mod 8, not 1")
    if b < 1:
        raise OutOfRange(f"exponent must be >= 1, got {b}")
    if b > 63:
        raise Overflow(f"2^{b} exceeds 2^63")
    if b <= 3:
        return 1
    r = 1
    for k in range(3, b):
        # r^2 = a (mod 2^k); fix the next bit
        if (r * r - a) % (1 << (k + 1)):
            r += 1 << (k - 1)
    m = 1 << b
    half = m >> 1
    return min(r % m, -r % m, (r + half) % m, (-r + half) % m)


@dataclass(frozen=True)
class LocalRoot:
    prime: int
    exponent: int
    index: int
    root: int

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent


@dataclass(frozen=True)
class RootWitness:
    root: int
    modulus: int
    components: tuple[LocalRoot, ...]


def _local_root(family: Family, cert: Certificate, pp: PrimePower, symbol: Symbol) -> LocalRoot:
    p, e, m = pp.prime, pp.exponent, pp.modulus
    if p == 2:
        i = cert.dyadic_witness
        return LocalRoot(p, e, i, lift_dyadic(family[i].value, e))
    if p in cert.odd_prime_witnesses:
        i = cert.odd_prime_witnesses[p]
    else:
        # p does not divide the square product over T, whose symbols multiply to
        # +1 over an odd number of factors, so some member of T is a residue.
        i = next((j for j in cert.subset if symbol(family[j].value, p) == 1), None)
        if i is None:
            raise InvalidCertificate(f"no member of T is a residue modulo {p}")
    a = family[i].value
    r = hensel_lift(a, p, sqrt_mod_p(a, p), e)
    return LocalRoot(p, e, i, min(r, m - r))


def _require_valid(family: Family, cert: Certificate, symbol: Symbol) -> None:
    check = validate_certificate(family, cert, symbol)
    if not check:
        raise InvalidCertificate(check.reason)


def root_mod_prime_power(
    family: Family, cert: Certificate, pp: PrimePower, symbol: Symbol = legendre,
) -> tuple[int, int]:
    """A root of f modulo p^e and the 1-based index of the factor it solves."""
    _require_valid(family, cert, symbol)
    local = _local_root(family, cert, pp, symbol)
    return local.root, local.index


def root_mod(family: Family, cert: Certificate, m: int, symbol: Symbol = legendre) -> RootWitness:
    if not 1 <= m <= MAX_MODULUS:
        raise OutOfRange(f"modulus must lie in [1, 2^63], got {m}")
    _require_valid(family, cert, symbol)
    components = tuple(
        _local_root(family, cert, PrimePower(p, e), symbol)
        for p, e in factorize(m).items()
    )
    root, _ = crt_combine((c.root, c.modulus) for c in components)
    if family.evaluate(root, m) != 0:
        # the certificate route is guaranteed; a miss here is a defect, not bad luck
        raise AssertionError(f"constructed root {root} fails f(x) = 0 mod {m}")
    return RootWitness(root, m, components)
