"""Exact integer and modular arithmetic: symbols, primality, factoring, CRT.

Python integers are unbounded, so the magnitude caps below are contract
limits rather than overflow guards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import (
    DisallowedValue,
    NonCoprimeModuli,
    NotPrime,
    NotSquareFree,
    OutOfRange,
    Overflow,
    Unfactorable,
)

MAX_INPUT = 2**40
MAX_MODULUS = 2**63
TRIAL_DIVISION_LIMIT = 2**20
RHO_ITERATIONS = 1 << 22

# Deterministic for every n < 3.3e24, which covers all moduli used here.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=64)
def primes_up_to(bound: int) -> tuple[int, ...]:
    """All primes ``<= bound`` by a plain sieve of Eratosthenes."""
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, bound + 1, i)))
    return tuple(i for i in range(bound + 1) if sieve[i])


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by the binary reciprocity loop."""
    if n <= 0 or n % 2 == 0:
        raise OutOfRange(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p): 0 if p | a, +1 for a nonzero square mod p, else -1."""
    _require_odd_prime(p)
    return jacobi(a, p)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _rho(n: int) -> int:
    """A nontrivial factor of the odd composite n (Brent's variant of Pollard rho)."""
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        steps = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            steps += r
            if steps > RHO_ITERATIONS:
                raise Unfactorable(f"rho exhausted its budget on {n}")
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise Unfactorable(f"rho found no factor of {n}")


def factorize(n: int, trial_limit: int = TRIAL_DIVISION_LIMIT) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as an ascending ``{prime: exponent}`` map.

    Trial division up to ``trial_limit``, then rho on whatever cofactor is left.
    Every returned prime is re-checked with :func:`is_prime`.
    """
    if n < 1:
        raise OutOfRange(f"cannot factor {n}")
    if n > MAX_MODULUS:
        raise Unfactorable(f"{n} exceeds the factoring budget 2^63")
    factors: dict[int, int] = {}
    rem = n
    while rem % 2 == 0:
        factors[2] = factors.get(2, 0) + 1
        rem //= 2
    d = 3 if not is_prime(rem) else trial_limit + 1
    while rem > 1 and d <= trial_limit and d * d <= rem:
        if rem % d == 0:
            while rem % d == 0:
                factors[d] = factors.get(d, 0) + 1
                rem //= d
            if is_prime(rem):
                break
        d += 2
    stack = [rem] if rem > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            factors[x] = factors.get(x, 0) + 1
            continue
        r = math.isqrt(x)
        if r * r == x:
            stack += [r, r]
            continue
        g = _rho(x)
        stack += [g, x // g]
    for p in factors:
        if not is_prime(p):
            raise Unfactorable(f"factor {p} of {n} failed the primality re-check")
    return dict(sorted(factors.items()))


@dataclass(frozen=True)
class SquareFreeInt:
    """A nonzero square-free integer other than 1, with its factorization."""

    value: int
    sign: int
    odd_primes: tuple[int, ...]
    has_factor_two: bool

    def __post_init__(self):
        rebuilt = self.sign * (2 if self.has_factor_two else 1) * math.prod(self.odd_primes)
        if rebuilt != self.value or self.value in (0, 1):
            raise DisallowedValue(f"inconsistent square-free record for {self.value}")
        if any(b <= a for a, b in zip(self.odd_primes, self.odd_primes[1:])):
            raise NotSquareFree(f"odd primes of {self.value} must be strictly increasing")

    @property
    def primes(self) -> tuple[int, ...]:
        """All primes dividing the value, ascending (2 first when present)."""
        return ((2,) if self.has_factor_two else ()) + self.odd_primes

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def make_squarefree(n: int) -> SquareFreeInt:
    if n in (0, 1):
        raise DisallowedValue(f"{n} is not allowed (values must avoid 0 and 1)")
    if abs(n) > MAX_INPUT:
        raise OutOfRange(f"|{n}| exceeds 2^40")
    factors = factorize(abs(n)) if abs(n) > 1 else {}
    for p, e in factors.items():
        if e > 1:
            raise NotSquareFree(f"{n} is divisible by {p}^2")
    return SquareFreeInt(
        value=n,
        sign=1 if n > 0 else -1,
        odd_primes=tuple(p for p in factors if p != 2),
        has_factor_two=2 in factors,
    )


@dataclass(frozen=True)
class PrimePower:
    prime: int
    exponent: int

    def __post_init__(self):
        if not is_prime(self.prime):
            raise NotPrime(f"{self.prime} is not prime")
        if self.exponent < 1:
            raise OutOfRange(f"exponent must be >= 1, got {self.exponent}")
        if (self.prime.bit_length() - 1) * self.exponent >= 64 or self.modulus > MAX_MODULUS:
            raise Overflow(f"{self.prime}^{self.exponent} exceeds 2^63")

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def __str__(self) -> str:
        return f"{self.prime}^{self.exponent}"


def crt_combine(residues: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli; returns ``(x, prod m_i)``."""
    x, m = 0, 1
    for r, mi in residues:
        if mi < 1:
            raise OutOfRange(f"modulus must be >= 1, got {mi}")
        if math.gcd(m, mi) != 1:
            raise NonCoprimeModuli(f"modulus {mi} shares a factor with {m}")
        if m * mi > MAX_MODULUS:
            raise Overflow("combined modulus exceeds 2^63")
        # x + m*t = r (mod mi)
        t = (r - x) * pow(m, -1, mi) % mi if mi > 1 else 0
        x, m = x + m * t, m * mi
    return x % m, m
