"""Odd-cardinality subsets with a perfect-square product, via GF(2) elimination.

Each member a_i becomes a parity vector over (sign, odd primes..., 2). A subset
T has square product iff its vectors sum to zero; requiring an odd number of
chosen members adds one affine equation (sum of choices = 1). The solution set
is a coset of the kernel, which is enumerated up to ``subset_cap`` elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import BasisMissingPrime
from .family import Family
from .ntheory import SquareFreeInt, is_perfect_square, legendre, primes_up_to

SIGN = "sign"
SUBSET_CAP = 1 << 20
PRIME_SEARCH_BOUND = 10**6


def exponent_vector(a: SquareFreeInt, basis: Sequence) -> tuple[int, ...]:
    missing = [p for p in a.primes if p not in basis]
    if missing or SIGN not in basis:
        raise BasisMissingPrime(f"basis {tuple(basis)} lacks coordinates for {a.value}")
    primes = set(a.primes)
    return tuple(
        int(a.sign < 0) if c == SIGN else int(c in primes)
        for c in basis
    )


@dataclass
class Gf2System:
    basis: tuple
    rows: tuple[tuple[int, ...], ...]
    # Solved form: one particular solution and a kernel basis, as bitmasks over
    # member positions (bit i = member i+1). particular is None if inconsistent.
    particular: int | None = None
    kernel: list[int] = field(default_factory=list)
    truncated: bool = False

    @classmethod
    def from_family(cls, family: Family) -> "Gf2System":
        return cls.from_members(tuple(family))

    @classmethod
    def from_members(cls, members: Sequence[SquareFreeInt]) -> "Gf2System":
        odd = sorted({p for a in members for p in a.odd_primes})
        basis = (SIGN, *odd, 2)
        system = cls(basis, tuple(exponent_vector(a, basis) for a in members))
        system._solve()
        return system

    @property
    def n(self) -> int:
        return len(self.rows)

    def _solve(self) -> None:
        n = self.n
        # Each equation: (mask over members, rhs). One per coordinate, plus parity.
        equations = []
        for c in range(len(self.basis)):
            mask = sum(1 << i for i, row in enumerate(self.rows) if row[c])
            equations.append((mask, 0))
        equations.append(((1 << n) - 1, 1))

        pivots: list[tuple[int, int, int]] = []  # (pivot column, mask, rhs)
        for mask, rhs in equations:
            for col, pmask, prhs in pivots:
                if mask >> col & 1:
                    mask ^= pmask
                    rhs ^= prhs
            if mask == 0:
                if rhs:
                    self.particular = None
                    self.kernel = []
                    return
                continue
            col = (mask & -mask).bit_length() - 1
            # keep reduced form: clear the new pivot column from earlier rows
            pivots = [
                (c, m ^ mask, r ^ rhs) if m >> col & 1 else (c, m, r)
                for c, m, r in pivots
            ]
            pivots.append((col, mask, rhs))

        pivot_cols = {c for c, _, _ in pivots}
        self.particular = sum(1 << c for c, _, r in pivots if r)
        self.kernel = []
        for free in range(n):
            if free in pivot_cols:
                continue
            vec = 1 << free
            for c, m, _ in pivots:
                if m >> free & 1:
                    vec |= 1 << c
            self.kernel.append(vec)

    def solutions(self, cap: int = SUBSET_CAP) -> list[int]:
        """Coset elements as bitmasks, in Gray-code order, at most ``cap`` of them."""
        if self.particular is None:
            self.truncated = False
            return []
        k = len(self.kernel)
        total = 1 << k
        self.truncated = total > cap
        out = [self.particular]
        current = self.particular
        for step in range(1, min(total, cap)):
            current ^= self.kernel[(step & -step).bit_length() - 1]
            out.append(current)
        return out


def subset_indices(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def odd_square_subsets(
    family: Family, limit: int = SUBSET_CAP, *, subset_cap: int = SUBSET_CAP,
    system: Gf2System | None = None,
) -> list[tuple[int, ...]]:
    """Odd-size index subsets (1-based) whose product is a perfect square.

    Ordered by size, then lexicographically; at most ``limit`` are returned.
    """
    if system is None:
        system = Gf2System.from_family(family)
    found = sorted((subset_indices(mask) for mask in system.solutions(subset_cap)),
                   key=lambda t: (len(t), t))
    values = family.values
    out = []
    for subset in found:
        if len(subset) % 2 == 0 or not is_perfect_square(math.prod(values[i - 1] for i in subset)):
            raise AssertionError(f"GF(2) solver produced a bad subset {subset}")
        out.append(subset)
        if len(out) >= limit:
            break
    return out


def find_nonresidue_prime(
    family: Family, search_bound: int = PRIME_SEARCH_BOUND,
    symbol: Callable[[int, int], int] = legendre,
) -> int | None:
    """Smallest odd prime p <= search_bound, coprime to every a_i, with all (a_i/p) = -1."""
    values = family.values
    chunk_lo, chunk_hi = 3, min(search_bound, 1 << 12)
    while chunk_lo <= search_bound:
        for p in primes_up_to(chunk_hi):
            if p < chunk_lo:
                continue
            if all(symbol(a, p) == -1 for a in values):
                return p
        chunk_lo, chunk_hi = chunk_hi + 1, min(search_bound, chunk_hi * 4)
    return None
