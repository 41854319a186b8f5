"""Independent checks: exhaustive root scans and per-factor solvability rules.

Nothing here consults the verdict engine's reasoning; scans evaluate f(x) mod m
directly over every residue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certify import (
    DYADIC,
    NO_QR_PRIME,
    OBSTRUCTION_K,
    ODD_PRIME,
    Check,
    Counterexample,
    Symbol,
)
from .errors import BudgetExceeded, OutOfRange, Overflow
from .family import Family
from .ntheory import MAX_MODULUS, PrimePower, SquareFreeInt, is_prime, legendre

SCAN_BUDGET = 10**7
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ScanReport:
    modulus: int
    solvable: bool
    witness: int | None
    residues_checked: int


def has_root_mod(family: Family, m: int, budget: int = SCAN_BUDGET) -> ScanReport:
    """Scan x = 0..m-1 for f(x) = 0 (mod m); reports the smallest root."""
    if m < 1:
        raise OutOfRange(f"modulus must be >= 1, got {m}")
    if m > budget:
        raise BudgetExceeded(f"modulus {m} exceeds the scan budget {budget}")
    # residues < 10^7, so every pairwise product stays below 2^63
    coeffs = np.array([a % m for a in family.values], dtype=np.int64)
    for lo in range(0, m, _CHUNK):
        x = np.arange(lo, min(m, lo + _CHUNK), dtype=np.int64)
        sq = x * x % m
        acc = np.ones_like(x) % m
        for a in coeffs:
            acc = acc * ((sq - a) % m) % m
        hits = np.flatnonzero(acc == 0)
        if hits.size:
            w = lo + int(hits[0])
            return ScanReport(m, True, w, w + 1)
    return ScanReport(m, False, None, m)


def factor_solvable_mod_pk(a: SquareFreeInt | int, p: int, k: int) -> Check:
    """Decide x^2 = a (mod p^k) for square-free a, naming the rule used."""
    a = int(a)
    if not is_prime(p):
        raise OutOfRange(f"{p} is not prime")
    if k < 1:
        raise OutOfRange(f"exponent must be >= 1, got {k}")
    if p > 2:
        if a % p:
            s = legendre(a, p)
            return Check(s == 1, f"p does not divide a; legendre({a},{p}) = {s:+d}")
        if k == 1:
            return Check(True, f"{p} | {a}; x = 0 solves it mod {p}")
        return Check(False, f"{p} exactly divides square-free {a}; no root mod {p}^2")
    if a % 2 == 0:
        if k == 1:
            return Check(True, "a even; x = 0 solves it mod 2")
        return Check(False, f"a = {a} = 2 (mod 4); no root mod 4")
    if k == 1:
        return Check(True, "a odd; x = 1 solves it mod 2")
    if k == 2:
        return Check(a % 4 == 1, f"a = {a % 4} (mod 4); odd squares are 1 mod 4")
    return Check(a % 8 == 1, f"a = {a % 8} (mod 8); odd squares are 1 mod 8")


def lemma3_modulus(p: int, k: int, n: int) -> PrimePower:
    """p^(k n): no root of f there when no factor is solvable mod p^k."""
    if k < 1 or n < 1:
        raise OutOfRange("k and n must be >= 1")
    if (p.bit_length() - 1) * k * n >= 64 or p ** (k * n) > MAX_MODULUS:
        raise Overflow(f"{p}^{k * n} exceeds 2^63")
    return PrimePower(p, k * n)


def verify_counterexample(
    family: Family, cx: Counterexample, *, budget: int = SCAN_BUDGET,
    symbol: Symbol = legendre,
) -> Check:
    if not cx.obstructions:
        return Check(False, "no obstructions listed")
    n = family.n
    values = family.values
    scanned = []
    for ob in cx.obstructions:
        p = ob.modulus.prime
        if ob.kind not in OBSTRUCTION_K:
            return Check(False, f"unknown obstruction kind {ob.kind!r}")
        k = OBSTRUCTION_K[ob.kind]
        if ob.kind == DYADIC:
            if p != 2:
                return Check(False, f"dyadic obstruction at prime {p}")
            hit = next((i for i, a in enumerate(values, 1) if a % 8 == 1), None)
            if hit is not None:
                return Check(False, f"a_{hit} = {values[hit - 1]} is 1 mod 8")
        else:
            if p == 2:
                return Check(False, f"{ob.kind} obstruction at prime 2")
            symbols = [symbol(a, p) for a in values]
            if ob.kind == NO_QR_PRIME and any(s != -1 for s in symbols):
                return Check(False, f"not every a_i is a nonresidue modulo {p}")
            if ob.kind == ODD_PRIME:
                if all(s != 0 for s in symbols):
                    return Check(False, f"{p} divides no a_i")
                if any(s == 1 for s in symbols):
                    return Check(False, f"some a_i is a residue modulo {p}")
        for i, a in enumerate(values, 1):
            if factor_solvable_mod_pk(a, p, k):
                return Check(False, f"x^2 = a_{i} is solvable modulo {p}^{k}")
        if len(ob.evidence) != n or [e.value for e in ob.evidence] != list(values):
            return Check(False, f"evidence for {p} does not list every factor")
        expected = p ** (k * n)
        if ob.modulus.modulus != expected:
            return Check(False, f"modulus {ob.modulus.modulus} is not {p}^{k * n}")
        if expected <= budget:
            report = has_root_mod(family, expected, budget)
            if report.solvable:
                return Check(False, f"scan found root {report.witness} modulo {expected}")
            scanned.append(expected)
    note = f"; scan confirmed {scanned}" if scanned else "; moduli beyond scan budget"
    return Check(True, "all obstructions verified" + note)


def minimal_failing_modulus(family: Family, bound: int, budget: int = SCAN_BUDGET) -> int | None:
    """Smallest m <= bound at which f has no root, scanning every m in turn."""
    if bound > budget:
        raise BudgetExceeded(f"bound {bound} exceeds the scan budget {budget}")
    for m in range(1, bound + 1):
        if not has_root_mod(family, m, budget).solvable:
            return m
    return None
