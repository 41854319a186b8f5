"""Enumerate families and prime pairs and run the verdict engine over them."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator

from .certify import (
    Certificate,
    CorollaryReport,
    Verdict,
    check_theorem1,
    corollary1_check,
    dyadic_witness,
)
from .errors import Inconclusive, NotSquareFree, OutOfRange
from .family import MIN_SIZE, Family
from .ntheory import SquareFreeInt, legendre, make_squarefree, primes_up_to
from .squaresubsets import Gf2System

log = logging.getLogger(__name__)

MAX_POOL_BOUND = 10**4
VERDICTS = ("certificate", "counterexample", "all")


class LegendreCache:
    """Memoized Legendre symbols keyed by (value, prime)."""

    def __init__(self):
        self._table: dict[tuple[int, int], int] = {}

    def __call__(self, a: int, p: int) -> int:
        key = (a, p)
        s = self._table.get(key)
        if s is None:
            s = self._table.setdefault(key, legendre(a, p))
        return s

    def __len__(self):
        return len(self._table)


@dataclass(frozen=True)
class SearchQuery:
    pool_bound: int
    n: int = 3
    allow_negative: bool = False
    max_results: int = 100
    require_verdict: str = "certificate"

    def __post_init__(self):
        if not 1 <= self.pool_bound <= MAX_POOL_BOUND:
            raise OutOfRange(f"pool bound must lie in [1, {MAX_POOL_BOUND}]")
        if not MIN_SIZE <= self.n <= 8:
            raise OutOfRange(f"search family size must lie in [3, 8], got {self.n}")
        if self.max_results < 1:
            raise OutOfRange("max_results must be >= 1")
        if self.require_verdict not in VERDICTS:
            raise OutOfRange(f"verdict filter must be one of {VERDICTS}")


def enumerate_squarefree(bound: int, allow_negative: bool = False) -> list[SquareFreeInt]:
    """Square-free v not in {0, 1}, |v| <= bound; by |v|, positive before negative."""
    if bound > MAX_POOL_BOUND:
        raise OutOfRange(f"bound exceeds {MAX_POOL_BOUND}")
    out = []
    for v in range(1, bound + 1):
        for s in (v, -v) if allow_negative else (v,):
            if s == 1:
                continue
            try:
                out.append(make_squarefree(s))
            except NotSquareFree:
                pass
    return out


def search_families(
    query: SearchQuery, pool: list[SquareFreeInt] | None = None, **engine_kwargs,
) -> Iterator[tuple[Family, Verdict]]:
    if pool is None:
        pool = enumerate_squarefree(query.pool_bound, query.allow_negative)
    symbol = engine_kwargs.pop("symbol", None) or LegendreCache()
    emitted = 0
    certificates_only = query.require_verdict == "certificate"
    for combo in itertools.combinations(pool, query.n):
        family = Family(combo)
        # cheap necessary conditions; anything failing them is a counterexample
        if certificates_only and (
            dyadic_witness(family) is None
            or Gf2System.from_family(family).particular is None
        ):
            continue
        try:
            verdict = check_theorem1(family, symbol=symbol, **engine_kwargs)
        except Inconclusive as exc:
            log.warning("skipping %s: %s", family, exc)
            continue
        wanted = query.require_verdict
        if wanted != "all" and (wanted == "certificate") != isinstance(verdict, Certificate):
            continue
        yield family, verdict
        emitted += 1
        if emitted >= query.max_results:
            return


def corollary1_pairs(prime_bound: int, **engine_kwargs) -> Iterator[tuple[int, int, CorollaryReport]]:
    if prime_bound > MAX_POOL_BOUND:
        raise OutOfRange(f"prime bound exceeds {MAX_POOL_BOUND}")
    symbol = engine_kwargs.pop("symbol", None) or LegendreCache()
    primes = [p for p in primes_up_to(prime_bound) if p > 2]
    for p, q in itertools.combinations(primes, 2):
        yield p, q, corollary1_check(p, q, symbol=symbol, **engine_kwargs)
