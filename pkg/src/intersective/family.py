"""Validated families a_1..a_n defining f(x) = prod (x^2 - a_i)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import IntersectiveError, NotDistinct, TooFew, TooMany
from .ntheory import SquareFreeInt, make_squarefree

MIN_SIZE = 3
MAX_SIZE = 24


@dataclass(frozen=True)
class Family:
    members: tuple[SquareFreeInt, ...]

    def __post_init__(self):
        if len(self.members) < MIN_SIZE:
            raise TooFew(f"family requires n >= {MIN_SIZE}, got {len(self.members)}")
        if len(self.members) > MAX_SIZE:
            raise TooMany(f"family size is capped at {MAX_SIZE}, got {len(self.members)}")
        seen = {}
        for i, a in enumerate(self.members, 1):
            if a.value in seen:
                raise NotDistinct(f"a_{seen[a.value]} and a_{i} are both {a.value}", index=i)
            seen[a.value] = i

    @cached_property
    def values(self) -> tuple[int, ...]:
        return tuple(a.value for a in self.members)

    @property
    def n(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SquareFreeInt]:
        return iter(self.members)

    def __getitem__(self, index: int) -> SquareFreeInt:
        """1-based access, matching the indexing used in every report."""
        if not 1 <= index <= len(self.members):
            raise IndexError(index)
        return self.members[index - 1]

    def odd_primes(self) -> tuple[int, ...]:
        return tuple(sorted({p for a in self.members for p in a.odd_primes}))

    def evaluate(self, x: int, m: int) -> int:
        """f(x) mod m."""
        acc = 1 % m
        for a in self.values:
            acc = acc * ((x * x - a) % m) % m
        return acc

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)


def validate_family(values: Iterable[int]) -> Family:
    values = list(values)
    if len(values) < MIN_SIZE:
        raise TooFew(f"family requires n >= {MIN_SIZE}, got {len(values)}")
    members = []
    for i, v in enumerate(values, 1):
        try:
            members.append(make_squarefree(int(v)))
        except IntersectiveError as exc:
            raise type(exc)(f"a_{i}: {exc}", index=i) from None
    return Family(tuple(members))
