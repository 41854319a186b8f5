"""Brute-force references used by the tests. Deliberately naive."""

import itertools
import math


def squares_mod(m):
    return {x * x % m for x in range(m)}


def brute_legendre(a, p):
    if a % p == 0:
        return 0
    return 1 if a % p in squares_mod(p) else -1


def brute_is_prime(n):
    return n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1))


def brute_f(values, x, m):
    acc = 1 % m
    for a in values:
        acc = acc * (x * x - a) % m
    return acc


def brute_has_root(values, m):
    return any(brute_f(values, x, m) == 0 for x in range(m))


def brute_odd_square_subsets(values):
    out = []
    n = len(values)
    for k in range(1, n + 1, 2):
        for T in itertools.combinations(range(1, n + 1), k):
            prod = math.prod(values[i - 1] for i in T)
            if prod >= 0 and math.isqrt(prod) ** 2 == prod:
                out.append(T)
    return out


def squarefree_values(lo, hi):
    return [
        v for v in range(lo, hi + 1)
        if v not in (0, 1) and all(abs(v) % (p * p) for p in range(2, math.isqrt(abs(v)) + 1))
    ]
