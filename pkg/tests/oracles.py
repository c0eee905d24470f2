"""Independent brute-force reference implementations for the test suite.

Everything here trades speed for obvious correctness: trial division,
exhaustive residue scans, and bounded enumeration of Pell solutions by
walking Y upward.  The production code must agree with these on every
range they can cover.
"""

from __future__ import annotations

import math


def trial_division_is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def exhaustive_sqrt_mod(a: int, q: int) -> int | None:
    """Smallest square root of a modulo q by scanning all residues."""
    a %= q
    roots = [r for r in range(q) if r * r % q == a]
    return min(roots) if roots else None


def exhaustive_squarefree_split(m: int) -> tuple[int, int]:
    """m = d * y**2 with d squarefree, by full factorization."""
    d, y = 1, 1
    rem = m
    f = 2
    while f * f <= rem:
        e = 0
        while rem % f == 0:
            rem //= f
            e += 1
        if e % 2:
            d *= f
        y *= f ** (e // 2)
        f += 1
    return d * rem, y


def pell_solutions_up_to(
    d: int, m: int, x_bound: int
) -> set[tuple[int, int]]:
    """All (X, Y) with X^2 - d Y^2 = m, |X| <= x_bound, Y >= 0.

    Walks Y upward until d * Y^2 > x_bound^2 - m can no longer admit a
    solution, testing X^2 = m + d Y^2 for being a perfect square.
    """
    found: set[tuple[int, int]] = set()
    y = 0
    while True:
        rhs = m + d * y * y
        if rhs > x_bound * x_bound:
            break
        if rhs >= 0:
            x = math.isqrt(rhs)
            if x * x == rhs:
                found.add((x, y))
                if x:
                    found.add((-x, y))
        y += 1
    return found


def smallest_unit(d: int, v_cap: int = 10**6) -> tuple[int, int] | None:
    """Least (u, v) with u^2 - d v^2 = 1, v >= 1, by scanning v.

    Returns None when no unit exists with v <= v_cap; callers treat
    that as "too large to confirm by brute force", not as absence.
    """
    for v in range(1, v_cap + 1):
        usq = 1 + d * v * v
        u = math.isqrt(usq)
        if u * u == usq:
            return u, v
    return None
