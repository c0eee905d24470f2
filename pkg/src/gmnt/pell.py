"""Generalized Pell equations X^2 - d Y^2 = m over the integers.

Solutions fall into finitely many classes, each the orbit of one
representative under multiplication by the fundamental unit of the
order of discriminant 4d.  The solver finds class representatives with
the continued fraction of sqrt(d): one walk along the period exposes
every primitively representable value below sqrt(d) in absolute value
through the convergent norms, and the handful of instances with |m|
above sqrt(d) fall back to expanding (z + sqrt(d)) / |m| for each
square root z of d modulo |m|.  No brute-force scan over Y happens
anywhere; the bounds such a scan would need grow with the fundamental
unit and are astronomically large already for d in the hundreds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "PellInstance",
    "PellSolution",
    "cf_sqrt",
    "fundamental_unit",
    "fundamental_solutions",
    "iterate_solutions",
    "degenerate_solutions",
]

def _pair_order(s: tuple[int, int]) -> tuple[int, int, int]:
    return abs(s[0]), s[0], s[1]


@dataclass(frozen=True)
class PellInstance:
    """The equation X^2 - d Y^2 = m."""

    d: int
    m: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.m == 0:
            raise ValueError("m must be nonzero")


@dataclass(frozen=True)
class PellSolution:
    """One solution, normalized to Y >= 0."""

    x: int
    y: int

    def __post_init__(self) -> None:
        if self.y < 0:
            raise ValueError(f"y must be nonnegative, got {self.y}")


def _require_nonsquare(d: int) -> int:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    r = math.isqrt(d)
    if r * r == d:
        raise ValueError(f"d = {d} is a perfect square")
    return r


@lru_cache(maxsize=64)
def _sqrt_walk(
    d: int, wanted: frozenset[int]
) -> tuple[
    int,
    tuple[int, ...],
    tuple[int, int],
    tuple[int, int] | None,
    tuple[tuple[int, int, int], ...],
]:
    """One period of the continued fraction of sqrt(d).

    Returns (a0, period, unit, negative_unit, hits) where hits holds
    (norm, h, k) for every convergent whose norm h^2 - d k^2 has
    absolute value in wanted.  Convergent norms run over exactly the
    primitively representable values below sqrt(d), so one walk is a
    complete class search for all of them at once.
    """
    r = _require_nonsquare(d)
    hp, h = 1, r
    kp, k = 0, 1
    p, q = r, d - r * r
    period = []
    hits = []
    idx = 1
    while q != 1:
        if q in wanted:
            hits.append((-q if idx % 2 else q, h, k))
        a = (p + r) // q
        period.append(a)
        h, hp = a * h + hp, h
        k, kp = a * k + kp, k
        p = a * q - p
        q = (d - p * p) // q
        idx += 1
    period.append(p + r)
    if idx % 2 == 0:
        unit, neg = (h, k), None
    else:
        neg = (h, k)
        unit = (h * h + d * k * k, 2 * h * k)
    return r, tuple(period), unit, neg, tuple(hits)


def cf_sqrt(d: int) -> tuple[int, tuple[int, ...]]:
    """Continued fraction of sqrt(d): the integer part and the period."""
    a0, period, _, _, _ = _sqrt_walk(d, frozenset())
    return a0, period


def fundamental_unit(d: int) -> tuple[int, int]:
    """Least (u, v) with u^2 - d v^2 = 1 and v >= 1."""
    _, _, unit, _, _ = _sqrt_walk(d, frozenset())
    return unit


def _pqa_reps(d: int, mp: int, r: int) -> list[tuple[int, int]]:
    """Class representatives of X^2 - d Y^2 = mp with |mp|^2 >= d.

    Expands (z + sqrt(d)) / |mp| for every square root z of d modulo
    |mp|, collecting the convergents G, B wherever the partial
    denominator returns to +-1 across the preperiod and one full cycle.
    Hits of norm -mp are returned as raw pairs too; the caller owns the
    negative-unit adjustment.
    """
    am = abs(mp)
    out = []
    for z0 in range(am):
        if (z0 * z0 - d) % am:
            continue
        z = z0 if z0 <= am // 2 else z0 - am
        p, q = z, am
        g_pp, g_p = -z, am
        b_pp, b_p = 1, 0
        cycle_start = None
        for _ in range(100000):
            if q > 0 and p <= r < p + q and p + r >= q:
                state = (p, q)
                if cycle_start is None:
                    cycle_start = state
                elif state == cycle_start:
                    break
            a = (p + r) // q
            if q < 0 and (p + r) % q == 0:
                a -= 1
            g_pp, g_p = g_p, a * g_p + g_pp
            b_pp, b_p = b_p, a * b_p + b_pp
            p = a * q - p
            q = (d - p * p) // q
            if q == 1 or q == -1:
                out.append((g_p, b_p))
        else:
            raise RuntimeError(f"class search failed to cycle for d={d}")
    return out


def _wanted_norms(d: int, m: int) -> frozenset[int]:
    want = set()
    f = 1
    while f * f <= abs(m):
        if m % (f * f) == 0:
            mp = m // (f * f)
            if abs(mp) != 1 and mp * mp < d:
                want.add(abs(mp))
        f += 1
    return frozenset(want)


def _reduce_min_x(
    x: int, y: int, d: int, unit: tuple[int, int]
) -> tuple[int, int]:
    """Walk the unit orbit to the element of least |X|.

    |X| is unimodal along the orbit, so greedy descent terminates at
    the global minimum; the result is normalized to X, Y >= 0.
    """
    u, v = unit
    while True:
        fx, fy = x * u + y * v * d, x * v + y * u
        bx, by = x * u - y * v * d, y * u - x * v
        if abs(fx) < abs(x) or abs(bx) < abs(x):
            x, y = (fx, fy) if abs(fx) <= abs(bx) else (bx, by)
        else:
            return abs(x), abs(y)


def fundamental_solutions(d: int, m: int) -> tuple[PellSolution, ...]:
    """Minimal representatives of every solution class of X^2 - d Y^2 = m.

    Each returned solution has minimal |X| within its class and Y >= 0,
    and both signs of X are reported.  Iterating the fundamental unit
    over these representatives enumerates every solution.
    """
    if m == 0:
        raise ValueError("m must be nonzero")
    r = _require_nonsquare(d)
    _, _, unit, neg, hits = _sqrt_walk(d, _wanted_norms(d, m))
    reps: list[tuple[int, int]] = []
    f = 1
    while f * f <= abs(m):
        if m % (f * f) == 0:
            mp = m // (f * f)
            if mp == 1:
                reps.append((f, 0))
            elif mp == -1:
                if neg is not None:
                    reps.append((f * neg[0], f * neg[1]))
            elif mp * mp < d:
                for norm, h, k in hits:
                    if norm == mp:
                        reps.append((f * h, f * k))
                    elif norm == -mp and neg is not None:
                        t, w = neg
                        reps.append((f * (h * t + k * w * d), f * (h * w + k * t)))
            else:
                for h, k in _pqa_reps(d, mp, r):
                    val = h * h - d * k * k
                    if val == mp:
                        reps.append((f * h, f * k))
                    elif val == -mp and neg is not None:
                        t, w = neg
                        reps.append(
                            (f * (h * t + k * w * d), f * (h * w + k * t))
                        )
        f += 1
    core = {_reduce_min_x(x, y, d, unit) for x, y in reps}
    out = set()
    for x, y in core:
        out.add((x, y))
        out.add((-x, y))
    return tuple(
        PellSolution(x, y)
        for x, y in sorted(out, key=_pair_order)
    )


def iterate_solutions(
    d: int, m: int, limit_bits: int
) -> tuple[PellSolution, ...]:
    """Every solution of X^2 - d Y^2 = m with |X| below 2**limit_bits.

    Square d degenerates to a difference of squares with finitely many
    solutions; otherwise the class representatives are expanded along
    the fundamental unit until X leaves the window.
    """
    if limit_bits < 1:
        raise ValueError(f"limit_bits must be positive, got {limit_bits}")
    bound = 1 << limit_bits
    if d >= 1 and math.isqrt(d) ** 2 == d:
        return tuple(
            s for s in degenerate_solutions(d, m) if abs(s.x) < bound
        )
    # same wanted set as fundamental_solutions, so the walk is shared
    _, _, (u, v), _, _ = _sqrt_walk(d, _wanted_norms(d, m))
    found = set()
    seeds = set()
    for sol in fundamental_solutions(d, m):
        for sx in (1, -1):
            for sy in (1, -1):
                seeds.add((sx * sol.x, sy * sol.y))
    for x, y in seeds:
        for _ in range(limit_bits + 80):
            if abs(x) < bound:
                found.add((x, abs(y)))
            nx, ny = x * u + y * v * d, x * v + y * u
            if abs(nx) >= bound and abs(nx) >= abs(x):
                break
            x, y = nx, ny
        else:
            raise RuntimeError(f"orbit of ({x}, {y}) failed to leave the window")
    return tuple(
        PellSolution(x, y)
        for x, y in sorted(found, key=_pair_order)
    )


def degenerate_solutions(d: int, m: int) -> tuple[PellSolution, ...]:
    """All solutions of X^2 - d Y^2 = m for square d, via divisor pairs.

    With d = e^2 the equation factors as (X - eY)(X + eY) = m, so each
    divisor pair multiplying to m yields at most one solution.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    e = math.isqrt(d)
    if e * e != d:
        raise ValueError(f"d = {d} is not a perfect square")
    if m == 0:
        raise ValueError("m must be nonzero")
    divisors = set()
    f = 1
    while f * f <= abs(m):
        if m % f == 0:
            divisors.update((f, -f, abs(m) // f, -(abs(m) // f)))
        f += 1
    found = set()
    for d1 in divisors:
        d2 = m // d1
        if (d1 + d2) % 2:
            continue
        x = (d1 + d2) // 2
        num = d2 - d1
        if num % (2 * e):
            continue
        y = num // (2 * e)
        if y >= 0:
            found.add((x, y))
    return tuple(
        PellSolution(x, y)
        for x, y in sorted(found, key=_pair_order)
    )
