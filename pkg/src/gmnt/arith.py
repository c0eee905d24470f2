"""Integer and modular arithmetic helpers.

Everything in here is exact: no floats, no probabilistic answers below
2**64.  Primality above that line is Baillie-PSW strengthened with a
handful of deterministic-seeded Miller-Rabin rounds, which is as good as
it gets without a proof object.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

__all__ = [
    "Residue",
    "mod_pow",
    "jacobi",
    "is_prime",
    "is_perfect_square",
    "sqrt_mod",
    "squarefree_split",
]


@dataclass(frozen=True)
class Residue:
    """A value reduced modulo a positive modulus."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise ValueError(
                f"value {self.value} not reduced modulo {self.modulus}"
            )

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


def mod_pow(base: int, exponent: int, modulus: int) -> Residue:
    """base**exponent mod modulus, as a Residue."""
    if modulus < 2:
        raise ValueError(f"modulus must be at least 2, got {modulus}")
    if exponent < 0:
        raise ValueError(f"exponent must be nonnegative, got {exponent}")
    return Residue(pow(base, exponent, modulus), modulus)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)

# Smallest composite strong pseudoprime to the first k prime bases, so
# each (bound, bases) row is a deterministic test below its bound.
_MR_TIERS = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (1 << 64, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)


def _mr_witness(n: int, base: int) -> bool:
    """True if base proves n composite."""
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _strong_lucas(n: int) -> bool:
    """Strong Lucas test with Selfridge parameters; True means probable prime.

    Assumes n is odd, n > 2, not a perfect square and has no factor
    below 100.
    """
    d = 5
    while jacobi(d % n, n) != -1:
        d = -(d + 2) if d > 0 else -(d - 2)
    # P = 1, Q = (1 - d) / 4
    q = (1 - d) // 4
    # n + 1 = s * 2**r with s odd
    s = n + 1
    r = 0
    while s % 2 == 0:
        s //= 2
        r += 1
    # Compute U_s, V_s by the binary chain on the bits of s.
    u, v, qk = 1, 1, q % n
    for bit in bin(s)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = u + v, v + d * u
            # n is odd, so exactly one of x, x + n is even
            u = (u + n if u % 2 else u) // 2 % n
            v = (v + n if v % 2 else v) // 2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(r - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(m: int) -> bool:
    """Deterministic below 2**64, Baillie-PSW plus seeded rounds above."""
    if m < 2:
        return False
    for p in _SMALL_PRIMES:
        if m % p == 0:
            return m == p
    if m < 1 << 64:
        for bound, bases in _MR_TIERS:
            if m < bound:
                return not any(_mr_witness(m, b) for b in bases)
    if _mr_witness(m, 2):
        return False
    if is_perfect_square(m):
        return False
    if not _strong_lucas(m):
        return False
    rng = random.Random(m)
    return not any(
        _mr_witness(m, rng.randrange(3, m - 1)) for _ in range(16)
    )


def sqrt_mod(a: int, q: int) -> Residue | None:
    """Smaller square root of a modulo an odd prime q, or None.

    Returns the root r with r <= q - r so results are reproducible.
    """
    if q == 2 or not is_prime(q):
        raise ValueError(f"modulus must be an odd prime, got {q}")
    a %= q
    if a == 0:
        return Residue(0, q)
    if jacobi(a, q) != 1:
        return None
    if q % 4 == 3:
        r = pow(a, (q + 1) // 4, q)
        return Residue(min(r, q - r), q)
    # Tonelli-Shanks: q - 1 = s * 2**e with s odd
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = 2
    while jacobi(z, q) != -1:
        z += 1
    c = pow(z, s, q)
    r = pow(a, (s + 1) // 2, q)
    t = pow(a, s, q)
    while t != 1:
        # order of t is 2**i
        i, sq = 0, t
        while sq != 1:
            sq = sq * sq % q
            i += 1
        b = pow(c, 1 << (e - i - 1), q)
        r = r * b % q
        c = b * b % q
        t = t * c % q
        e = i
    return Residue(min(r, q - r), q)


def squarefree_split(
    m: int, trial_bound: int = 10**6
) -> tuple[int, int] | None:
    """Write m = d * y**2 with d squarefree, or None if that fails.

    Trial division up to trial_bound peels off small prime squares; the
    remaining cofactor is accepted only when it is provably squarefree
    (1, a prime, or below the square of the last sieved prime) or is
    itself a perfect square.  Anything else is reported as a failure
    rather than guessed at.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    d, y = 1, 1
    rem = m
    p = 2
    while p <= trial_bound and p * p <= rem:
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            if e % 2:
                d *= p
            y *= p ** (e // 2)
        p = 3 if p == 2 else p + 2
    if rem == 1:
        return d, y
    if p * p > rem:
        # all factors of rem exceed its square root, so rem is prime
        return d * rem, y
    if is_perfect_square(rem):
        return d, y * math.isqrt(rem)
    if is_prime(rem):
        return d * rem, y
    return None
