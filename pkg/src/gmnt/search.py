"""Concrete parameter search over the quadratic families.

Two interchangeable strategies cover the same search space:

  pell  iterate squarefree |delta| upward, solve the one generalized
        Pell equation X^2 - 3|delta| Y^2 = m the embedding degree
        fixes, and map every solution back through X = 3qx + beta to a
        candidate x for each family.  Complete per discriminant.

  scan  iterate x over an interval, keep the prime p(x), n(x) pairs and
        factor 4p - t^2 into delta * Y^2.  Complete per x, provided the
        squarefree split succeeds; a split that cannot be certified is
        reported and skipped, which can only lose discriminants above
        the trial division bound.

Both emit identical candidates wherever their windows overlap, which
the test suite exploits as a cross-check.  Results are streamed in a
deterministic order: ascending |delta|, then |x|, x, branch, s for the
pell strategy, ascending x for scan; run_search sorts either stream
into the pell order.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import repeat
from typing import Iterator

from gmnt.arith import is_prime, jacobi, squarefree_split
from gmnt.families import (
    CheckResult,
    FamilySpec,
    QuadraticFamily,
    VerificationReport,
    build_family,
    find_roots,
)
from gmnt.poly import cyclotomic

__all__ = [
    "SearchConfig",
    "CurveCandidate",
    "iter_search",
    "run_search",
    "verify_candidate",
    "verify_record",
]

_log = logging.getLogger("gmnt.search")

_DELTA_CEILING = 10**10
_PELL_CHUNK = 4096
_SCAN_CHUNK = 4096


@dataclass(frozen=True)
class SearchConfig:
    """Window and strategy for one search run."""

    k: int
    q: int
    branches: tuple[str, ...] = ("A", "B")
    mode: str = "pell"
    delta_min: int = 1
    delta_max: int = 100000
    x_bits_max: int = 64
    x_min: int | None = None
    x_max: int | None = None
    p_bits_min: int | None = None
    p_bits_max: int | None = None
    max_hits: int = 0
    trial_bound: int = 10**6
    jobs: int = 1

    def __post_init__(self) -> None:
        # FamilySpec construction re-validates k and q; do it eagerly so
        # an inadmissible cofactor fails here and not in a worker
        from gmnt.families import admissible_q

        if not admissible_q(self.k, self.q):
            raise ValueError(
                f"q = {self.q} is not admissible for k = {self.k}"
            )
        if self.mode not in ("pell", "scan"):
            raise ValueError(f"mode must be 'pell' or 'scan', got {self.mode!r}")
        if not self.branches or any(b not in ("A", "B") for b in self.branches):
            raise ValueError(f"branches must be drawn from A, B, got {self.branches}")
        if not 1 <= self.delta_min <= self.delta_max <= _DELTA_CEILING:
            raise ValueError(
                f"need 1 <= delta_min <= delta_max <= {_DELTA_CEILING}"
            )
        if self.mode == "pell" and not 1 <= self.x_bits_max <= 512:
            raise ValueError(f"x_bits_max out of range: {self.x_bits_max}")
        if self.mode == "scan":
            if self.x_min is None or self.x_max is None:
                raise ValueError("scan mode needs x_min and x_max")
            if self.x_min > self.x_max:
                raise ValueError(f"empty x range [{self.x_min}, {self.x_max}]")
        if self.p_bits_min is not None and self.p_bits_min < 1:
            raise ValueError(f"p_bits_min must be positive: {self.p_bits_min}")
        if (
            self.p_bits_min is not None
            and self.p_bits_max is not None
            and self.p_bits_min > self.p_bits_max
        ):
            raise ValueError("empty p_bits window")
        if self.max_hits < 0:
            raise ValueError(f"max_hits must be nonnegative: {self.max_hits}")
        if self.trial_bound < 2:
            raise ValueError(f"trial_bound too small: {self.trial_bound}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be positive: {self.jobs}")


@dataclass(frozen=True)
class CurveCandidate:
    """One concrete parameter set found by a search."""

    family: FamilySpec
    x: int
    p: int
    n: int
    t: int
    delta: int
    y: int

    @property
    def k(self) -> int:
        return self.family.k

    @property
    def q(self) -> int:
        return self.family.q

    @property
    def s(self) -> int:
        return self.family.s

    @property
    def branch(self) -> str:
        return self.family.branch

    @property
    def p_bits(self) -> int:
        return self.p.bit_length()

    @property
    def n_bits(self) -> int:
        return self.n.bit_length()

    def to_json_dict(self) -> dict:
        return {
            "k": self.family.k,
            "q": self.family.q,
            "s": self.family.s,
            "branch": self.family.branch,
            "x": str(self.x),
            "p": str(self.p),
            "n": str(self.n),
            "t": str(self.t),
            "delta": str(self.delta),
            "Y": str(self.y),
            "p_bits": self.p_bits,
            "n_bits": self.n_bits,
        }

    @classmethod
    def from_json_dict(cls, record: dict) -> CurveCandidate:
        try:
            spec = FamilySpec(
                int(record["k"]),
                int(record["q"]),
                int(record["s"]),
                str(record["branch"]),
            )
            return cls(
                family=spec,
                x=int(record["x"]),
                p=int(record["p"]),
                n=int(record["n"]),
                t=int(record["t"]),
                delta=int(record["delta"]),
                y=int(record["Y"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed candidate record: {exc}") from exc


def _canonical_key(c: CurveCandidate) -> tuple:
    return (abs(c.delta), abs(c.x), c.x, c.family.branch, c.family.s)


@lru_cache(maxsize=32)
def _config_families(
    k: int, q: int, branches: tuple[str, ...]
) -> tuple[QuadraticFamily, ...]:
    fams = []
    for branch in branches:
        for s in find_roots(k, q, branch):
            fams.append(build_family(k, q, s, branch))
    fams.sort(key=lambda f: (f.spec.branch, f.spec.s))
    return tuple(fams)


@lru_cache(maxsize=4)
def _primes_to(bound: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(bound + 1) if sieve[i])


def _squarefree_chunk(lo: int, hi: int) -> list[tuple[int, list[int]]]:
    """Squarefree integers in [lo, hi) with their prime factors."""
    size = hi - lo
    sf = bytearray([1]) * size
    rem = list(range(lo, hi))
    factors: list[list[int]] = [[] for _ in range(size)]
    for p in _primes_to(math.isqrt(hi - 1)):
        p2 = p * p
        start = -(-lo // p2) * p2
        for i in range(start - lo, size, p2):
            sf[i] = 0
        start = -(-lo // p) * p
        for i in range(start - lo, size, p):
            if sf[i]:
                factors[i].append(p)
                v = rem[i] // p
                while v % p == 0:
                    v //= p
                rem[i] = v
    out = []
    for i in range(size):
        if sf[i]:
            if rem[i] > 1:
                # cofactor exceeds sqrt(hi), hence prime
                factors[i].append(rem[i])
            out.append((lo + i, factors[i]))
    return out


def _point_filters(
    fam: QuadraticFamily, x: int, cfg: SearchConfig
) -> tuple[int, int, int] | None:
    """(p, n, t) at x when all pointwise conditions hold, else None.

    Primality runs last; everything before it is integer comparisons.
    """
    p = fam.p(x)
    if p < 2:
        return None
    bits = p.bit_length()
    if cfg.p_bits_min is not None and bits < cfg.p_bits_min:
        return None
    if cfg.p_bits_max is not None and bits > cfg.p_bits_max:
        return None
    t = fam.t(x)
    if t in (0, 1, 2) or t * t >= 4 * p:
        return None
    n = fam.n(x)
    if n <= cfg.k or n == cfg.q or n == p:
        return None
    if not is_prime(p) or not is_prime(n):
        return None
    return p, n, t


def _finalize(
    fam: QuadraticFamily, x: int, p: int, n: int, t: int, delta: int, y: int
) -> CurveCandidate:
    """Build a candidate, re-checking the identities the family implies.

    These can only fire on an implementation bug, so they raise instead
    of filtering.
    """
    if delta >= 0 or y < 1:
        raise RuntimeError(f"degenerate CM data delta={delta}, y={y} at x={x}")
    if t * t - 4 * p != delta * y * y:
        raise RuntimeError(
            f"CM identity violated at x={x}: t^2-4p != {delta}*{y}^2"
        )
    k, q = fam.spec.k, fam.spec.q
    if cyclotomic(k)(p) % (q * n) != 0:
        raise RuntimeError(f"cyclotomic divisibility violated at x={x}")
    return CurveCandidate(
        family=fam.spec, x=x, p=p, n=n, t=t, delta=delta, y=y
    )


def _pell_chunk(cfg: SearchConfig, lo: int, hi: int) -> list[CurveCandidate]:
    """Candidates with |delta| in [lo, hi), in canonical order."""
    from gmnt.pell import iterate_solutions

    fams = _config_families(cfg.k, cfg.q, cfg.branches)
    if not fams:
        return []
    m = fams[0].pell_m
    x_bound = 1 << cfg.x_bits_max
    limit_bits = cfg.x_bits_max + (3 * cfg.q).bit_length() + 2
    out: list[CurveCandidate] = []
    for delta_abs, primes in _squarefree_chunk(lo, hi):
        # X^2 = m (mod r) for every prime r | delta, so a negative
        # Jacobi symbol rules the discriminant out before any solving
        if any(r >= 5 and jacobi(m % r, r) == -1 for r in primes):
            continue
        solutions = iterate_solutions(3 * delta_abs, m, limit_bits)
        if not solutions:
            continue
        batch = []
        for fam in fams:
            alpha, beta = fam.pell_alpha, fam.pell_beta
            for sol in solutions:
                if (sol.x - beta) % alpha:
                    continue
                x = (sol.x - beta) // alpha
                if abs(x) >= x_bound:
                    continue
                point = _point_filters(fam, x, cfg)
                if point is None:
                    continue
                p, n, t = point
                batch.append(_finalize(fam, x, p, n, t, -delta_abs, sol.y))
        batch.sort(key=_canonical_key)
        out.extend(batch)
    return out


def _scan_chunk(cfg: SearchConfig, lo: int, hi: int) -> list[CurveCandidate]:
    """Candidates with x in [lo, hi), in ascending x order."""
    fams = _config_families(cfg.k, cfg.q, cfg.branches)
    out: list[CurveCandidate] = []
    for x in range(lo, hi):
        for fam in fams:
            point = _point_filters(fam, x, cfg)
            if point is None:
                continue
            p, n, t = point
            split = squarefree_split(4 * p - t * t, cfg.trial_bound)
            if split is None:
                _log.warning(
                    "x=%d (k=%d q=%d s=%d %s): cannot certify squarefree "
                    "part of 4p - t^2; skipped",
                    x, cfg.k, cfg.q, fam.spec.s, fam.spec.branch,
                )
                continue
            delta_abs, y = split
            if not cfg.delta_min <= delta_abs <= cfg.delta_max:
                continue
            out.append(_finalize(fam, x, p, n, t, -delta_abs, y))
    return out


def iter_search(cfg: SearchConfig) -> Iterator[CurveCandidate]:
    """Stream candidates for cfg in the mode's deterministic order.

    max_hits truncates the stream; chunking and the jobs count never
    change what is emitted or its order.
    """
    if cfg.mode == "pell":
        worker = _pell_chunk
        lo, hi, step = cfg.delta_min, cfg.delta_max + 1, _PELL_CHUNK
    else:
        worker = _scan_chunk
        lo, hi, step = cfg.x_min, cfg.x_max + 1, _SCAN_CHUNK
    starts = range(lo, hi, step)
    emitted = 0
    if cfg.jobs == 1:
        batches = (worker(cfg, a, min(a + step, hi)) for a in starts)
    else:
        executor = ProcessPoolExecutor(max_workers=cfg.jobs)
        batches = executor.map(
            worker, repeat(cfg), starts, (min(a + step, hi) for a in starts)
        )
    try:
        for batch in batches:
            for cand in batch:
                yield cand
                emitted += 1
                if cfg.max_hits and emitted >= cfg.max_hits:
                    return
    finally:
        if cfg.jobs > 1:
            executor.shutdown(wait=False, cancel_futures=True)


def run_search(cfg: SearchConfig) -> tuple[CurveCandidate, ...]:
    """All candidates for cfg, sorted into the canonical pell order."""
    return tuple(sorted(iter_search(cfg), key=_canonical_key))


def _order_is(p: int, n: int, k: int) -> bool:
    """True when p has multiplicative order exactly k modulo n."""
    if math.gcd(p, n) != 1:
        return False
    if pow(p, k, n) != 1:
        return False
    for r in (2, 3):
        if k % r == 0 and pow(p, k // r, n) == 1:
            return False
    return True


def verify_candidate(cand: CurveCandidate) -> VerificationReport:
    """Re-check a candidate from scratch, one named check per property."""
    checks = []
    spec = cand.family
    k, q = spec.k, spec.q
    x, p, n, t, delta, y = cand.x, cand.p, cand.n, cand.t, cand.delta, cand.y

    try:
        fam = build_family(k, q, spec.s, spec.branch)
        consistent = fam.p(x) == p and fam.n(x) == n and fam.t(x) == t
        detail = "" if consistent else "values disagree with the family at x"
    except (ValueError, RuntimeError) as exc:
        consistent, detail = False, str(exc)
    checks.append(CheckResult("family_consistency", consistent, detail))

    checks.append(
        CheckResult("cofactor_identity", q * n == p + 1 - t, "q n vs p + 1 - t")
    )
    checks.append(CheckResult("p_prime", is_prime(p), str(p)))
    checks.append(CheckResult("n_prime", is_prime(n), str(n)))
    checks.append(
        CheckResult(
            "n_separated",
            n > k and n != q and n != p,
            f"n = {n} against k, q, p",
        )
    )
    checks.append(
        CheckResult(
            "trace_nondegenerate",
            t not in (0, 1, 2) and t * t < 4 * p,
            f"t = {t}",
        )
    )
    checks.append(
        CheckResult(
            "cm_identity",
            delta < 0 and y >= 1 and t * t - 4 * p == delta * y * y,
            f"t^2 - 4p vs {delta} * {y}^2",
        )
    )
    split = squarefree_split(abs(delta)) if delta != 0 else None
    checks.append(
        CheckResult(
            "delta_squarefree",
            split == (abs(delta), 1),
            "split failed" if split is None else f"{abs(delta)} = {split}",
        )
    )
    checks.append(
        CheckResult(
            "embedding_degree",
            _order_is(p, n, k),
            f"order of p modulo n vs {k}",
        )
    )
    return VerificationReport(tuple(checks))


def verify_record(record: dict) -> VerificationReport:
    """Validate a JSON candidate record; raises ValueError if malformed."""
    return verify_candidate(CurveCandidate.from_json_dict(record))
