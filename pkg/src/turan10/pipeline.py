"""End-to-end constructions for arbitrary n, and sweep experiments.

theorem1_tuple realizes the prime-jump recipe: pick the least prime p > n,
build the montgomery (p-1)-tuple whose power sums stay below sqrt(p) out to
(p-1)^2, search for a removal set of size m = p-1-n with flat power sums, and
return the complement.  The triangle inequality turns the pair of bounds into

    max_{nu<=n^2} |S(nu)| <= sqrt(p) + subset_score,

which the DeltaRecord certifies, together with delta_hat = achieved - sqrt(n)
(an upper bound on the true excess over sqrt(n); the infimum itself is not
computable).

theorem2_tuple does the same over primes P = m*n' + 1 via the m-th-power
construction, certified on nu = 1..m n^2.  trim_tuple instead drops the last
j elements from the nearest larger construction (prime, Bose prime power, or
Singer prime power) and keeps whichever candidate achieves the smallest max
over nu = 1..n^2.  delta_sweep runs one best record per n and aggregates the
delta_hat statistics.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceError
from .evaluator import power_sums_fft
from .numtheory import (DEFAULT_FIELD_CAP, is_prime, next_prime,
                        next_prime_in_progression, next_prime_power)
from .selector import SearchConfig, derived_config, search_subset, subset_score
from .tuples import (FloatTuple, RootTuple, bose_tuple, montgomery,
                     montgomery_modified, singer_tuple, subtuple, to_float)

SWEEP_N_CAP = 400


@dataclass(frozen=True)
class DeltaRecord:
    """One constructive upper-bound experiment at a single n.

    gap is the removal size (p-1-n for the prime-jump method, the trim count
    j otherwise).  achieved_max is the certified max over nu = 1..n^2 (for
    montmod over nu = 1..m n^2), delta_hat = achieved_max - sqrt(n).
    cramer_flag marks n whose surrounding prime gap exceeds (log n)^2; it is
    reported in JSON but not part of the frozen sweep CSV schema.
    """

    n: int
    method: str  # theorem1 | trim-prime | trim-primepower | montmod
    p: int
    gap: int
    subset_score: float
    achieved_max: float
    argmax_nu: int
    delta_hat: float
    wall_ms: float
    cramer_flag: bool = False

    def to_json(self) -> dict:
        return {"n": self.n, "method": self.method, "p": self.p, "gap": self.gap,
                "subset_score": self.subset_score, "achieved_max": self.achieved_max,
                "argmax_nu": self.argmax_nu, "delta_hat": self.delta_hat,
                "wall_ms": self.wall_ms, "cramer_flag": self.cramer_flag}


def _prev_prime(n: int) -> int:
    k = n
    while not is_prime(k):
        k -= 1
    return k


def _cramer_flag(n: int) -> bool:
    """Surrounding prime gap above (log n)^2 (informational only)."""
    gap = next_prime(n) - _prev_prime(n) if n >= 2 else 1
    return gap > math.log(n) ** 2


def theorem1_tuple(n: int, config: SearchConfig | None = None) -> tuple[FloatTuple, DeltaRecord]:
    """Prime jump plus moment-guided removal; returns the n-tuple and record.

    p = next_prime(n); when p = n+1 the montgomery tuple is returned whole
    (removal size 0) and the classical sqrt(n) <= max <= sqrt(n+1) sandwich
    applies.  Otherwise the selector picks the removal set of size p-1-n
    scored over nu = 1..(p-1)^2, and the complement is certified over
    nu = 1..n^2.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    t0 = time.perf_counter()
    p = next_prime(n)
    base = montgomery(p)
    m = p - 1 - n
    if m == 0:
        keep = base
        score = 0.0
    else:
        result = search_subset(base, m, (p - 1) ** 2, config)
        removed = set(result.subset)
        keep = subtuple(base, [i for i in range(p - 1) if i not in removed],
                        note="prime-jump complement")
        score = result.score
    prof = power_sums_fft(keep, n * n)
    achieved = prof.max_abs
    wall_ms = (time.perf_counter() - t0) * 1e3
    record = DeltaRecord(n=n, method="theorem1", p=p, gap=m, subset_score=score,
                         achieved_max=achieved, argmax_nu=prof.argmax_nu,
                         delta_hat=achieved - math.sqrt(n), wall_ms=wall_ms,
                         cramer_flag=_cramer_flag(n))
    return to_float(keep), record


def theorem2_tuple(n: int, m: int,
                   config: SearchConfig | None = None) -> tuple[FloatTuple, DeltaRecord]:
    """Prime jump in the progression 1 mod m via the m-th-power construction.

    P = least prime = m*n' + 1 with n' >= n; removal of n'-n elements is
    scored over nu = 1..m n'^2 and the result certified over nu = 1..m n^2,
    where the base bound sqrt(m n' + 1) applies.
    """
    if n < 2 or m < 1:
        raise DomainError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    t0 = time.perf_counter()
    P = next_prime_in_progression(n, m)
    n_big = (P - 1) // m
    base = montgomery_modified(n_big, m)
    removal = n_big - n
    if removal == 0:
        keep = base
        score = 0.0
    else:
        result = search_subset(base, removal, m * n_big * n_big, config)
        removed = set(result.subset)
        keep = subtuple(base, [i for i in range(n_big) if i not in removed],
                        note="progression complement")
        score = result.score
    prof = power_sums_fft(keep, m * n * n)
    achieved = prof.max_abs
    wall_ms = (time.perf_counter() - t0) * 1e3
    record = DeltaRecord(n=n, method="montmod", p=P, gap=removal, subset_score=score,
                         achieved_max=achieved, argmax_nu=prof.argmax_nu,
                         delta_hat=achieved - math.sqrt(n), wall_ms=wall_ms,
                         cramer_flag=_cramer_flag(n))
    return to_float(keep), record


def _trim_candidates(n: int) -> Iterable[tuple[str, int, RootTuple, int]]:
    """(method, parameter, base tuple, trim count) candidates of size >= n."""
    p = next_prime(n)
    yield "trim-prime", p, montgomery(p), p - 1 - n
    q = next_prime_power(n)
    if q * q <= DEFAULT_FIELD_CAP:
        yield "trim-primepower", q, bose_tuple(q), q - n
    if q ** 3 <= DEFAULT_FIELD_CAP:
        yield "trim-primepower", q, singer_tuple(q), q + 1 - n


def trim_tuple(n: int) -> tuple[FloatTuple, DeltaRecord]:
    """Drop the trailing elements of the nearest larger construction.

    Candidates: montgomery at the least prime p > n (drop p-1-n), the Bose
    tuple at the least prime power q >= n (drop q-n), and the Singer tuple at
    the same q (size q+1, drop q+1-n); for n itself a prime power the Singer
    candidate realizes the sqrt(n) + 1 bound.  Each candidate is evaluated
    over nu = 1..n^2 after dropping its last elements (highest positions) and
    the smallest achieved max wins.  subset_score records the dropped
    elements' actual max power sum, so achieved <= base max + subset_score
    holds exactly as in the removal pipelines.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    t0 = time.perf_counter()
    best = None
    for method, param, base, j in _trim_candidates(n):
        size = base.n
        assert size - j == n
        if j == 0:
            keep = base
            dropped_score = 0.0
        else:
            keep = subtuple(base, range(n))
            keep = RootTuple(M=keep.M, angles=keep.angles, provenance={
                "construction": "trimmed", "base": base.provenance["construction"],
                "param": param, "dropped": j})
            dropped_score = subset_score(base, range(n, size), n * n)
        prof = power_sums_fft(keep, n * n)
        cand = (prof.max_abs, method, param, j, dropped_score, prof.argmax_nu, keep)
        if best is None or cand[0] < best[0]:
            best = cand
    achieved, method, param, j, dropped_score, argmax_nu, keep = best
    wall_ms = (time.perf_counter() - t0) * 1e3
    record = DeltaRecord(n=n, method=method, p=param, gap=j, subset_score=dropped_score,
                         achieved_max=achieved, argmax_nu=argmax_nu,
                         delta_hat=achieved - math.sqrt(n), wall_ms=wall_ms,
                         cramer_flag=_cramer_flag(n))
    return to_float(keep), record


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def derive_seed(master: int, n: int) -> int:
    """Deterministic per-n seed, independent of worker count and order."""
    return int(np.random.SeedSequence([master, n]).generate_state(1)[0])


def _sweep_one(n: int, methods: Sequence[str], seed: int,
               config: SearchConfig) -> DeltaRecord:
    records = []
    for method in methods:
        if method == "theorem1":
            cfg = derived_config(config, derive_seed(seed, n))
            records.append(theorem1_tuple(n, cfg)[1])
        elif method == "trim":
            records.append(trim_tuple(n)[1])
        else:
            raise DomainError(f"unknown sweep method {method!r}")
    return min(records, key=lambda r: r.achieved_max)


def delta_sweep(n_lo: int, n_hi: int, methods: Sequence[str] = ("theorem1", "trim"),
                seed: int = 0, config: SearchConfig | None = None,
                workers: int = 1, n_cap: int = SWEEP_N_CAP,
                ) -> tuple[list[DeltaRecord], dict]:
    """One best DeltaRecord per n in [n_lo, n_hi], plus aggregates.

    Per-n work is pure with a seed derived from (seed, n), so results are
    identical for any worker count; aggregation always folds in ascending n.
    The default search config is random with modest trials (sweeps run
    hundreds of n; heavier strategies remain available per call).
    """
    if not 2 <= n_lo <= n_hi:
        raise DomainError(f"need 2 <= n_lo <= n_hi, got [{n_lo}, {n_hi}]")
    if n_hi > n_cap:
        raise ResourceError(f"sweep cap is n <= {n_cap}, got {n_hi}")
    if not methods:
        raise DomainError("need at least one method")
    cfg = config or SearchConfig(strategy="random", trials=128)
    ns = list(range(n_lo, n_hi + 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda n: _sweep_one(n, methods, seed, cfg), ns))
    else:
        records = [_sweep_one(n, methods, seed, cfg) for n in ns]
    return records, sweep_aggregates(records, n_lo, n_hi)


def sweep_aggregates(records: Sequence[DeltaRecord], n_lo: int, n_hi: int) -> dict:
    """Sum of squared delta_hat, max, count above n^(1/4), log-log slope fit."""
    deltas = np.array([r.delta_hat for r in records])
    ns = np.array([r.n for r in records], dtype=np.float64)
    exceed = int(np.sum(deltas > ns ** 0.25))
    positive = deltas > 1e-12
    if positive.sum() >= 2:
        slope = float(np.polyfit(np.log(ns[positive]), np.log(deltas[positive]), 1)[0])
    else:
        slope = None
    return {"N_range": [n_lo, n_hi],
            "sum_delta_sq": float(np.sum(deltas ** 2)),
            "max_delta": float(np.max(deltas)),
            "count_exceed_n14": exceed,
            "slope_fit": slope}


SWEEP_CSV_COLUMNS = ("n", "method", "p", "gap", "subset_score", "achieved_max",
                     "argmax_nu", "delta_hat", "wall_ms")


def sweep_csv_lines(records: Iterable[DeltaRecord]) -> list[str]:
    lines = [",".join(SWEEP_CSV_COLUMNS)]
    for r in records:
        lines.append(",".join([
            str(r.n), r.method, str(r.p), str(r.gap), repr(r.subset_score),
            repr(r.achieved_max), str(r.argmax_nu), repr(r.delta_hat),
            repr(r.wall_ms)]))
    return lines


def write_sweep_csv(records: Iterable[DeltaRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(sweep_csv_lines(records)) + "\n")
