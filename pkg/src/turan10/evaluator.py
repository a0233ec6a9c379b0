"""Power-sum evaluation: direct iterated products and the one-FFT fast path.

For a RootTuple every element is e(c_k / M) on one grid, so the whole power
sum sequence S(nu) = sum_k z_k^nu for nu = 0..M-1 is the discrete Fourier
transform of the angle multiplicity vector v[j] = #{k : c_k = j}:

    S(nu) = sum_j v[j] e(j nu / M),

one real-input FFT of length M (mixed-radix/Bluestein, any M; M = p(p-1) is
never a power of two), extended by exact periodicity beyond M.  The direct
path multiplies element powers iteratively and is the reference the FFT path
is checked against.

Also here: power sums over pairwise-distinct indices and their expansion of
S(nu_1)...S(nu_m) over set partitions (brute-force, test-scale only), and the
2N-th moment of subset power sums used by the subset selector.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .errors import DomainError, ResourceError
from .tuples import FloatTuple, RootTuple, subtuple, to_float

DEFAULT_MAX_FFT_LEN = 1 << 26
_MAX_LEN_ENV = "TURAN10_MAX_FFT_LEN"

# Direct-path block size: bounds scratch memory at ~4 MB while keeping the
# per-element multiplication chain identical to a scalar loop.
_DIRECT_BLOCK_ELEMS = 1 << 18


def max_fft_len() -> int:
    val = os.environ.get(_MAX_LEN_ENV)
    if val:
        return int(val)
    return DEFAULT_MAX_FFT_LEN


@dataclass
class PowerSumProfile:
    """|S(nu)| over a contiguous nu range, with argmax metadata.

    abs[i] is |S(nu_lo + i)|; values holds the complex sums when the producer
    kept them.  argmax_nu is the smallest nu attaining max_abs.  For a
    RootTuple source the sequence is (nu mod M)-periodic with S(0) = n.
    """

    n: int
    M: int | None
    nu_lo: int
    nu_hi: int
    abs: np.ndarray
    max_abs: float
    argmax_nu: int
    values: np.ndarray | None = None

    def summary(self) -> dict:
        return {"n": self.n, "M": self.M, "nu_lo": self.nu_lo, "nu_hi": self.nu_hi,
                "max_abs": self.max_abs, "argmax_nu": self.argmax_nu}


def _values_of(t: RootTuple | FloatTuple) -> np.ndarray:
    if isinstance(t, RootTuple):
        return to_float(t).values
    return np.asarray(t.values, dtype=np.complex128)


def power_sums_direct(t: RootTuple | FloatTuple, nu_lo: int, nu_hi: int) -> PowerSumProfile:
    """S(nu) for nu in [nu_lo, nu_hi] by iterated per-element multiplication.

    O(n * (nu_hi - nu_lo + 1)) complex multiplications in double precision;
    processed in blocks via cumulative products, which performs exactly the
    same multiplication chain per element as a scalar loop.
    """
    if not (1 <= nu_lo <= nu_hi):
        raise DomainError(f"need 1 <= nu_lo <= nu_hi, got [{nu_lo}, {nu_hi}]")
    values = _values_of(t)
    n = len(values)
    if n == 0:
        raise DomainError("empty tuple")
    count = nu_hi - nu_lo + 1
    out = np.empty(count, dtype=np.complex128)
    block = max(1, _DIRECT_BLOCK_ELEMS // n)
    pw = values ** nu_lo
    done = 0
    while done < count:
        b = min(block, count - done)
        tile = np.broadcast_to(values, (b, n)).copy()
        tile[0] = pw
        powers = np.cumprod(tile, axis=0)
        out[done:done + b] = powers.sum(axis=1)
        done += b
        if done < count:
            pw = powers[-1] * values
    absvals = np.abs(out)
    arg = int(np.argmax(absvals))
    M = t.M if isinstance(t, RootTuple) else None
    return PowerSumProfile(n=n, M=M, nu_lo=nu_lo, nu_hi=nu_hi, abs=absvals,
                           max_abs=float(absvals[arg]), argmax_nu=nu_lo + arg,
                           values=out)


def _full_period_spectrum(t: RootTuple, with_values: bool) -> tuple[np.ndarray, np.ndarray | None]:
    """(|S(nu)|, S(nu) or None) for nu = 0..M-1 via one real-input FFT.

    The multiplicity vector is real, so S(M-nu) = conj(S(nu)); the second
    half is mirrored from the rfft output rather than recomputed.
    """
    M = t.M
    cap = max_fft_len()
    if M > cap:
        raise ResourceError(f"FFT length M={M} exceeds cap {cap} "
                            f"(override via {_MAX_LEN_ENV})")
    v = np.bincount(np.array(t.angles, dtype=np.int64), minlength=M).astype(np.float64)
    H = scipy.fft.rfft(v)
    half = M // 2
    absfull = np.empty(M, dtype=np.float64)
    absH = np.abs(H)
    absfull[:half + 1] = absH
    absfull[half + 1:] = absH[1:(M + 1) // 2][::-1]
    if not with_values:
        return absfull, None
    # S(nu) = conj(DFT(v)[nu]) since e(x) uses the +i convention
    S = np.empty(M, dtype=np.complex128)
    S[:half + 1] = np.conj(H)
    S[half + 1:] = H[1:(M + 1) // 2][::-1]
    return absfull, S


def power_sums_fft(t: RootTuple, nu_hi: int, nu_lo: int = 1,
                   with_values: bool = False) -> PowerSumProfile:
    """Full-period FFT evaluation, extended by periodicity to nu_hi.

    Agrees with power_sums_direct to within 1e-8 * n everywhere; the fast
    path for everything downstream (certificates, selector, sweeps).
    """
    if not (1 <= nu_lo <= nu_hi):
        raise DomainError(f"need 1 <= nu_lo <= nu_hi, got [{nu_lo}, {nu_hi}]")
    if t.n == 0:
        raise DomainError("empty tuple")
    count = nu_hi - nu_lo + 1
    if count > max_fft_len():
        raise ResourceError(f"profile length {count} exceeds cap {max_fft_len()}")
    absfull, S = _full_period_spectrum(t, with_values)
    M = t.M
    if nu_hi < M:
        absvals = absfull[nu_lo:nu_hi + 1].copy()
        values = S[nu_lo:nu_hi + 1].copy() if S is not None else None
    else:
        idx = np.arange(nu_lo, nu_hi + 1, dtype=np.int64) % M
        absvals = absfull[idx]
        values = S[idx] if S is not None else None
    arg = int(np.argmax(absvals))
    return PowerSumProfile(n=t.n, M=M, nu_lo=nu_lo, nu_hi=nu_hi, abs=absvals,
                           max_abs=float(absvals[arg]), argmax_nu=nu_lo + arg,
                           values=values)


# ---------------------------------------------------------------------------
# Distinct-index power sums (test-scale machinery)
# ---------------------------------------------------------------------------

_DISTINCT_MAX_ORDER = 6


def distinct_power_sum(t: RootTuple | FloatTuple, nus) -> complex:
    """sum over pairwise-distinct k_1..k_m of z_{k_1}^{nu_1} ... z_{k_m}^{nu_m}.

    Exact brute force over all injective index assignments, O(n^m); m = 1
    reduces to the classical power sum.  Returns 0 for m > n (no injective
    assignment exists).
    """
    nus = list(nus)
    m = len(nus)
    if m < 1:
        raise DomainError("need at least one exponent")
    values = _values_of(t)
    n = len(values)
    if m > n:
        return 0j
    if m > _DISTINCT_MAX_ORDER:
        raise ResourceError(f"distinct-index sums capped at m <= {_DISTINCT_MAX_ORDER}")
    powvecs = [values ** nu for nu in nus]
    if m == 1:
        return complex(powvecs[0].sum())
    from itertools import permutations
    total = 0j
    for perm in permutations(range(n), m):
        prod = 1 + 0j
        for vec, k in zip(powvecs, perm):
            prod *= vec[k]
        total += prod
    return total


def _set_partitions(items: list[int]):
    """All partitions of items into nonempty disjoint blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def partition_expansion_check(t: RootTuple | FloatTuple, nus) -> tuple[bool, float]:
    """Verify S(nu_1)...S(nu_m) = sum over set partitions of the distinct-index
    sums at the blockwise exponent totals.

    Returns (ok, residual) with ok iff residual <= 1e-9 * n^m.
    """
    nus = list(nus)
    m = len(nus)
    values = _values_of(t)
    n = len(values)
    if m > 4 or n > 8:
        raise ResourceError(f"partition check capped at m <= 4, n <= 8 (got m={m}, n={n})")
    lhs = 1 + 0j
    for nu in nus:
        lhs *= complex((values ** nu).sum())
    rhs = 0j
    for part in _set_partitions(list(range(m))):
        rhs += distinct_power_sum(t, [sum(nus[j] for j in block) for block in part])
    residual = abs(lhs - rhs)
    return residual <= 1e-9 * n ** m, residual


def subset_moment(t: RootTuple, subset, N: int, nu_hi: int) -> float:
    """sum_{nu=1}^{nu_hi} |S_subset(nu)|^(2N) from the subset's FFT profile."""
    if N < 1:
        raise DomainError(f"moment order N must be >= 1, got {N}")
    idx = list(subset)
    if not idx:
        raise DomainError("subset must be nonempty")
    prof = power_sums_fft(subtuple(t, idx), nu_hi)
    return float(np.sum(prof.abs ** (2 * N), dtype=np.float64))


# ---------------------------------------------------------------------------
# Export plumbing
# ---------------------------------------------------------------------------

def write_profile_csv(profile: PowerSumProfile, path) -> None:
    """Columns nu, abs (re, im when available), 12 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if profile.values is not None:
            fh.write("nu,abs,re,im\n")
            for i, a in enumerate(profile.abs):
                s = profile.values[i]
                fh.write(f"{profile.nu_lo + i},{a:.12g},{s.real:.12g},{s.imag:.12g}\n")
        else:
            fh.write("nu,abs\n")
            for i, a in enumerate(profile.abs):
                fh.write(f"{profile.nu_lo + i},{a:.12g}\n")


def max_discrepancy(t: RootTuple, nu_hi: int, nu_lo: int = 1) -> float:
    """max over nu of | |S|_fft - |S|_direct |, the dual-path consistency gauge."""
    fft_prof = power_sums_fft(t, nu_hi, nu_lo=nu_lo)
    direct_prof = power_sums_direct(t, nu_lo, nu_hi)
    return float(np.max(np.abs(fft_prof.abs - direct_prof.abs)))
