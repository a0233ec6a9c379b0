"""Exact root-of-unity tuples and the extremal constructions.

A RootTuple stores an n-tuple of points on the unit circle as integer angle
numerators over one common order M: entry c_k encodes z_k = e(c_k / M) with
e(x) = exp(2*pi*i*x).  Unimodularity is exact by representation, power sums
become trigonometric sums over a single grid (which is what makes the
one-FFT evaluator possible), and JSON round-trips are bit-exact.

Constructions:

  montgomery(p)            z_k = chi(k) e(k/p) for k = 1..p-1, chi the order
                           p-1 character; max |S(nu)| <= sqrt(p) out to
                           nu = (p-1)p - 1.
  montgomery_modified(n,m) the m-th powers of the above at the m-th power
                           residues of p = mn+1; n points with
                           max |S(nu)| <= sqrt(mn+1) out to nu = m n^2 + n - 1.
  bose_tuple(q)            angles = Bose Sidon set in Z_{q^2-1}; q points.
  singer_tuple(q)          angles = Singer difference set mod q^2+q+1; q+1
                           points with a perfectly flat spectrum |S|^2 = q.
  erdos_renyi_random       independent uniform angles, resampled until
                           max_{nu<=m} |S(nu)| <= sqrt(6 n log(m+1)).

FloatTuple holds arbitrary complex tuples (random constructions, trimmed or
subset tuples exported to floats, adversarial inputs for the certificates).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, SearchError
from .numtheory import bose_set, character_table, is_prime, singer_set

ERDOS_RENYI_RETRIES = 64


@dataclass(frozen=True)
class RootTuple:
    """n-tuple of exact M-th roots of unity, angles in [0, M)."""

    M: int
    angles: tuple[int, ...]
    provenance: Mapping[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.M < 1:
            raise DomainError(f"order M must be positive, got {self.M}")
        if any(c < 0 or c >= self.M for c in self.angles):
            raise DomainError("angle numerators must lie in [0, M)")

    @property
    def n(self) -> int:
        return len(self.angles)


@dataclass(eq=False)
class FloatTuple:
    """n-tuple of complex values in double precision."""

    values: np.ndarray
    provenance: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)

    @property
    def n(self) -> int:
        return len(self.values)


def to_float(t: RootTuple) -> FloatTuple:
    """Evaluate the angle encoding, z_k = e(c_k / M)."""
    angles = np.array(t.angles, dtype=np.float64)
    values = np.exp(2j * np.pi * angles / t.M)
    return FloatTuple(values=values, provenance=dict(t.provenance))


def subtuple(t: RootTuple, indices: Sequence[int], note: str | None = None) -> RootTuple:
    """RootTuple restricted to the given index positions (order preserved)."""
    idx = list(indices)
    n = t.n
    if any(i < 0 or i >= n for i in idx):
        raise DomainError("subset index out of range")
    prov = {"construction": "subset", "base": dict(t.provenance), "indices": idx}
    if note:
        prov["note"] = note
    return RootTuple(M=t.M, angles=tuple(t.angles[i] for i in idx), provenance=prov)


def normalized(t: RootTuple) -> RootTuple:
    """Re-encode over the least common order (divide out gcd of angles and M)."""
    g = t.M
    for c in t.angles:
        g = math.gcd(g, c)
    if g == 1:
        return t
    return RootTuple(M=t.M // g, angles=tuple(c // g for c in t.angles),
                     provenance=dict(t.provenance))


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def montgomery(p: int) -> RootTuple:
    """Character twist of the p-th roots: z_k = chi(k) e(k/p), k = 1..p-1.

    Encoded over M = p(p-1): c_k = (p*ind(k) + (p-1)*k) mod M.  Every power
    sum out to nu = p(p-1) - 1 is a Gauss sum, a Ramanujan-type sum, or zero,
    so max |S(nu)| <= sqrt(p) on that whole range.
    """
    if p <= 2:
        raise DomainError(f"montgomery requires an odd prime, got {p}")
    ct = character_table(p)
    M = p * (p - 1)
    angles = tuple((p * ct.ind[k] + (p - 1) * k) % M for k in range(1, p))
    return RootTuple(M=M, angles=angles,
                     provenance={"construction": "montgomery", "p": p})


def montgomery_modified(n: int, m: int) -> RootTuple:
    """Restriction of the montgomery tuple for p = mn+1 to the m-th power
    residues of p.

    The n points are w_k = chi(k) e(k/p) at the residues k with m | ind(k).
    Averaging chi^{nj} over j = 1..m turns each S(nu) into a mean of m
    character sums with additive twist nu, every one of modulus at most
    sqrt(p) until nu reaches n*p, so max |S(nu)| <= sqrt(mn+1) for
    nu = 1..m n^2 + n - 1.  The output is sorted by angle and re-encoded over
    the least common order (m = 1 reproduces montgomery(p) exactly).
    """
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    p = m * n + 1
    if not is_prime(p):
        raise DomainError(f"m*n + 1 = {p} is not prime")
    ct = character_table(p)
    M0 = p * (p - 1)
    angles = [(p * ct.ind[k] + (p - 1) * k) % M0
              for k in range(1, p) if ct.ind[k] % m == 0]
    assert len(angles) == n
    g = M0
    for c in angles:
        g = math.gcd(g, c)
    return RootTuple(M=M0 // g, angles=tuple(sorted(c // g for c in angles)),
                     provenance={"construction": "montmod", "n": n, "m": m, "p": p})


def bose_tuple(q: int) -> RootTuple:
    """Sidon-set tuple of size q over M = q^2 - 1; max |S(nu)| <= sqrt(q) for
    nu = 1..q^2-2."""
    ds = bose_set(q)
    return RootTuple(M=ds.v, angles=ds.elements,
                     provenance={"construction": "bose", "q": q})


def singer_tuple(q: int) -> RootTuple:
    """Perfect-difference-set tuple of size q+1 over M = q^2+q+1.

    The spectrum is exactly flat: |S(nu)|^2 = q for every nu not divisible
    by M, which gives max |S(nu)| = sqrt(q) on nu = 1..(q+1)^2-(q+1).
    """
    ds = singer_set(q)
    return RootTuple(M=ds.v, angles=ds.elements,
                     provenance={"construction": "singer", "q": q})


def _max_abs_power_sum(values: np.ndarray, m: int) -> float:
    """max_{nu=1..m} |sum z_k^nu| by cumulative products (local helper)."""
    n = len(values)
    tile = np.broadcast_to(values, (m, n)).copy()
    powers = np.cumprod(tile, axis=0)
    return float(np.abs(powers.sum(axis=1)).max())


def erdos_renyi_bound_value(n: int, m: int) -> float:
    """sqrt(6 n log(m+1)), the random-tuple acceptance threshold."""
    return math.sqrt(6.0 * n * math.log(m + 1))


def erdos_renyi_random(n: int, m: int, seed: int,
                       max_retries: int = ERDOS_RENYI_RETRIES) -> FloatTuple:
    """Uniform random unimodular tuple with max_{nu<=m} |S(nu)| below the
    sqrt(6 n log(m+1)) threshold.

    Draws independent uniform angles and resamples until the bound holds
    (existence is guaranteed on average; a uniform draw passes with high
    probability).  Deterministic for a fixed seed.  Raises SearchError with
    the best attempt if max_retries draws all fail.
    """
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if max_retries < 1:
        raise DomainError("max_retries must be >= 1")
    bound = erdos_renyi_bound_value(n, m)
    rng = np.random.default_rng(seed)
    best_vals = None
    best_max = math.inf
    for attempt in range(1, max_retries + 1):
        values = np.exp(2j * np.pi * rng.random(n))
        achieved = _max_abs_power_sum(values, m)
        if achieved < best_max:
            best_max = achieved
            best_vals = values
        if achieved <= bound:
            return FloatTuple(values=values, provenance={
                "construction": "erdos-renyi", "n": n, "m": m, "seed": seed,
                "attempts": attempt, "bound": bound, "achieved": achieved})
    raise SearchError(
        f"no draw within sqrt(6 n log(m+1)) = {bound:.6g} after {max_retries} tries "
        f"(best {best_max:.6g})",
        best={"values": best_vals, "achieved": best_max, "bound": bound,
              "attempts": max_retries})


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def tuple_to_json(t: RootTuple | FloatTuple) -> dict:
    """JSON dict; the root form round-trips bit-exactly."""
    if isinstance(t, RootTuple):
        return {"kind": "root", "M": t.M, "angles": list(t.angles),
                "provenance": dict(t.provenance)}
    values = t.values
    return {"kind": "float", "re": values.real.tolist(), "im": values.imag.tolist()}


def tuple_from_json(obj: dict) -> RootTuple | FloatTuple:
    kind = obj.get("kind")
    if kind == "root":
        return RootTuple(M=int(obj["M"]), angles=tuple(int(c) for c in obj["angles"]),
                         provenance=dict(obj.get("provenance", {})))
    if kind == "float":
        values = np.array(obj["re"], dtype=np.float64) + 1j * np.array(obj["im"], dtype=np.float64)
        return FloatTuple(values=values)
    raise DomainError(f"unknown tuple kind {kind!r}")


def save_tuple(t: RootTuple | FloatTuple, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(tuple_to_json(t), fh)
        fh.write("\n")


def load_tuple(path) -> RootTuple | FloatTuple:
    with open(path, encoding="utf-8") as fh:
        return tuple_from_json(json.load(fh))
