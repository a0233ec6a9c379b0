"""Lower/upper bound checks on power-sum maxima, bundled into certificates.

Lower bounds (unconditional theorems, so a failure is a numerical regression):

  cassels_check          max_{nu=1..2n+1} Re S(nu) >= 0 for any complex tuple.
  andersson_lower_check  max_{nu=1..2nm-m(m+1)+1} |S(nu)| >= sqrt(m) whenever
                         every |z_k| >= 1 and 1 <= m <= n; m = n gives the
                         sqrt(n) bound on nu = 1..n^2-n+1.
  ncs_check              max_{nu=1..m} |S(nu)| >= sqrt(n (1 - (n-1)/m)) for
                         unimodular tuples and m >= n (Newman-Cassels-Szalay).

Reference values:

  erdos_renyi_bound      sqrt(6 n log(m+1)).
  envelope_A, envelope_B the piecewise (lower, upper) envelopes, in units of
                         sqrt(n), for the max over nu = 1..floor(alpha n^2),
                         for |z_k| >= 1 and |z_k| = 1 respectively.

full_certificate runs every applicable check plus the construction-specific
upper bound recorded in a RootTuple's provenance.  A failed inequality is a
result (pass=False), not an exception; violated preconditions raise.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .evaluator import PowerSumProfile, power_sums_direct, power_sums_fft
from .tuples import FloatTuple, RootTuple, tuple_to_json

LOWER_TOL = 1e-6
UNIMOD_SLACK = 1e-12


@dataclass(frozen=True)
class Check:
    """One inequality: achieved vs bound over an explicit nu range."""

    name: str
    nu_lo: int
    nu_hi: int
    bound: float
    achieved: float
    passed: bool
    kind: str  # "lower" or "upper"
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "nu_range": [self.nu_lo, self.nu_hi],
               "bound": self.bound, "achieved": self.achieved, "pass": self.passed,
               "kind": self.kind}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Certificate:
    tuple_digest: str
    checks: list[Check] = field(default_factory=list)
    tolerance: float = LOWER_TOL

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"tuple_digest": self.tuple_digest,
                "checks": [c.to_json() for c in self.checks],
                "tolerance": self.tolerance}


def tuple_digest(t: RootTuple | FloatTuple) -> str:
    blob = json.dumps(tuple_to_json(t), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _abs_values(t) -> np.ndarray:
    if isinstance(t, RootTuple):
        return np.ones(t.n)
    return np.abs(t.values)


def _require_modulus_at_least_one(t) -> None:
    if isinstance(t, RootTuple):
        return
    if len(t.values) and np.min(np.abs(t.values)) < 1.0 - UNIMOD_SLACK:
        raise DomainError("lower-bound checks require every |z_k| >= 1")


def _is_unimodular(t) -> bool:
    if isinstance(t, RootTuple):
        return True
    mods = np.abs(t.values)
    return bool(np.all(np.abs(mods - 1.0) <= 1e-9))


def _abs_profile(t, nu_hi: int, profile: PowerSumProfile | None) -> np.ndarray:
    """|S(nu)| for nu = 1..nu_hi, reusing a caller-supplied profile if it covers
    the range (profiles always start at nu_lo = 1 here)."""
    if profile is not None and profile.nu_lo == 1 and profile.nu_hi >= nu_hi:
        return profile.abs[:nu_hi]
    if isinstance(t, RootTuple):
        return power_sums_fft(t, nu_hi).abs
    return power_sums_direct(t, 1, nu_hi).abs


def cassels_check(t, profile: PowerSumProfile | None = None) -> Check:
    """max real part of S(nu) over nu = 1..2n+1 is nonnegative (any tuple)."""
    n = t.n
    if n < 1:
        raise DomainError("empty tuple")
    hi = 2 * n + 1
    if profile is not None and profile.values is not None \
            and profile.nu_lo == 1 and profile.nu_hi >= hi:
        reals = profile.values[:hi].real
    else:
        reals = power_sums_direct(t, 1, hi).values.real
    achieved = float(np.max(reals))
    return Check(name="cassels-real-part", nu_lo=1, nu_hi=hi, bound=0.0,
                 achieved=achieved, passed=achieved >= -1e-9 * n, kind="lower")


def andersson_lower_check(t, m: int, profile: PowerSumProfile | None = None) -> Check:
    """max |S(nu)| over nu = 1..2nm-m(m+1)+1 is at least sqrt(m)."""
    n = t.n
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    _require_modulus_at_least_one(t)
    hi = 2 * n * m - m * (m + 1) + 1
    achieved = float(np.max(_abs_profile(t, hi, profile)))
    bound = math.sqrt(m)
    return Check(name=f"andersson-lower-m{m}", nu_lo=1, nu_hi=hi, bound=bound,
                 achieved=achieved, passed=achieved >= bound - LOWER_TOL, kind="lower")


def ncs_lower_bound(n: int, m: int) -> float:
    """sqrt(n (1 - (n-1)/m)) for m >= n >= 1."""
    if not 1 <= n <= m:
        raise DomainError(f"need m >= n >= 1, got n={n}, m={m}")
    return math.sqrt(n * (1.0 - (n - 1) / m))


def ncs_check(t, m: int, profile: PowerSumProfile | None = None) -> Check:
    """Companion check: a unimodular tuple's max over nu = 1..m meets the
    Newman-Cassels-Szalay bound."""
    n = t.n
    bound = ncs_lower_bound(n, m)
    if not _is_unimodular(t):
        raise DomainError("the Newman-Cassels-Szalay bound assumes |z_k| = 1")
    achieved = float(np.max(_abs_profile(t, m, profile)))
    return Check(name=f"ncs-lower-m{m}", nu_lo=1, nu_hi=m, bound=bound,
                 achieved=achieved, passed=achieved >= bound - LOWER_TOL, kind="lower")


def erdos_renyi_bound(n: int, m: int) -> float:
    """sqrt(6 n log(m+1))."""
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    return math.sqrt(6.0 * n * math.log(m + 1))


# ---------------------------------------------------------------------------
# Envelope functions (values in units of sqrt(n))
# ---------------------------------------------------------------------------

def envelope_A(alpha: float) -> tuple[float, float]:
    """(lower, upper) envelope for tuples with |z_k| >= 1, max over
    nu = 1..floor(alpha n^2).

    lower: 1 - sqrt(1 - alpha) on 0 < alpha <= 1, then 1.
    upper: 1 on (0,1], sqrt(2) on (1,2], sqrt(3) on (2,3], 2 beyond.
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    lower = 1.0 - math.sqrt(1.0 - alpha) if alpha <= 1.0 else 1.0
    if alpha <= 1.0:
        upper = 1.0
    elif alpha <= 2.0:
        upper = math.sqrt(2.0)
    elif alpha <= 3.0:
        upper = math.sqrt(3.0)
    else:
        upper = 2.0
    return lower, upper


def envelope_B(alpha: float) -> tuple[float, float]:
    """(lower, upper) envelope for unimodular tuples.

    lower: 1 on (0,1], sqrt(3/2 - 1/(2 alpha)) on [1,3], sqrt(2 - 2/alpha)
    beyond; the branches agree at alpha = 1 and alpha = 3.  upper: as in
    envelope_A.
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if alpha <= 1.0:
        lower = 1.0
    elif alpha <= 3.0:
        lower = math.sqrt(1.5 - 0.5 / alpha)
    else:
        lower = math.sqrt(2.0 - 2.0 / alpha)
    return lower, envelope_A(alpha)[1]


# ---------------------------------------------------------------------------
# Bundled certificate
# ---------------------------------------------------------------------------

def construction_upper_bound(t: RootTuple) -> tuple[float, int, str] | None:
    """(bound, nu_hi, note) certified by the tuple's construction, if any."""
    prov = dict(t.provenance)
    kind = prov.get("construction")
    n = t.n
    if kind == "montgomery":
        p = int(prov["p"])
        return math.sqrt(p), n * n + n - 1, ""
    if kind == "montmod":
        p, m = int(prov["p"]), int(prov["m"])
        return math.sqrt(p), m * n * n + n - 1, ""
    if kind == "bose":
        q = int(prov["q"])
        return math.sqrt(q), q * q - 2, ""
    if kind == "singer":
        q = int(prov["q"])
        return math.sqrt(q), n * n - n, ""
    if kind == "trimmed":
        base = prov.get("base")
        param = int(prov["param"])
        dropped = int(prov["dropped"])
        if base == "montgomery":
            base_bound, base_hi = math.sqrt(param), (param - 1) * param - 1
        elif base == "bose":
            base_bound, base_hi = math.sqrt(param), param * param - 2
        elif base == "singer":
            base_bound, base_hi = math.sqrt(param), param * param + param
        else:
            return None
        note = ""
        if base == "singer" and dropped == 1 and param == n:
            # bound sqrt(n) + 1 for n a prime power; typo-corrected reading
            note = "typo-corrected"
        return base_bound + dropped, min(n * n, base_hi), note
    return None


def full_certificate(t: RootTuple | FloatTuple) -> Certificate:
    """Run every applicable check on one profile pass.

    Lower checks: Cassels, the sqrt(m) bound at m in {1, floor(n/2), n},
    and the Newman-Cassels-Szalay companion at m = n^2 (unimodular tuples
    only).  Upper check: whatever the construction provenance certifies.
    Raises DomainError if some |z_k| < 1; a failed inequality is recorded,
    not raised.
    """
    n = t.n
    if n < 1:
        raise DomainError("empty tuple")
    _require_modulus_at_least_one(t)
    unimodular = _is_unimodular(t)

    ms = sorted({1, max(1, n // 2), n})
    needed = max([2 * n + 1] + [2 * n * m - m * (m + 1) + 1 for m in ms])
    upper = construction_upper_bound(t) if isinstance(t, RootTuple) else None
    if unimodular:
        needed = max(needed, n * n)
    if upper is not None:
        needed = max(needed, upper[1])
    if isinstance(t, RootTuple):
        profile = power_sums_fft(t, needed, with_values=True)
    else:
        profile = power_sums_direct(t, 1, needed)

    checks = [cassels_check(t, profile)]
    checks.extend(andersson_lower_check(t, m, profile) for m in ms)
    if unimodular:
        checks.append(ncs_check(t, n * n, profile))
    if upper is not None:
        bound, hi, note = upper
        achieved = float(np.max(profile.abs[:hi]))
        checks.append(Check(name=f"{t.provenance.get('construction')}-upper",
                            nu_lo=1, nu_hi=hi, bound=bound, achieved=achieved,
                            passed=achieved <= bound + LOWER_TOL, kind="upper",
                            note=note))
    return Certificate(tuple_digest=tuple_digest(t), checks=checks, tolerance=LOWER_TOL)
