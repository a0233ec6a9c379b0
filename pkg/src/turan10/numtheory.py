"""Elementary and finite-field number theory behind the tuple constructions.

Primes and primitive roots; discrete-log tables realizing a multiplicative
character of maximal order p-1 via chi(k) = e(ind_g(k)/(p-1)); Gauss-sum
magnitude evaluation; small finite-field extensions F_{r^s} with deterministic
modulus/generator choices; and the two classical difference-set constructions
the flat-spectrum tuples rest on:

  * Singer: a perfect (q^2+q+1, q+1, 1) difference set, read off as discrete
    logs of a projective line of F_{q^3} reduced mod q^2+q+1;
  * Bose: a Sidon set of size q in Z_{q^2-1}, the discrete logs of theta + a
    for a in F_q, theta a generator of F_{q^2}^*.

Everything here is exact integer arithmetic except gauss_sum_magnitude, which
sums unit complex numbers in double precision.  All outputs are deterministic
functions of their inputs; repeated calls are served from caches of immutable
objects, so sharing across threads is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceError

# Fields are built up to this many elements (Singer needs all of F_{q^3}).
DEFAULT_FIELD_CAP = 1 << 20


# ---------------------------------------------------------------------------
# Primes
# ---------------------------------------------------------------------------

def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending, by Eratosthenes."""
    if limit < 2:
        raise DomainError(f"no primes exist below 2 (limit={limit})")
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            start = p * p
            sieve[start:limit + 1:p] = b"\x00" * ((limit - start) // p + 1)
    return [i for i in range(limit + 1) if sieve[i]]


def is_prime(n: int) -> bool:
    """Deterministic trial division; all uses here are desk-scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n (n >= 1)."""
    if n < 1:
        raise DomainError(f"next_prime requires n >= 1, got {n}")
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


def next_prime_in_progression(n: int, m: int) -> int:
    """Smallest prime p with p == 1 (mod m) and p >= m*n + 1."""
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    k = n
    while True:
        p = m * k + 1
        if is_prime(p):
            return p
        k += 1


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: e} by trial division."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_power(n: int) -> tuple[int, int] | None:
    """(r, s) with n = r**s and r prime, or None."""
    if n < 2:
        return None
    fac = factorize(n)
    if len(fac) != 1:
        return None
    ((r, s),) = fac.items()
    return r, s


def next_prime_power(n: int) -> int:
    """Smallest prime power >= max(n, 2)."""
    k = max(n, 2)
    while is_prime_power(k) is None:
        k += 1
    return k


# ---------------------------------------------------------------------------
# Characters mod p of maximal order
# ---------------------------------------------------------------------------

def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p (p an odd prime)."""
    if p <= 2 or not is_prime(p):
        raise DomainError(f"primitive_root requires an odd prime, got {p}")
    factors = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable: every odd prime has a primitive root")


@dataclass(frozen=True)
class CharacterTable:
    """Discrete logs base the least primitive root g mod p.

    ind[k] is the index of k, i.e. g**ind[k] == k (mod p), for k = 1..p-1
    (slot 0 is unused).  The character of order p-1 used throughout is
    chi(k) = e(ind[k] / (p-1)), so chi(g) = e(1/(p-1)) and chi(1) = 1.
    """

    p: int
    g: int
    ind: tuple[int, ...]


@lru_cache(maxsize=256)
def character_table(p: int) -> CharacterTable:
    """Index table mod p; raises DomainError unless p is an odd prime."""
    g = primitive_root(p)
    ind = [0] * p
    val = 1
    for i in range(p - 1):
        ind[val] = i
        val = val * g % p
    return CharacterTable(p=p, g=g, ind=tuple(ind))


@lru_cache(maxsize=256)
def _char_arrays(p: int) -> tuple[np.ndarray, np.ndarray]:
    ct = character_table(p)
    k = np.arange(1, p, dtype=np.int64)
    ind = np.array(ct.ind[1:], dtype=np.int64)
    return k, ind


def gauss_sum_magnitude(p: int, j: int, a: int) -> float:
    """| sum_{k=1}^{p-1} chi^j(k) e(k a / p) | by direct summation.

    With chi of order p-1 this is sqrt(p) for p not dividing a and j != 0
    (mod p-1), 1 for p not dividing a and trivial character, 0 for p | a and
    nontrivial character, and p-1 in the doubly degenerate case.
    """
    k, ind = _char_arrays(p)
    modulus = p * (p - 1)
    # Reduce the phase numerators exactly in integers before going to floats.
    nums = (j * ind * p + a * k * (p - 1)) % modulus
    return float(abs(np.exp(2j * np.pi * nums / modulus).sum()))


def expected_gauss_magnitude(p: int, j: int, a: int) -> float:
    """Case table for the magnitude above."""
    trivial = j % (p - 1) == 0
    if a % p == 0:
        return float(p - 1) if trivial else 0.0
    return 1.0 if trivial else math.sqrt(p)


def verify_gauss_table(pmax: int) -> tuple[int, float]:
    """Check every (p, j, a) with odd prime p <= pmax, j in 0..p-2, a in 0..2p.

    Returns (number of cases, worst absolute error).  Raises AssertionError on
    the first case off by more than 1e-9 * sqrt(p).
    """
    cases = 0
    worst = 0.0
    for p in sieve_primes(pmax):
        if p == 2:
            continue
        tol = 1e-9 * math.sqrt(p)
        for j in range(p - 1):
            for a in range(2 * p + 1):
                err = abs(gauss_sum_magnitude(p, j, a) - expected_gauss_magnitude(p, j, a))
                if err > tol:
                    raise AssertionError(
                        f"gauss magnitude off at p={p} j={j} a={a}: err={err:.3e}")
                worst = max(worst, err)
                cases += 1
    return cases, worst


# ---------------------------------------------------------------------------
# Finite fields F_{r^s}
# ---------------------------------------------------------------------------

class FiniteField:
    """F_{r^s} as polynomials over Z_r modulo a fixed monic irreducible.

    Elements are coefficient tuples of length s, little-endian (constant term
    first).  The modulus is the lexicographically least monic irreducible in
    the integer encoding sum(c_i * r^i) of its non-leading coefficients, and
    theta is the least element (same encoding) generating the multiplicative
    group; both choices make every downstream construction reproducible.
    """

    def __init__(self, r: int, s: int, modulus: tuple[int, ...], theta: tuple[int, ...]):
        self.r = r
        self.s = s
        self.q = r ** s
        self.modulus = modulus
        self.theta = theta
        self._exp: list[int] | None = None
        self._log: dict[int, int] | None = None

    def __repr__(self):
        return f"FiniteField(r={self.r}, s={self.s}, q={self.q})"

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.s

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.s - 1)

    def encode(self, a: tuple[int, ...]) -> int:
        code = 0
        for c in reversed(a):
            code = code * self.r + c
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.s):
            out.append(code % self.r)
            code //= self.r
        return tuple(out)

    def add(self, a, b):
        return tuple((x + y) % self.r for x, y in zip(a, b))

    def mul(self, a, b):
        r, s = self.r, self.s
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for jj, y in enumerate(b):
                    prod[i + jj] = (prod[i + jj] + x * y) % r
        # reduce by the monic modulus: x^s = -(lower part)
        low = self.modulus[:s]
        for i in range(2 * s - 2, s - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for jj in range(s):
                    prod[i - s + jj] = (prod[i - s + jj] - c * low[jj]) % r
        return tuple(prod[:s])

    def pow(self, a, e: int):
        result = self.one
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def exp_log_tables(self) -> tuple[list[int], dict[int, int]]:
        """exp[i] = encode(theta**i) for i in 0..q-2, and its inverse map."""
        if self._exp is None:
            exp: list[int] = []
            log: dict[int, int] = {}
            cur = self.one
            for i in range(self.q - 1):
                code = self.encode(cur)
                exp.append(code)
                log[code] = i
                cur = self.mul(cur, self.theta)
            self._exp = exp
            self._log = log
        return self._exp, self._log

    def dlog(self, a) -> int:
        _, log = self.exp_log_tables()
        code = self.encode(a)
        if code not in log:
            raise DomainError("discrete log of zero is undefined")
        return log[code]


def _poly_divisible(f: list[int], g: list[int], r: int) -> bool:
    """Whether monic g divides f over Z_r (f consumed as a copy)."""
    rem = list(f)
    dg = len(g) - 1
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            rem[i] = 0
            for jj in range(dg):
                rem[i - dg + jj] = (rem[i - dg + jj] - c * g[jj]) % r
    return not any(rem)


def _is_irreducible(coeffs: list[int], r: int) -> bool:
    """Monic poly (little-endian, leading 1) irreducible over Z_r.

    Trial division by all monic polynomials of degree 1..deg/2; field sizes
    here are small enough that this is instant.
    """
    s = len(coeffs) - 1
    if s == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False
    for d in range(1, s // 2 + 1):
        for code in range(r ** d):
            g = []
            c = code
            for _ in range(d):
                g.append(c % r)
                c //= r
            g.append(1)
            if _poly_divisible(coeffs, g, r):
                return False
    return True


_FIELD_CACHE: dict[tuple[int, int], FiniteField] = {}


def finite_field(r: int, s: int, cap: int = DEFAULT_FIELD_CAP) -> FiniteField:
    """Construct F_{r^s} with the deterministic modulus and generator.

    Raises DomainError unless r is prime and s >= 1, and ResourceError when
    r**s exceeds the cap (the full multiplicative group is tabulated, so the
    cap bounds memory).
    """
    if s < 1 or not is_prime(r):
        raise DomainError(f"finite_field needs prime r and s >= 1, got r={r}, s={s}")
    q = r ** s
    if q > cap:
        raise ResourceError(f"field size {r}^{s} = {q} exceeds cap {cap}")
    key = (r, s)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]

    modulus = None
    for code in range(q):
        coeffs = []
        c = code
        for _ in range(s):
            coeffs.append(c % r)
            c //= r
        coeffs.append(1)
        if _is_irreducible(coeffs, r):
            modulus = tuple(coeffs)
            break
    assert modulus is not None

    field = FiniteField(r, s, modulus, (0,) * s)
    factors = list(factorize(q - 1)) if q > 2 else []
    theta = None
    for code in range(1, q):
        cand = field.decode(code)
        if all(field.pow(cand, (q - 1) // f) != field.one for f in factors):
            theta = cand
            break
    assert theta is not None
    field.theta = theta
    _FIELD_CACHE[key] = field
    return field


# ---------------------------------------------------------------------------
# Difference sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DifferenceSet:
    """Residues mod v whose pairwise differences are controlled.

    kind "singer": q+1 residues mod v = q^2+q+1 hitting every nonzero residue
    exactly once as a difference.  kind "bose": q residues mod v = q^2-1 with
    all pairwise differences distinct (a Sidon set).
    """

    v: int
    elements: tuple[int, ...]
    kind: str
    q: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "q": self.q, "v": self.v,
                "elements": list(self.elements)}


def _subfield_codes(field: FiniteField, q: int) -> list[int]:
    """Packed codes of the subfield of size q inside field (q-1 | field.q-1)."""
    exp, _ = field.exp_log_tables()
    stride = (field.q - 1) // (q - 1)
    codes = [field.encode(field.zero)]
    codes.extend(exp[i * stride] for i in range(q - 1))
    return codes


@lru_cache(maxsize=64)
def singer_set(q: int, cap: int = DEFAULT_FIELD_CAP) -> DifferenceSet:
    """Perfect (q^2+q+1, q+1, 1) difference set for a prime power q.

    Take F_{q^3} with generator g.  The nonzero points of the plane through 1
    and g, {a + b*g : a, b in F_q}, fall into q+1 classes under F_q^* scaling;
    their discrete logs mod q^2+q+1 are the difference set.
    """
    pw = is_prime_power(q)
    if pw is None:
        raise DomainError(f"{q} is not a prime power")
    r, s = pw
    if q ** 3 > cap:
        raise ResourceError(f"Singer construction needs field size {q}^3 > cap {cap}")
    field = finite_field(r, 3 * s, cap=cap)
    v = q * q + q + 1
    _, log = field.exp_log_tables()
    g = field.theta
    sub = [field.decode(c) for c in _subfield_codes(field, q)]
    residues: set[int] = set()
    for a in sub:
        for b in sub:
            if not any(a) and not any(b):
                continue
            x = field.add(a, field.mul(b, g))
            residues.add(log[field.encode(x)] % v)
    elements = tuple(sorted(residues))
    if len(elements) != q + 1:
        raise AssertionError(f"Singer set size {len(elements)} != q+1 for q={q}")
    return DifferenceSet(v=v, elements=elements, kind="singer", q=q)


@lru_cache(maxsize=64)
def bose_set(q: int, cap: int = DEFAULT_FIELD_CAP) -> DifferenceSet:
    """Sidon set {dlog_theta(theta + a) : a in F_q} of size q in Z_{q^2-1}."""
    pw = is_prime_power(q)
    if pw is None:
        raise DomainError(f"{q} is not a prime power")
    r, s = pw
    if q * q > cap:
        raise ResourceError(f"Bose construction needs field size {q}^2 > cap {cap}")
    field = finite_field(r, 2 * s, cap=cap)
    _, log = field.exp_log_tables()
    theta = field.theta
    sub = [field.decode(c) for c in _subfield_codes(field, q)]
    elements = tuple(sorted(log[field.encode(field.add(theta, a))] for a in sub))
    if len(elements) != q:
        raise AssertionError(f"Bose set size {len(elements)} != q for q={q}")
    return DifferenceSet(v=q * q - 1, elements=elements, kind="bose", q=q)
