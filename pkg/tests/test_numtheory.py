import math

import numpy as np
import pytest

from turan10 import numtheory as nt
from turan10.errors import DomainError, ResourceError


def naive_is_prime(n):
    """Trial-division oracle, independent of the package's sieve."""
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


class TestPrimes:
    def test_sieve_small(self):
        assert nt.sieve_primes(10) == [2, 3, 5, 7]
        assert nt.sieve_primes(2) == [2]

    def test_sieve_vs_trial_division(self):
        expected = [k for k in range(2, 101) if naive_is_prime(k)]
        got = nt.sieve_primes(100)
        assert got == expected
        assert len(got) == 25 and got[-1] == 97

    def test_sieve_empty_domain(self):
        with pytest.raises(DomainError):
            nt.sieve_primes(1)

    def test_next_prime(self):
        assert nt.next_prime(10) == 11
        assert nt.next_prime(4) == 5
        p = nt.next_prime(113)
        assert p == 127
        assert all(not naive_is_prime(k) for k in range(114, 127))

    def test_next_prime_domain(self):
        with pytest.raises(DomainError):
            nt.next_prime(0)

    def test_next_prime_in_progression(self):
        assert nt.next_prime_in_progression(4, 3) == 13
        assert nt.next_prime_in_progression(1, 1) == 2
        assert nt.next_prime_in_progression(5, 4) == 29

    def test_progression_minimality(self):
        for n in range(1, 8):
            for m in range(1, 7):
                p = nt.next_prime_in_progression(n, m)
                assert naive_is_prime(p) and p % m == 1 % m and p >= m * n + 1
                smaller = [q for q in range(m * n + 1, p)
                           if naive_is_prime(q) and q % m == 1 % m]
                assert not smaller

    def test_prime_power(self):
        assert nt.is_prime_power(8) == (2, 3)
        assert nt.is_prime_power(7) == (7, 1)
        assert nt.is_prime_power(12) is None
        assert nt.is_prime_power(1) is None
        assert nt.next_prime_power(6) == 7
        assert nt.next_prime_power(26) == 27


class TestCharacters:
    def test_primitive_root_examples(self):
        # oracle: exhaustive multiplicative-order check
        def order(g, p):
            k, v = 1, g % p
            while v != 1:
                v = v * g % p
                k += 1
            return k

        for p, expected in [(7, 3), (5, 2), (3, 2)]:
            g = nt.primitive_root(p)
            assert g == expected
            assert order(g, p) == p - 1
            assert all(order(h, p) < p - 1 for h in range(2, g))

    def test_primitive_root_domain(self):
        for bad in (2, 9, 15):
            with pytest.raises(DomainError):
                nt.primitive_root(bad)

    def test_character_table_examples(self):
        ct = nt.character_table(5)
        assert ct.g == 2
        assert {k: ct.ind[k] for k in range(1, 5)} == {1: 0, 2: 1, 4: 2, 3: 3}
        ct3 = nt.character_table(3)
        assert {k: ct3.ind[k] for k in range(1, 3)} == {1: 0, 2: 1}
        assert nt.character_table(7).ind[6] == 3  # 3**3 = 27 == 6 (mod 7)

    def test_index_bijection_and_powering(self):
        for p in (5, 13, 31):
            ct = nt.character_table(p)
            vals = [ct.ind[k] for k in range(1, p)]
            assert sorted(vals) == list(range(p - 1))
            assert ct.ind[1] == 0
            for k in range(1, p):
                assert pow(ct.g, ct.ind[k], p) == k

    def test_complete_multiplicativity(self):
        # index addition mod p-1 realizes chi(ab) = chi(a) chi(b), all p <= 97
        for p in nt.sieve_primes(97):
            if p == 2:
                continue
            ind = np.array(nt.character_table(p).ind)
            a = np.arange(1, p)
            prod = (a[:, None] * a[None, :]) % p
            lhs = ind[prod]
            rhs = (ind[a][:, None] + ind[a][None, :]) % (p - 1)
            assert np.array_equal(lhs, rhs), p

    def test_determinism(self):
        assert nt.character_table(97) is nt.character_table(97)
        a = nt.CharacterTable(97, nt.character_table(97).g, nt.character_table(97).ind)
        assert a == nt.character_table(97)


class TestGaussSums:
    def test_case_table_examples(self):
        assert nt.gauss_sum_magnitude(5, 1, 1) == pytest.approx(math.sqrt(5), abs=1e-12)
        assert nt.gauss_sum_magnitude(5, 0, 1) == pytest.approx(1.0, abs=1e-12)
        assert nt.gauss_sum_magnitude(5, 2, 10) == pytest.approx(0.0, abs=1e-12)
        assert nt.gauss_sum_magnitude(7, 0, 14) == pytest.approx(6.0, abs=1e-12)

    def test_small_primes_full_table(self):
        cases, worst = nt.verify_gauss_table(19)
        assert cases == sum((p - 1) * (2 * p + 1) for p in (3, 5, 7, 11, 13, 17, 19))
        assert worst <= 1e-9 * math.sqrt(3)


class TestFiniteFields:
    def test_prime_field(self):
        f = nt.finite_field(2, 1)
        assert f.theta == (1,)
        assert f.q == 2

    def test_f9_modulus_least_irreducible(self):
        f = nt.finite_field(3, 2)
        # oracle: exhaustive no-root scan over monic quadratics in encoding order
        def has_root(a0, a1):
            return any((x * x + a1 * x + a0) % 3 == 0 for x in range(3))

        least = None
        for code in range(9):
            a0, a1 = code % 3, code // 3
            if not has_root(a0, a1):
                least = (a0, a1, 1)
                break
        assert f.modulus == least == (1, 0, 1)  # x^2 + 1

    def test_f8_modulus(self):
        f = nt.finite_field(2, 3)
        assert f.modulus == (1, 1, 0, 1)  # x^3 + x + 1

    def test_theta_generates(self):
        for r, s in [(2, 3), (3, 2), (5, 2), (2, 4)]:
            f = nt.finite_field(r, s)
            exp, log = f.exp_log_tables()
            assert len(set(exp)) == f.q - 1
            assert log[f.encode(f.one)] == 0

    def test_caps_and_domains(self):
        with pytest.raises(ResourceError):
            nt.finite_field(2, 30)
        with pytest.raises(DomainError):
            nt.finite_field(4, 1)
        with pytest.raises(DomainError):
            nt.finite_field(3, 0)


def singer_difference_counts(ds):
    counts = {}
    for a in ds.elements:
        for b in ds.elements:
            if a != b:
                d = (a - b) % ds.v
                counts[d] = counts.get(d, 0) + 1
    return counts


class TestDifferenceSets:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
    def test_singer_perfect(self, q):
        ds = nt.singer_set(q)
        assert ds.kind == "singer" and ds.v == q * q + q + 1
        assert len(ds.elements) == q + 1
        counts = singer_difference_counts(ds)
        assert all(counts.get(d, 0) == 1 for d in range(1, ds.v))

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
    def test_bose_sidon(self, q):
        ds = nt.bose_set(q)
        assert ds.kind == "bose" and ds.v == q * q - 1
        assert len(ds.elements) == q
        seen = set()
        for i, a in enumerate(ds.elements):
            for j, b in enumerate(ds.elements):
                if i != j:
                    d = (a - b) % ds.v
                    assert d not in seen
                    seen.add(d)

    def test_singer_q2_matches_classical(self):
        # {0, 1, 3} is a rotation of the classical {1, 2, 4} mod 7
        got = set(nt.singer_set(2).elements)
        assert any({(x + s) % 7 for x in got} == {1, 2, 4} for s in range(7))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            nt.singer_set(6)
        with pytest.raises(DomainError):
            nt.bose_set(12)

    def test_singer_cap(self):
        with pytest.raises(ResourceError):
            nt.singer_set(127)  # 127^3 > 2^20

    def test_json_schema(self):
        d = nt.bose_set(3).to_json()
        assert d == {"kind": "bose", "q": 3, "v": 8, "elements": [1, 6, 7]}

    def test_determinism(self):
        assert nt.singer_set(8).elements == nt.singer_set(8).elements
        assert nt.bose_set(9) == nt.bose_set(9)
