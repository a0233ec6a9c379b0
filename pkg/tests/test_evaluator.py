import math

import numpy as np
import pytest

from turan10 import evaluator as ev
from turan10.errors import DomainError, ResourceError
from turan10.tuples import (FloatTuple, RootTuple, montgomery, singer_tuple,
                            subtuple, to_float)


def random_root_tuple(rng, n_max=64, m_max=10_000):
    n = int(rng.integers(1, n_max + 1))
    M = int(rng.integers(2, m_max + 1))
    angles = tuple(int(a) for a in rng.integers(0, M, size=n))
    return RootTuple(M=M, angles=angles)


def random_unimodular(rng, n):
    return FloatTuple(np.exp(2j * np.pi * rng.random(n)))


class TestDirect:
    def test_all_ones(self):
        t = FloatTuple(np.ones(3, dtype=complex))
        prof = ev.power_sums_direct(t, 1, 5)
        assert np.allclose(prof.abs, 3.0, atol=0)
        assert prof.max_abs == 3.0 and prof.argmax_nu == 1

    def test_plus_minus_one(self):
        t = FloatTuple(np.array([1.0, -1.0]))
        prof = ev.power_sums_direct(t, 1, 3)
        assert np.allclose(prof.abs, [0.0, 2.0, 0.0], atol=1e-15)
        assert prof.max_abs == 2.0 and prof.argmax_nu == 2

    def test_montgomery5(self):
        prof = ev.power_sums_direct(montgomery(5), 1, 19)
        assert prof.max_abs <= math.sqrt(5) + 1e-9

    def test_nu_lo_offset(self):
        t = random_unimodular(np.random.default_rng(0), 6)
        full = ev.power_sums_direct(t, 1, 30)
        part = ev.power_sums_direct(t, 11, 30)
        assert np.allclose(part.abs, full.abs[10:], atol=1e-12)
        assert part.nu_lo == 11

    def test_block_boundary_consistency(self, monkeypatch):
        # blocking must not change the result beyond ulp-level rounding (the
        # boundary multiply runs outside the cumprod kernel)
        t = random_unimodular(np.random.default_rng(5), 7)
        ref = ev.power_sums_direct(t, 1, 200).values
        monkeypatch.setattr(ev, "_DIRECT_BLOCK_ELEMS", 16)
        small = ev.power_sums_direct(t, 1, 200).values
        assert np.allclose(ref, small, rtol=0, atol=1e-10)

    def test_errors(self):
        with pytest.raises(DomainError):
            ev.power_sums_direct(FloatTuple(np.array([], dtype=complex)), 1, 5)
        with pytest.raises(DomainError):
            ev.power_sums_direct(FloatTuple(np.ones(2, dtype=complex)), 3, 2)


class TestFFT:
    def test_all_angles_zero(self):
        t = RootTuple(M=6, angles=(0, 0, 0, 0))
        prof = ev.power_sums_fft(t, 12)
        assert np.allclose(prof.abs, 4.0, atol=1e-12)

    def test_singer2_profile(self):
        t = singer_tuple(2)
        prof = ev.power_sums_fft(t, 7)
        oracle = ev.power_sums_direct(t, 1, 7)
        assert np.allclose(prof.abs, oracle.abs, atol=1e-10)
        assert np.allclose(prof.abs[:6], math.sqrt(2), atol=1e-9)
        assert prof.abs[6] == pytest.approx(3.0, abs=1e-9)

    def test_montgomery101_spot_check(self):
        t = montgomery(101)
        hi = 100 * 100 + 100 - 1
        prof = ev.power_sums_fft(t, hi)
        rng = np.random.default_rng(7)
        for nu in rng.integers(1, hi + 1, size=1000):
            nu = int(nu)
            d = ev.power_sums_direct(t, nu, nu)
            assert abs(prof.abs[nu - 1] - d.abs[0]) <= 1e-8 * t.n

    def test_agreement_random_tuples(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            t = random_root_tuple(rng)
            fft = ev.power_sums_fft(t, t.M)
            direct = ev.power_sums_direct(t, 1, t.M)
            assert np.max(np.abs(fft.abs - direct.abs)) <= 1e-8 * t.n

    def test_periodicity_exact(self):
        rng = np.random.default_rng(3)
        t = random_root_tuple(rng, n_max=16, m_max=200)
        prof = ev.power_sums_fft(t, 3 * t.M)
        base = prof.abs[:t.M]
        assert np.array_equal(prof.abs[t.M:2 * t.M], base)
        assert np.array_equal(prof.abs[2 * t.M:3 * t.M], base)

    def test_conjugate_symmetry_on_direct_path(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            t = random_root_tuple(rng, n_max=12, m_max=400)
            direct = ev.power_sums_direct(t, 1, t.M - 1)
            sym = direct.abs[::-1]  # |S(M - nu)| over the same range
            assert np.allclose(direct.abs, sym, atol=1e-9 * t.n)

    def test_complex_values_match_direct(self):
        t = montgomery(13)
        prof = ev.power_sums_fft(t, 50, with_values=True)
        oracle = ev.power_sums_direct(t, 1, 50)
        assert np.allclose(prof.values, oracle.values, atol=1e-9)

    def test_memory_cap(self, monkeypatch):
        monkeypatch.setenv("TURAN10_MAX_FFT_LEN", "100")
        with pytest.raises(ResourceError):
            ev.power_sums_fft(montgomery(101), 10)

    def test_argmax_smallest_nu(self):
        t = RootTuple(M=4, angles=(0, 2))  # |S| = 0, 2, 0, 2, ...
        prof = ev.power_sums_fft(t, 8)
        assert prof.max_abs == pytest.approx(2.0, abs=1e-12)
        assert prof.argmax_nu == 2


class TestDistinct:
    def test_m1_is_classical(self):
        rng = np.random.default_rng(1)
        t = random_unimodular(rng, 5)
        for nu in (1, 3, 7):
            assert ev.distinct_power_sum(t, [nu]) == pytest.approx(
                complex(ev.power_sums_direct(t, nu, nu).values[0]), abs=1e-12)

    def test_two_injections(self):
        rng = np.random.default_rng(2)
        z = np.exp(2j * np.pi * rng.random(2))
        t = FloatTuple(z)
        got = ev.distinct_power_sum(t, [2, 5])
        expected = z[0] ** 2 * z[1] ** 5 + z[1] ** 2 * z[0] ** 5
        assert got == pytest.approx(expected, abs=1e-12)

    def test_lemma_identity_n3(self):
        rng = np.random.default_rng(3)
        t = random_unimodular(rng, 3)
        s1 = ev.distinct_power_sum(t, [1])
        s2 = ev.distinct_power_sum(t, [2])
        s3 = ev.distinct_power_sum(t, [3])
        assert ev.distinct_power_sum(t, [1, 2]) == pytest.approx(s1 * s2 - s3, abs=1e-10)

    def test_m_exceeds_n(self):
        t = random_unimodular(np.random.default_rng(0), 2)
        assert ev.distinct_power_sum(t, [1, 2, 3]) == 0

    def test_resource_cap(self):
        t = random_unimodular(np.random.default_rng(0), 10)
        with pytest.raises(ResourceError):
            ev.distinct_power_sum(t, [1] * 7)


class TestPartitionExpansion:
    def test_m1_trivial(self):
        t = random_unimodular(np.random.default_rng(4), 4)
        ok, residual = ev.partition_expansion_check(t, [5])
        assert ok and residual <= 1e-12

    def test_m2_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            t = random_unimodular(rng, int(rng.integers(2, 8)))
            ok, residual = ev.partition_expansion_check(t, [1, 2])
            assert ok and residual <= 1e-10

    def test_m3_n5(self):
        t = random_unimodular(np.random.default_rng(6), 5)
        ok, residual = ev.partition_expansion_check(t, [1, 2, 3])
        assert ok and residual <= 1e-9

    def test_caps(self):
        t = random_unimodular(np.random.default_rng(0), 9)
        with pytest.raises(ResourceError):
            ev.partition_expansion_check(t, [1, 2])
        t = random_unimodular(np.random.default_rng(0), 4)
        with pytest.raises(ResourceError):
            ev.partition_expansion_check(t, [1, 2, 3, 4, 5])


class TestSubsetMoment:
    def test_singleton(self):
        t = montgomery(7)
        assert ev.subset_moment(t, [2], N=2, nu_hi=33) == pytest.approx(33.0, abs=1e-8)

    def test_antipodal_hand_value(self):
        t = RootTuple(M=2, angles=(0, 1))
        assert ev.subset_moment(t, [0, 1], N=2, nu_hi=4) == pytest.approx(32.0, abs=1e-9)

    def test_full_montgomery5_vs_direct_oracle(self):
        t = montgomery(5)
        got = ev.subset_moment(t, range(4), N=1, nu_hi=19)
        oracle = float(np.sum(ev.power_sums_direct(t, 1, 19).abs ** 2))
        assert got == pytest.approx(oracle, rel=1e-12)
        assert got <= 19 * 5 + 1e-9

    def test_errors(self):
        t = montgomery(5)
        with pytest.raises(DomainError):
            ev.subset_moment(t, [], N=1, nu_hi=5)
        with pytest.raises(DomainError):
            ev.subset_moment(t, [0], N=0, nu_hi=5)


class TestSubsetAdditivity:
    def test_full_equals_subset_plus_complement(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            t = random_root_tuple(rng, n_max=20, m_max=500)
            if t.n < 2:
                continue
            k = int(rng.integers(1, t.n))
            idx = sorted(rng.choice(t.n, size=k, replace=False).tolist())
            comp = [i for i in range(t.n) if i not in set(idx)]
            hi = min(t.M, 300)
            full = ev.power_sums_direct(t, 1, hi).values
            a = ev.power_sums_direct(subtuple(t, idx), 1, hi).values
            b = ev.power_sums_direct(subtuple(t, comp), 1, hi).values
            assert np.max(np.abs(full - a - b)) <= 1e-10 * t.n


class TestExport:
    def test_profile_csv(self, tmp_path):
        prof = ev.power_sums_fft(montgomery(5), 5, with_values=True)
        path = tmp_path / "prof.csv"
        ev.write_profile_csv(prof, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "nu,abs,re,im"
        assert len(lines) == 6
        assert lines[1].startswith("1,")

    def test_summary(self):
        prof = ev.power_sums_fft(montgomery(5), 19)
        s = prof.summary()
        assert set(s) == {"n", "M", "nu_lo", "nu_hi", "max_abs", "argmax_nu"}
        assert s["n"] == 4 and s["M"] == 20

    def test_max_discrepancy(self):
        assert ev.max_discrepancy(montgomery(13), 200) <= 1e-8 * 12
