"""Tests for aligned/misaligned gain sampling and the gain sample CSV format."""

import math
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from mmwave_coverage.channel import (
    GainSampleSet,
    aligned_gain,
    batch_gains,
    beamforming_vector,
    channel_matrix,
    misaligned_gain,
    read_gain_csv,
    sample_cluster_batch,
    sample_gain_set,
    sample_gains,
    write_gain_csv,
)
from mmwave_coverage.fitting import fit_family, fit_power_surface, ks_statistic
from mmwave_coverage.shared import (
    Family,
    GainKind,
    InvalidArgumentError,
    NonFiniteSampleError,
    SystemParams,
    make_rng,
)


@pytest.mark.unit
class TestBatchGains:
    def test_matches_matrix_route(self) -> None:
        params = SystemParams(n_tx=8, n_rx=4)
        rng = make_rng(21)
        batch = sample_cluster_batch(rng, 40)
        rx_steer = rng.uniform(0.0, 2 * np.pi, size=40)
        tx_steer = rng.uniform(0.0, 2 * np.pi, size=40)
        fast = batch_gains(batch, rx_steer, tx_steer, params)

        for i in range(batch.size):
            h = channel_matrix(batch.realization(i), params)
            w_rx = beamforming_vector(rx_steer[i], params.n_rx)
            w_tx = beamforming_vector(tx_steer[i], params.n_tx)
            slow = abs(w_rx @ h @ w_tx) ** 2
            assert fast[i] == pytest.approx(slow, rel=1e-9, abs=1e-12)

    def test_aligned_samples_match_aligned_gain(self) -> None:
        params = SystemParams(n_tx=16, n_rx=4)
        batch = sample_cluster_batch(make_rng(5), 25)
        expected = [aligned_gain(batch.realization(i), params) for i in range(25)]
        # Same draws as sample_gains(ALIGNED) on the same stream.
        got = sample_gains(GainKind.ALIGNED, 25, params, make_rng(5))
        np.testing.assert_allclose(got, expected, rtol=1e-9)

    def test_misaligned_gain_single_realization(self, params: SystemParams) -> None:
        batch = sample_cluster_batch(make_rng(6), 1)
        gain = misaligned_gain(batch.realization(0), make_rng(7), params)
        assert np.isfinite(gain) and gain >= 0.0


@pytest.mark.unit
class TestSampleGainSet:
    def test_reproducible(self) -> None:
        params = SystemParams(n_tx=16, n_rx=4, rng_seed=42)
        a = sample_gain_set(GainKind.MISALIGNED, 500, params)
        b = sample_gain_set(GainKind.MISALIGNED, 500, params)
        np.testing.assert_array_equal(a.samples, b.samples)
        assert (a.kind, a.n_tx, a.n_rx, a.seed) == (GainKind.MISALIGNED, 16, 4, 42)

    def test_seed_changes_samples(self) -> None:
        base = SystemParams(n_tx=16, n_rx=4)
        a = sample_gain_set(GainKind.MISALIGNED, 200, base.with_seed(1))
        b = sample_gain_set(GainKind.MISALIGNED, 200, base.with_seed(2))
        assert not np.array_equal(a.samples, b.samples)

    def test_independent_of_thread_count(self) -> None:
        params = SystemParams(n_tx=16, n_rx=4, rng_seed=3)
        serial = sample_gain_set(GainKind.MISALIGNED, 20_000, params, threads=1)
        pooled = sample_gain_set(GainKind.MISALIGNED, 20_000, params, threads=3)
        np.testing.assert_array_equal(serial.samples, pooled.samples)

    @pytest.mark.parametrize("kind", list(GainKind))
    def test_nonnegative_and_finite(self, kind: GainKind) -> None:
        sample_set = sample_gain_set(kind, 1000, SystemParams(n_tx=16, n_rx=4))
        assert len(sample_set) == 1000
        assert np.all(np.isfinite(sample_set.samples))
        assert np.all(sample_set.samples >= 0.0)

    def test_aligned_exceeds_misaligned_on_average(self) -> None:
        params = SystemParams(n_tx=16, n_rx=4)
        aligned = sample_gain_set(GainKind.ALIGNED, 5000, params).samples
        misaligned = sample_gain_set(GainKind.MISALIGNED, 5000, params).samples
        assert aligned.mean() > 5 * misaligned.mean()

    @pytest.mark.parametrize("n_samples", [0, -3])
    def test_nonpositive_count_rejected(self, n_samples: int) -> None:
        with pytest.raises(InvalidArgumentError):
            sample_gain_set(GainKind.ALIGNED, n_samples, SystemParams())


@pytest.mark.unit
class TestGainSampleSet:
    def test_rejects_non_finite(self) -> None:
        with pytest.raises(NonFiniteSampleError):
            GainSampleSet(GainKind.ALIGNED, 4, 4, np.array([1.0, np.nan]), 0)

    def test_rejects_negative(self) -> None:
        with pytest.raises(InvalidArgumentError):
            GainSampleSet(GainKind.ALIGNED, 4, 4, np.array([1.0, -0.5]), 0)

    def test_max_array_gain(self) -> None:
        sample_set = GainSampleSet(GainKind.MISALIGNED, 256, 64, np.ones(3), 0)
        assert sample_set.max_array_gain == 16384.0

    def test_max_gain_mass(self) -> None:
        samples = np.array([64.0, 64.0 * (1 + 1e-12), 12.0, 0.5])
        sample_set = GainSampleSet(GainKind.ALIGNED, 16, 4, samples, 0)
        assert sample_set.max_gain_mass == 0.5

    def test_single_subpath_draws_hit_max_gain(self) -> None:
        params = SystemParams(n_tx=16, n_rx=4)
        batch = sample_cluster_batch(make_rng(11), 2000)
        single = [i for i in range(batch.size) if batch.realization(i).aoa.size == 1]
        assert single
        for i in single:
            assert aligned_gain(batch.realization(i), params) == pytest.approx(
                64.0, rel=1e-9
            )


@pytest.mark.unit
class TestGainCsv:
    def test_write_then_read(self, tmp_path: Path) -> None:
        original = sample_gain_set(
            GainKind.MISALIGNED, 300, SystemParams(n_tx=16, n_rx=4, rng_seed=9)
        )
        path = write_gain_csv(original, tmp_path / "gains.csv")

        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# kind=misaligned,n_tx=16,n_rx=4,seed=9"
        assert lines[1] == "gain"
        assert len(lines) == 302

        loaded = read_gain_csv(path)
        np.testing.assert_array_equal(loaded.samples, original.samples)
        assert (loaded.kind, loaded.n_tx, loaded.n_rx, loaded.seed) == (
            GainKind.MISALIGNED,
            16,
            4,
            9,
        )

    def test_missing_header_rejected(self, tmp_path: Path) -> None:
        path = tmp_path / "bare.csv"
        path.write_text("gain\n1.0\n2.0\n", encoding="utf-8")
        with pytest.raises(InvalidArgumentError):
            read_gain_csv(path)


# P(K = 1) * P(L = 1) with K = max(Poisson(1.8), 1) and L uniform on 1..10.
SINGLE_PATH_MASS = math.exp(-1.8) * 2.8 * 0.1


@pytest.mark.slow
class TestGainStatistics:
    def test_misaligned_median_at_256x64(self) -> None:
        # Unit-norm beams put the bulk of G_x far below the bundled fit's scale.
        samples = sample_gain_set(
            GainKind.MISALIGNED, 100_000, SystemParams(n_tx=256, n_rx=64)
        ).samples
        assert np.median(samples) == pytest.approx(2.3e-4, rel=0.3)
        assert np.median(samples) < 1e-2 * samples.mean()

    def test_misaligned_law_symmetric_in_array_sizes(self) -> None:
        a = sample_gain_set(GainKind.MISALIGNED, 100_000, SystemParams(n_tx=4, n_rx=16))
        b = sample_gain_set(
            GainKind.MISALIGNED, 100_000, SystemParams(n_tx=16, n_rx=4, rng_seed=99)
        )
        assert stats.ks_2samp(a.samples, b.samples).statistic < 0.01

    def test_aligned_mean_follows_power_law(self) -> None:
        params = SystemParams(n_tx=64, n_rx=16)
        samples = sample_gain_set(GainKind.ALIGNED, 100_000, params).samples
        expected = (64 * 16) ** 0.927 / 0.814
        assert samples.mean() == pytest.approx(expected, rel=0.25)

    @pytest.mark.parametrize("n_tx,n_rx", [(256, 64), (64, 16)])
    def test_aligned_exponential_fit(self, n_tx: int, n_rx: int) -> None:
        sample_set = sample_gain_set(
            GainKind.ALIGNED, 100_000, SystemParams(n_tx=n_tx, n_rx=n_rx)
        )
        ks = ks_statistic(sample_set, fit_family(sample_set, Family.EXPONENTIAL))
        mass = sample_set.max_gain_mass

        assert mass == pytest.approx(SINGLE_PATH_MASS, abs=4e-3)
        # An atom of mass m keeps any continuous fit at least m / 2 away in KS.
        assert ks >= mass / 2 - 1e-9
        assert ks < 0.1

    def test_aligned_rate_surface(self) -> None:
        grid = (4, 16, 64, 256)
        rates = {}
        for n_tx in grid:
            for n_rx in grid:
                sample_set = sample_gain_set(
                    GainKind.ALIGNED,
                    50_000,
                    SystemParams(n_tx=n_tx, n_rx=n_rx, rng_seed=n_tx * 1000 + n_rx),
                )
                rates[n_tx, n_rx] = fit_family(sample_set, Family.EXPONENTIAL)["rate"]

        surface = fit_power_surface([(p, q, r) for (p, q), r in rates.items()])
        assert -1.05 <= surface.expo <= -0.80
        for (p, q), rate in rates.items():
            assert rate == pytest.approx(rates[q, p], rel=0.05)
