import numpy as np
import pytest
from scipy import stats

from mcik_ofdm.core import SystemConfig
from mcik_ofdm.modem import build_constellation
from mcik_ofdm.codec import assemble_block
from mcik_ofdm.channel import (ChannelRealization, RngStream, apply_channel,
                               draw_channel)

CFG = SystemConfig(128, 2, 64, 4, snr_db=10.0)


def test_unit_mean_power():
    stream = RngStream(seed=1)
    total = 0.0
    draws = 0
    while draws < 1_000_000:
        g = draw_channel(stream, CFG).gains
        total += np.sum(np.abs(g) ** 2)
        draws += g.size
    assert total / draws == pytest.approx(1.0, abs=0.01)


def test_stream_advances_between_calls():
    stream = RngStream(seed=2)
    a = draw_channel(stream, CFG)
    b = draw_channel(stream, CFG)
    assert not np.array_equal(a.gains, b.gains)


def test_same_seed_same_call_count_identical():
    a = draw_channel(RngStream(seed=3, stream_id=7), CFG).gains
    b = draw_channel(RngStream(seed=3, stream_id=7), CFG).gains
    assert np.array_equal(a, b)
    c = draw_channel(RngStream(seed=3, stream_id=8), CFG).gains
    assert not np.array_equal(a, c)


def _block(bits_seed=0):
    c = build_constellation(4)
    rng = np.random.default_rng(bits_seed)
    bits = rng.integers(0, 2, 192, dtype=np.int8)
    return assemble_block(bits, CFG, c)


def test_noiseless_passthrough():
    blk = _block()
    h = draw_channel(RngStream(seed=4), CFG)
    y = apply_channel(blk, h, 0.0, RngStream(seed=5))
    assert np.array_equal(y, h.gains * blk.samples)


def test_negative_noise_power_rejected():
    blk = _block()
    h = draw_channel(RngStream(seed=4), CFG)
    with pytest.raises(ValueError):
        apply_channel(blk, h, -0.1, RngStream(seed=5))


def test_all_zero_block_gives_pure_noise_variance():
    blk = _block()
    zero = ChannelRealization(gains=np.zeros(128, dtype=np.complex128))
    n0 = 0.25
    stream = RngStream(seed=6)
    samples = np.concatenate(
        [apply_channel(blk, zero, n0, stream) for _ in range(4000)])
    assert np.mean(np.abs(samples) ** 2) == pytest.approx(n0, rel=0.01)
    # circular symmetry: each quadrature carries half the power
    assert np.var(samples.real) == pytest.approx(n0 / 2, rel=0.02)
    assert np.var(samples.imag) == pytest.approx(n0 / 2, rel=0.02)


def test_noise_moment_around_faded_signal():
    blk = _block()
    h = draw_channel(RngStream(seed=7), CFG)
    n0 = 0.5
    stream = RngStream(seed=8)
    resid = np.concatenate(
        [apply_channel(blk, h, n0, stream) - h.gains * blk.samples
         for _ in range(8000)])
    assert resid.size > 1_000_000
    assert np.mean(np.abs(resid) ** 2) == pytest.approx(n0, rel=0.01)


def test_gain_power_is_unit_exponential():
    stream = RngStream(seed=9)
    power = np.abs(draw_channel(stream, SystemConfig(100000, 2, 50000, 4)).gains) ** 2
    assert stats.kstest(power, "expon").pvalue > 0.01
