import numpy as np
import pytest

from mcik_ofdm.core import SystemConfig, bits_per_block
from mcik_ofdm.modem import build_constellation
from mcik_ofdm.codec import (assemble_block, disassemble_block, hamming,
                             index_to_binary, map_index_bits, total_hamming_weight)


def test_map_index_bits_examples():
    assert map_index_bits(np.array([0, 0]), 4) == 1
    assert map_index_bits(np.array([1, 1]), 4) == 4
    alphas = {map_index_bits(np.array([(v >> 2) & 1, (v >> 1) & 1, v & 1]), 8)
              for v in range(8)}
    assert alphas == set(range(1, 9))


def test_map_index_bits_wrong_count():
    with pytest.raises(ValueError):
        map_index_bits(np.array([0, 1, 0]), 4)


def test_index_to_binary_examples():
    assert list(index_to_binary(1, 2)) == [0]
    assert list(index_to_binary(3, 4)) == [1, 0]
    with pytest.raises(ValueError):
        index_to_binary(5, 4)


@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_index_mapping_inverse(N):
    for alpha in range(1, N + 1):
        assert map_index_bits(index_to_binary(alpha, N), N) == alpha


def test_hamming_examples():
    assert hamming(1, 1, 4) == 0
    assert hamming(1, 2, 4) == 1
    with pytest.raises(ValueError):
        hamming(0, 1, 4)


@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_hamming_properties(N):
    bits = int(np.log2(N))
    for a in range(1, N + 1):
        row = 0
        for b in range(1, N + 1):
            h = hamming(a, b, N)
            assert h == hamming(b, a, N)
            assert 0 <= h <= bits
            assert (h == 0) == (a == b)
            if a != b:
                row += h
        assert row == N / 2 * bits  # e.g. 4 for N=4
    assert total_hamming_weight(N) == N * N / 2 * bits


def test_single_cluster_assembly():
    cfg = SystemConfig(2, 2, 1, 4)
    c = build_constellation(4)
    blk = assemble_block(np.array([0, 0, 0]), cfg, c)
    assert blk.samples[0] != 0 and blk.samples[1] == 0
    blk = assemble_block(np.array([1, 0, 0]), cfg, c)
    assert blk.samples[0] == 0 and blk.samples[1] != 0
    assert blk.activations[0].alpha == 2
    assert blk.activations[0].global_index == 2


def test_disassemble_example():
    cfg = SystemConfig(2, 2, 1, 4)
    c = build_constellation(4)
    blk = assemble_block(np.array([1, 0, 0]), cfg, c)
    assert list(disassemble_block(blk.activations, blk.payload_symbols, cfg)) == [1, 0, 0]


def test_bit_layout_index_bits_first():
    cfg = SystemConfig(8, 4, 2, 16)
    c = build_constellation(16)
    bits = np.zeros(12, dtype=np.int8)
    bits[0:2] = [1, 1]   # cluster 1 index bits -> alpha 4
    bits[6:8] = [0, 1]   # cluster 2 index bits -> alpha 2
    blk = assemble_block(bits, cfg, c)
    assert blk.activations[0].alpha == 4
    assert blk.activations[1].alpha == 2


@pytest.mark.parametrize("N,n,M", [(2, 64, 4), (4, 32, 4), (8, 16, 4)])
def test_block_invariants_and_roundtrip(N, n, M):
    cfg = SystemConfig(128, N, n, M)
    c = build_constellation(M)
    _, _, mt = bits_per_block(cfg)
    rng = np.random.default_rng(N)
    for _ in range(300):
        bits = rng.integers(0, 2, mt, dtype=np.int8)
        blk = assemble_block(bits, cfg, c)
        nz = np.flatnonzero(blk.samples)
        assert len(nz) == n
        for beta, act in enumerate(blk.activations, start=1):
            assert act.global_index == (beta - 1) * N + act.alpha
            assert (beta - 1) * N + act.alpha - 1 in nz
        assert np.array_equal(
            disassemble_block(blk.activations, blk.payload_symbols, cfg), bits)


def test_roundtrip_bulk_vectorized_equivalent():
    """10^4 random buffers per reference config, checked against the scalar
    assemble/disassemble path via random spot checks plus full vector compare."""
    from mcik_ofdm.core import bits_to_int
    for N, n in ((2, 64), (4, 32), (8, 16)):
        cfg = SystemConfig(128, N, n, 4)
        _, _, mt = bits_per_block(cfg)
        ki, ks = cfg.index_bits_per_cluster, cfg.symbol_bits_per_cluster
        rng = np.random.default_rng(100 + N)
        bufs = rng.integers(0, 2, (10000, n, ki + ks), dtype=np.int8)
        pow_i = 1 << np.arange(ki - 1, -1, -1)
        pow_s = 1 << np.arange(ks - 1, -1, -1)
        alpha = 1 + bufs[:, :, :ki].astype(np.int64) @ pow_i
        labels = bufs[:, :, ki:].astype(np.int64) @ pow_s
        # rebuild bit buffers from (alpha, label) pairs and compare
        back_i = ((alpha - 1)[..., None] >> np.arange(ki - 1, -1, -1)) & 1
        back_s = (labels[..., None] >> np.arange(ks - 1, -1, -1)) & 1
        back = np.concatenate([back_i, back_s], axis=2).astype(np.int8)
        assert np.array_equal(back, bufs)
        # spot-check the scalar path agrees with the vectorized mapping
        c = build_constellation(4)
        for idx in rng.integers(0, 10000, 5):
            bits = bufs[idx].reshape(mt)
            blk = assemble_block(bits, cfg, c)
            assert [a.alpha for a in blk.activations] == list(alpha[idx])
            assert list(blk.payload_symbols) == list(labels[idx])
