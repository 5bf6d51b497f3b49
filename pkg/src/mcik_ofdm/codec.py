"""Index keying codec: index bits <-> active subcarriers, block (dis)assembly."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SystemConfig, bits_to_int, int_to_bits
from .modem import QamConstellation, modulate


@dataclass(frozen=True)
class ClusterActivation:
    """Which subcarrier is active within one cluster.

    ``alpha`` is 1-based within the cluster; the global subcarrier index is
    (cluster_id - 1) * N + alpha with 1-based ``cluster_id``.
    """

    cluster_id: int
    alpha: int
    cluster_size: int

    @property
    def global_index(self) -> int:
        return (self.cluster_id - 1) * self.cluster_size + self.alpha


@dataclass(frozen=True)
class OfdmBlock:
    """Frequency-domain block: one active (QAM-modulated) subcarrier per cluster."""

    samples: np.ndarray
    activations: tuple[ClusterActivation, ...]
    payload_symbols: tuple[int, ...]


def map_index_bits(bits: np.ndarray, cluster_size: int) -> int:
    """log2(N) index bits (MSB first) -> 1-based active position alpha."""
    bits = np.asarray(bits).ravel()
    width = int(np.log2(cluster_size))
    if bits.size != width:
        raise ValueError(f"expected {width} index bits, got {bits.size}")
    return 1 + bits_to_int(bits)


def index_to_binary(alpha: int, cluster_size: int) -> np.ndarray:
    """Natural-binary image of alpha; inverse of map_index_bits.

    This mapping is the single swap point for the index bit labeling: the
    analytic bound weights Hamming distances through hamming() below, so
    simulation and bound stay consistent by construction.
    """
    if not 1 <= alpha <= cluster_size:
        raise ValueError(f"alpha {alpha} out of range 1..{cluster_size}")
    return int_to_bits(alpha - 1, int(np.log2(cluster_size)))


def hamming(alpha: int, alpha_tilde: int, cluster_size: int) -> int:
    """Hamming distance between the binary images of two active positions."""
    for a in (alpha, alpha_tilde):
        if not 1 <= a <= cluster_size:
            raise ValueError(f"alpha {a} out of range 1..{cluster_size}")
    return int.bit_count((alpha - 1) ^ (alpha_tilde - 1))


def assemble_block(bits: np.ndarray, cfg: SystemConfig, const: QamConstellation) -> OfdmBlock:
    """Map an mt-bit buffer to a frequency-domain block.

    Bit layout, per cluster in order: log2(N) index bits, then log2(M)
    symbol bits.
    """
    bits = np.asarray(bits).ravel()
    n, N = cfg.n_clusters, cfg.cluster_size
    ki, ks = cfg.index_bits_per_cluster, cfg.symbol_bits_per_cluster
    if bits.size != n * (ki + ks):
        raise ValueError(f"expected {n * (ki + ks)} bits, got {bits.size}")

    samples = np.zeros(cfg.n_subcarriers, dtype=np.complex128)
    activations = []
    labels = []
    per_cluster = bits.reshape(n, ki + ks)
    for beta in range(1, n + 1):
        seg = per_cluster[beta - 1]
        alpha = map_index_bits(seg[:ki], N)
        label = bits_to_int(seg[ki:])
        act = ClusterActivation(cluster_id=beta, alpha=alpha, cluster_size=N)
        samples[act.global_index - 1] = const.points[label]
        activations.append(act)
        labels.append(label)
    return OfdmBlock(samples=samples, activations=tuple(activations),
                     payload_symbols=tuple(labels))


def disassemble_block(activations, symbol_labels, cfg: SystemConfig) -> np.ndarray:
    """Inverse of assemble_block: rebuild the mt-bit buffer."""
    ki, ks = cfg.index_bits_per_cluster, cfg.symbol_bits_per_cluster
    out = np.empty(cfg.n_clusters * (ki + ks), dtype=np.int8)
    pos = 0
    for act, label in zip(activations, symbol_labels, strict=True):
        out[pos:pos + ki] = index_to_binary(act.alpha, cfg.cluster_size)
        out[pos + ki:pos + ki + ks] = int_to_bits(label, ks)
        pos += ki + ks
    return out


def total_hamming_weight(cluster_size: int) -> int:
    """Sum of hamming(a, b) over all ordered pairs a != b in 1..N."""
    return sum(
        hamming(a, b, cluster_size)
        for a in range(1, cluster_size + 1)
        for b in range(1, cluster_size + 1)
        if a != b
    )
