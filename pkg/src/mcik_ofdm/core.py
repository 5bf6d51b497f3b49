"""Shared domain types, configuration validation and bit-buffer helpers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SUPPORTED_QAM_ORDERS = (4, 16, 64, 256)


class ConfigError(ValueError):
    """Raised when a system configuration violates an invariant."""


def _is_power_of_two(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class SystemConfig:
    """One MCIK-OFDM operating point.

    ``n_subcarriers`` total subcarriers, split into ``n_clusters`` clusters
    of ``cluster_size`` subcarriers each; exactly one subcarrier per cluster
    is active and carries a ``qam_order``-QAM symbol. ``snr_db`` is the
    symbol SNR Es/N0 in dB with Es = 1.
    """

    n_subcarriers: int
    cluster_size: int
    n_clusters: int
    qam_order: int
    snr_db: float = 0.0

    @property
    def index_bits_per_cluster(self) -> int:
        return int(np.log2(self.cluster_size))

    @property
    def symbol_bits_per_cluster(self) -> int:
        return int(np.log2(self.qam_order))

    @property
    def bits_per_cluster(self) -> int:
        return self.index_bits_per_cluster + self.symbol_bits_per_cluster

    @property
    def snr_linear(self) -> float:
        return float(10.0 ** (self.snr_db / 10.0))

    @property
    def noise_power(self) -> float:
        # Es = 1, so N0 = 1 / rho.  +inf dB means a noiseless channel.
        return 0.0 if np.isinf(self.snr_db) else 1.0 / self.snr_linear


def validate_config(cfg: SystemConfig) -> SystemConfig:
    """Check all SystemConfig invariants; return cfg unchanged if valid."""
    if cfg.n_subcarriers <= 0 or cfg.cluster_size <= 0 or cfg.n_clusters <= 0:
        raise ConfigError("dimensions must be positive")
    if cfg.n_subcarriers != cfg.n_clusters * cfg.cluster_size:
        raise ConfigError(
            f"dimension mismatch: {cfg.n_subcarriers} subcarriers != "
            f"{cfg.n_clusters} clusters x {cfg.cluster_size}"
        )
    if cfg.cluster_size < 2 or not _is_power_of_two(cfg.cluster_size):
        raise ConfigError(f"cluster size {cfg.cluster_size} is not a power of two >= 2")
    if cfg.qam_order not in SUPPORTED_QAM_ORDERS:
        raise ConfigError(
            f"unsupported QAM order {cfg.qam_order}; expected one of {SUPPORTED_QAM_ORDERS}"
        )
    return cfg


def bits_per_block(cfg: SystemConfig) -> tuple[int, int, int]:
    """Return (m0, m1, mt): index bits, symbol bits and total bits per block."""
    m0 = cfg.n_clusters * cfg.index_bits_per_cluster
    m1 = cfg.n_clusters * cfg.symbol_bits_per_cluster
    return m0, m1, m0 + m1


def int_to_bits(value: int, width: int) -> np.ndarray:
    """MSB-first binary representation of ``value`` as an int8 array."""
    if value < 0 or value >= (1 << width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.int8)


def bits_to_int(bits: np.ndarray) -> int:
    """Inverse of int_to_bits (MSB first)."""
    out = 0
    for b in np.asarray(bits).ravel():
        out = (out << 1) | int(b)
    return out
