"""Quasi-static Rayleigh fading per subcarrier plus AWGN."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import SystemConfig
from .codec import OfdmBlock

_SQRT_HALF = np.sqrt(0.5)


@dataclass
class RngStream:
    """Counter-based (Philox) random stream keyed by (seed, stream_id).

    Identical (seed, stream_id) pairs reproduce identical draw sequences,
    so trials partitioned across workers by stream_id stay deterministic.
    """

    seed: int
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        key = (int(self.seed) & (2**64 - 1)) << 64 | (int(self.stream_id) & (2**64 - 1))
        self.generator = np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class ChannelRealization:
    """Per-subcarrier complex gains for one quasi-static block interval."""

    gains: np.ndarray


def complex_normal(rng: np.random.Generator, size, variance: float = 1.0) -> np.ndarray:
    """Circularly-symmetric complex Gaussian, CN(0, variance)."""
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def draw_channel(stream: RngStream, cfg: SystemConfig) -> ChannelRealization:
    """Fresh i.i.d. CN(0,1) gains for every subcarrier (stream advances)."""
    return ChannelRealization(gains=complex_normal(stream.generator, cfg.n_subcarriers))


def apply_channel(block: OfdmBlock, h: ChannelRealization, n0: float,
                  stream: RngStream) -> np.ndarray:
    """Received vector y(k) = h(k) s(k) + n(k) with n(k) ~ CN(0, n0)."""
    if n0 < 0:
        raise ValueError("noise power must be non-negative")
    noise = complex_normal(stream.generator, block.samples.shape, n0) if n0 > 0 else 0.0
    return h.gains * block.samples + noise
