"""Gray-coded square M-QAM: constellation construction, mapping, ML demapping."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import SUPPORTED_QAM_ORDERS, bits_to_int, int_to_bits


def _gray_decode(g: int) -> int:
    """Binary-reflected Gray code -> natural position."""
    b = 0
    while g:
        b ^= g
        g >>= 1
    return b


@dataclass(frozen=True)
class QamConstellation:
    """Unit-average-energy square QAM grid with per-axis reflected Gray labels.

    ``points[label]`` is the complex symbol for the natural-binary symbol
    label.  The high half of the label bits selects the in-phase level, the
    low half the quadrature level, each through a reflected Gray code, so
    axis-adjacent points differ in exactly one label bit.
    """

    order: int
    points: np.ndarray = field(repr=False)

    @property
    def bits_per_symbol(self) -> int:
        return int(np.log2(self.order))


def build_constellation(order: int) -> QamConstellation:
    """Build the Gray-coded square constellation for order in {4,16,64,256}."""
    if order not in SUPPORTED_QAM_ORDERS:
        raise ValueError(f"unsupported QAM order {order}")
    k = int(np.log2(order))
    kh = k // 2
    side = 1 << kh
    # Average energy of the +/-1, +/-3, ... grid is 2*(side^2-1)/3 = 2(M-1)/3.
    scale = np.sqrt(3.0 / (2.0 * (order - 1)))
    points = np.empty(order, dtype=np.complex128)
    for label in range(order):
        gi = label >> kh
        gq = label & (side - 1)
        pi = _gray_decode(gi)
        pq = _gray_decode(gq)
        re = (2 * pi - (side - 1)) * scale
        im = (2 * pq - (side - 1)) * scale
        points[label] = re + 1j * im
    const = QamConstellation(order=order, points=points)
    const.points.setflags(write=False)
    return const


def modulate(bits: np.ndarray, const: QamConstellation) -> complex:
    """Map log2(M) bits (MSB first) to their constellation point."""
    bits = np.asarray(bits).ravel()
    if bits.size != const.bits_per_symbol:
        raise ValueError(f"expected {const.bits_per_symbol} bits, got {bits.size}")
    return complex(const.points[bits_to_int(bits)])


def demodulate_ml(y: complex, h: complex, const: QamConstellation) -> tuple[int, np.ndarray]:
    """Coherent per-symbol ML decision argmin_s |y - h*s|^2.

    Ties break to the lowest symbol label.  Returns (label, bits).
    """
    if h == 0:
        raise ValueError("zero channel gain")
    d2 = np.abs(y - h * const.points) ** 2
    label = int(np.argmin(d2))
    return label, int_to_bits(label, const.bits_per_symbol)


def demodulate_many(y: np.ndarray, h: np.ndarray, const: QamConstellation) -> np.ndarray:
    """Vectorized hard ML demapping; returns symbol labels, same shape as y."""
    y = np.asarray(y)
    h = np.asarray(h)
    d2 = np.abs(y[..., None] - h[..., None] * const.points) ** 2
    return np.argmin(d2, axis=-1)
