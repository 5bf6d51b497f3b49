"""Closed-form BER machinery: Q-function, pairwise error probabilities,
per-cluster expected bit-error counts, union bounds and fading averages."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc, roots_genlaguerre

from .core import SystemConfig
from .codec import total_hamming_weight


def q_function(x):
    """Gaussian tail probability Q(x), evaluated through erfc."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / np.sqrt(2.0))


def pep_conditional(gamma, rho):
    """Conditional pairwise index-error probability Q(sqrt(gamma*rho/2)).

    gamma is the instantaneous channel power gain |h|^2, rho the linear SNR.
    """
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0) or rho < 0:
        raise ValueError("gamma and rho must be non-negative")
    return q_function(np.sqrt(gamma * rho / 2.0))


@dataclass(frozen=True)
class QamBerConstants:
    """Weights and scales of the exact Gray-coded square-QAM AWGN bit-error
    expansion sum_i C_i * Q(sqrt(c_i * gamma * rho))."""

    order: int
    weights: np.ndarray
    scales: np.ndarray

    @property
    def theta(self) -> int:
        return len(self.weights)


@lru_cache(maxsize=None)
def qam_ber_constants(order: int) -> QamBerConstants:
    """Derive (C_i, c_i) by exact enumeration of the per-axis Gray-PAM
    decision regions of the unit-energy square constellation.

    For order 4 this reduces to the single term Q(sqrt(gamma*rho)); for
    16-QAM it reproduces the classic 3/4, 1/2, -1/4 weights.
    """
    k = int(np.log2(order))
    side = 1 << (k // 2)
    kh = k // 2
    coeffs: dict[int, float] = {}
    constant = 0.0
    weight = 2.0 / (k * side)  # two axes, uniform over transmitted levels
    for p in range(side):
        gp = p ^ (p >> 1)
        for j in range(kh):
            for p2 in range(side):
                g2 = p2 ^ (p2 >> 1)
                if ((gp ^ g2) >> j) & 1 == 0:
                    continue
                # decide p2 when p was sent: boundaries at odd multiples of
                # the half level spacing; Q(-u) folded as 1 - Q(u)
                for u, sign in ((2 * (p2 - p) - 1, +1.0), (2 * (p2 - p) + 1, -1.0)):
                    if p2 == 0 and sign > 0:
                        constant += weight  # Q(-inf) = 1
                    elif p2 == side - 1 and sign < 0:
                        pass  # Q(+inf) = 0
                    elif u >= 0:
                        coeffs[u] = coeffs.get(u, 0.0) + sign * weight
                    else:
                        constant += sign * weight
                        coeffs[-u] = coeffs.get(-u, 0.0) - sign * weight
    if abs(constant) > 1e-12:
        raise AssertionError(f"constant term {constant} did not cancel")
    mults = sorted(u for u, c in coeffs.items() if abs(c) > 1e-15)
    weights = np.array([coeffs[u] for u in mults])
    scales = np.array([3.0 * u * u / (order - 1) for u in mults])
    return QamBerConstants(order=order, weights=weights, scales=scales)


def qam_awgn_ber(gamma, rho, order: int, constants: QamBerConstants | None = None):
    """Exact BER of coherent Gray-coded square M-QAM at power gain gamma."""
    if constants is None:
        constants = qam_ber_constants(order)
    gamma = np.asarray(gamma, dtype=float)
    args = np.sqrt(constants.scales * gamma[..., None] * rho)
    return np.sum(constants.weights * q_function(args), axis=-1)


def me0_cluster(gamma, rho, cluster_size: int):
    """Expected index-domain bit errors per cluster (union bound).

    Equals the Hamming-weighted pairwise sum, which collapses to
    (N/2)*log2(N)*Q(sqrt(gamma*rho/2)) for the natural-binary index map.
    """
    w = total_hamming_weight(cluster_size) / cluster_size
    return w * pep_conditional(gamma, rho)


def me1_cluster(gamma, rho, cluster_size: int, order: int,
                constants: QamBerConstants | None = None,
                correct_detection: str = "product"):
    """Expected symbol-domain bit errors per cluster.

    The mis-detection term charges half the symbol bits per pairwise event;
    the correct-detection term weights the plain QAM BER by 1 minus either
    the product of the pairwise error probabilities (``correct_detection=
    "product"``, as printed in the bound) or their sum (``"union_complement"``,
    the standard union-bound complement).
    """
    N = cluster_size
    q = pep_conditional(gamma, rho)
    p_qam = qam_awgn_ber(gamma, rho, order, constants)
    if correct_detection == "product":
        factor = 1.0 - q ** (N - 1)
    elif correct_detection == "union_complement":
        factor = 1.0 - (N - 1) * q
    else:
        raise ValueError(f"unknown correct_detection mode {correct_detection!r}")
    return np.log2(order) * ((N - 1) / 2.0 * q + factor * p_qam)


def ber_bound_conditional(gammas, cfg: SystemConfig):
    """Mis-detection-only closed-form BER bound (no correct-detection term)."""
    gammas = np.asarray(gammas, dtype=float)
    if gammas.shape[-1] != cfg.n_clusters:
        raise ValueError("need one gamma per cluster")
    rho = cfg.snr_linear
    mt = cfg.n_clusters * cfg.bits_per_cluster
    q = pep_conditional(gammas, rho)
    per_cluster = (me0_cluster(gammas, rho, cfg.cluster_size)
                   + cfg.symbol_bits_per_cluster * (cfg.cluster_size - 1) / 2.0 * q)
    return np.sum(per_cluster, axis=-1) / mt


def ber_bound(gammas, cfg: SystemConfig, constants: QamBerConstants | None = None,
              correct_detection: str = "product"):
    """Full unconditional closed-form BER bound at fixed channel gains."""
    gammas = np.asarray(gammas, dtype=float)
    if gammas.shape[-1] != cfg.n_clusters:
        raise ValueError("need one gamma per cluster")
    rho = cfg.snr_linear
    mt = cfg.n_clusters * cfg.bits_per_cluster
    per_cluster = (me0_cluster(gammas, rho, cfg.cluster_size)
                   + me1_cluster(gammas, rho, cfg.cluster_size, cfg.qam_order,
                                 constants, correct_detection))
    return np.sum(per_cluster, axis=-1) / mt


@lru_cache(maxsize=None)
def _laguerre_rules(n_nodes: int):
    x0, w0 = roots_genlaguerre(n_nodes, 0.0)
    xh, wh = roots_genlaguerre(n_nodes, 0.5)
    return x0, w0, xh, wh


def exp_fading_average(fn_of_amplitude, n_nodes: int = 128) -> float:
    """E[g(sqrt(gamma))] for unit-mean exponential gamma via generalized
    Gauss-Laguerre quadrature.

    ``fn_of_amplitude`` must accept signed amplitudes t (vectorized) and be
    analytic in t; the even part integrates against the alpha=0 rule, the
    odd part (which carries the sqrt(gamma) singularity) against alpha=1/2.
    """
    x0, w0, xh, wh = _laguerre_rules(n_nodes)
    t0 = np.sqrt(x0)
    th = np.sqrt(xh)
    even = np.sum(w0 * (fn_of_amplitude(t0) + fn_of_amplitude(-t0)) / 2.0)
    odd = np.sum(wh * (fn_of_amplitude(th) - fn_of_amplitude(-th)) / (2.0 * th))
    return float(even + odd)


def rayleigh_average_q(c: float) -> float:
    """Closed form E[Q(sqrt(2*c*gamma))] = (1 - sqrt(c/(1+c)))/2 for
    unit-mean exponential gamma (chi-squared MGF identity)."""
    return 0.5 * (1.0 - np.sqrt(c / (1.0 + c)))


def _cross_term_average(rho: float, cluster_size: int,
                        constants: QamBerConstants,
                        correct_detection: str) -> float:
    """E over gamma ~ Exp(1) of the product term multiplying the QAM BER.

    product mode: q(gamma)^(N-1) * P(gamma); union_complement mode:
    (N-1) * q(gamma) * P(gamma).  Integrated adaptively; for rho > 1 the
    integral runs in u = gamma*rho where the Q arguments are SNR-free.
    """
    N = cluster_size

    def q_of(u):
        return q_function(np.sqrt(u / 2.0))

    def p_of(u):
        return np.sum(constants.weights * q_function(np.sqrt(constants.scales * u)))

    def g(u):
        q = q_of(u)
        lead = q ** (N - 1) if correct_detection == "product" else (N - 1) * q
        return lead * p_of(u)

    if rho > 1.0:
        val, _ = quad(lambda u: g(u) * np.exp(-u / rho) / rho, 0.0, np.inf, limit=200)
    else:
        val, _ = quad(lambda gamma: g(gamma * rho) * np.exp(-gamma), 0.0, np.inf,
                      limit=200)
    return val


def average_ber_bound(rho: float, cfg: SystemConfig,
                      constants: QamBerConstants | None = None,
                      method: str = "quadrature", n_samples: int = 100000,
                      seed: int = 0, correct_detection: str = "product") -> float:
    """Expectation of the unconditional bound over i.i.d. unit-mean
    exponential per-cluster gains.

    Clusters are identically distributed, so a single one-dimensional
    expectation per term suffices.  The quadrature method combines the
    exact chi-squared averages of the single-Q terms with an adaptive
    integral for the product cross-term; "mc" draws fading samples.
    """
    if constants is None:
        constants = qam_ber_constants(cfg.qam_order)
    if method == "mc":
        value, _ = average_ber_bound_mc(rho, cfg, constants, n_samples, seed,
                                        correct_detection)
        return value
    if method != "quadrature":
        raise ValueError(f"unknown averaging method {method!r}")

    N, M = cfg.cluster_size, cfg.qam_order
    k_sym = cfg.symbol_bits_per_cluster
    mt_per_cluster = cfg.bits_per_cluster
    w_index = total_hamming_weight(N) / N

    if rho == 0.0:
        e_q = 0.5
        e_p = 0.5 * float(np.sum(constants.weights))
        e_cross = (0.5 ** (N - 1) if correct_detection == "product"
                   else (N - 1) * 0.5) * e_p
    else:
        e_q = rayleigh_average_q(rho / 4.0)
        e_p = float(np.sum([c * rayleigh_average_q(s * rho / 2.0)
                            for c, s in zip(constants.weights, constants.scales)]))
        e_cross = _cross_term_average(rho, N, constants, correct_detection)

    e_me = (w_index + k_sym * (N - 1) / 2.0) * e_q + k_sym * (e_p - e_cross)
    return e_me / mt_per_cluster


def average_ber_bound_mc(rho: float, cfg: SystemConfig,
                         constants: QamBerConstants | None = None,
                         n_samples: int = 100000, seed: int = 0,
                         correct_detection: str = "product") -> tuple[float, float]:
    """Monte Carlo fading average of the bound; returns (mean, stderr)."""
    if constants is None:
        constants = qam_ber_constants(cfg.qam_order)
    rng = np.random.Generator(np.random.Philox(key=seed))
    gammas = rng.exponential(1.0, size=n_samples)
    per_cluster = (me0_cluster(gammas, rho, cfg.cluster_size)
                   + me1_cluster(gammas, rho, cfg.cluster_size, cfg.qam_order,
                                 constants, correct_detection))
    values = per_cluster / cfg.bits_per_cluster
    return float(np.mean(values)), float(np.std(values, ddof=1) / np.sqrt(n_samples))
