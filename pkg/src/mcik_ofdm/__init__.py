"""MCIK-OFDM link-level simulator and closed-form BER bound evaluator."""

__version__ = "0.1.0"

from .core import SystemConfig, ConfigError, validate_config, bits_per_block
from .modem import QamConstellation, build_constellation, modulate, demodulate_ml
from .codec import (ClusterActivation, OfdmBlock, map_index_bits, index_to_binary,
                    hamming, assemble_block, disassemble_block)
from .channel import RngStream, ChannelRealization, draw_channel, apply_channel
from .detector import (ClusterDecision, detect_cluster, detect_cluster_lrt,
                       detect_block)
from .analytic import (QamBerConstants, q_function, pep_conditional,
                       qam_ber_constants, qam_awgn_ber, me0_cluster, me1_cluster,
                       ber_bound, ber_bound_conditional, average_ber_bound,
                       exp_fading_average)
from .monte_carlo import StoppingRule, TrialStats, BerPoint, run_point, run_sweep

__all__ = [
    "SystemConfig", "ConfigError", "validate_config", "bits_per_block",
    "QamConstellation", "build_constellation", "modulate", "demodulate_ml",
    "ClusterActivation", "OfdmBlock", "map_index_bits", "index_to_binary",
    "hamming", "assemble_block", "disassemble_block",
    "RngStream", "ChannelRealization", "draw_channel", "apply_channel",
    "ClusterDecision", "detect_cluster", "detect_cluster_lrt", "detect_block",
    "QamBerConstants", "q_function", "pep_conditional", "qam_ber_constants",
    "qam_awgn_ber", "me0_cluster", "me1_cluster", "ber_bound",
    "ber_bound_conditional", "average_ber_bound", "exp_fading_average",
    "StoppingRule", "TrialStats", "BerPoint", "run_point", "run_sweep",
]
