"""statdec: statistical decoding of random binary linear codes.

End-to-end workbench: exact parity-check sum biases and their Krawtchouk
identities, pool harvesting by Gaussian systematic forms or birthday
collisions, the majority-vote decoder, and the asymptotic exponent calculus
used to compare against information-set decoding baselines.
"""

from .bias import BiasPair, biases_via_krawtchouk, exact_biases, krawtchouk, required_equations
from .bitmat import BitMatrix, BitVector, Permutation, mat_vec, partial_systematize, systematize, weight
from .codec import CodeInstance, DecodingProblem, is_dual_word, random_code, recover_message, sample_problem
from .decode import DecodeResult, decode_multi_weight, decode_single_weight, dominant_weight
from .harvest import DumerConfig, ParityPool, dumer_iteration, harvest_dumer, harvest_gauss, pool_slice
from .asympt import (DumerParams, ExponentPoint, corollary_pi, dumer_rho, emit_curve, entropy,
                     entropy_inv, gv_tau, isd_sublinear_coeff, omega0, optimize_dumer,
                     pi_binomial, pi_exponent, pi_sublinear_limit, prange_exponent)

__version__ = "0.1.0"

__all__ = [
    "BiasPair", "BitMatrix", "BitVector", "CodeInstance", "DecodeResult", "DecodingProblem",
    "DumerConfig", "DumerParams", "ExponentPoint", "ParityPool", "Permutation",
    "biases_via_krawtchouk", "corollary_pi", "decode_multi_weight", "decode_single_weight",
    "dominant_weight", "dumer_iteration", "dumer_rho", "emit_curve", "entropy", "entropy_inv",
    "exact_biases", "gv_tau", "harvest_dumer", "harvest_gauss", "is_dual_word",
    "isd_sublinear_coeff", "krawtchouk", "mat_vec", "omega0", "optimize_dumer",
    "partial_systematize", "pi_binomial", "pi_exponent", "pi_sublinear_limit", "pool_slice",
    "prange_exponent", "random_code", "recover_message", "required_equations", "sample_problem",
    "systematize", "weight",
]
