"""Numerical laboratory for Orlicz-normed time-frequency analysis.

Layers, from the ground up: Young-function calculus (`young`), phase-space
weights (`weights`), sampled fields on centered grids (`field`), weighted
Orlicz and mixed norms (`orlicz`), time-frequency transforms (`tfa`),
modulation-space norms and hypothesis checkers (`modspace`),
quantization-parameterized pseudo-differential operators (`psido`), the
spectrogram entropy functional (`entropy`), and the named verification
batteries (`verify`) exposed through the `orlicztf` command line (`cli`).
"""

from .entropy import (
    EntropyResult,
    continuity_probe,
    entropy,
    family_grid,
    gaussian_family_scan,
    lambda_family_table,
    lieb_bound_check,
    omega_decomposition,
)
from .field import (
    Axis,
    Field,
    Grid,
    fourier_transform,
    inner_product,
    inverse_fourier_transform,
    l2_norm,
    load_csv,
    load_json,
    lp_norm,
    make_gaussian,
    make_gaussian_mix,
    make_grid,
    make_hermite,
    make_random_bandlimited,
    phase_grid,
    save_csv,
    save_json,
    worker_count,
)
from .modspace import (
    ModulationSpaceSpec,
    check_embedding,
    check_pseudo_hypotheses,
    check_wigner_hypotheses,
    inverse_product_check,
    lower_growth_check,
    modulation_norm,
    phase_field_norm,
    stft_norm_factorization_check,
)
from .orlicz import (
    MixedNormSpec,
    luxemburg_norm,
    mixed_norm,
    verify_holder,
    verify_young_convolution,
)
from .psido import (
    KernelMatrix,
    apply,
    calculi_consistency,
    estimate_operator_norm,
    kernel,
    reduce_symbol,
    symbol_norm,
)
from .tfa import (
    QuantizationMatrix,
    as_quantization,
    quantization_change,
    stft,
    stft_adjoint,
    stft_projection,
    twisted_convolution,
    wigner,
)
from .weights import Weight
from .young import (
    YoungFunction,
    check_delta2,
    check_p_steered,
    closed_power_form,
)

__all__ = [
    "Axis",
    "EntropyResult",
    "Field",
    "Grid",
    "KernelMatrix",
    "MixedNormSpec",
    "ModulationSpaceSpec",
    "QuantizationMatrix",
    "Weight",
    "YoungFunction",
    "apply",
    "as_quantization",
    "calculi_consistency",
    "check_delta2",
    "check_embedding",
    "check_p_steered",
    "check_pseudo_hypotheses",
    "check_wigner_hypotheses",
    "closed_power_form",
    "continuity_probe",
    "entropy",
    "estimate_operator_norm",
    "family_grid",
    "fourier_transform",
    "gaussian_family_scan",
    "inner_product",
    "inverse_fourier_transform",
    "inverse_product_check",
    "kernel",
    "l2_norm",
    "lambda_family_table",
    "lieb_bound_check",
    "load_csv",
    "load_json",
    "lower_growth_check",
    "lp_norm",
    "luxemburg_norm",
    "make_gaussian",
    "make_gaussian_mix",
    "make_grid",
    "make_hermite",
    "make_random_bandlimited",
    "mixed_norm",
    "modulation_norm",
    "omega_decomposition",
    "phase_field_norm",
    "phase_grid",
    "quantization_change",
    "reduce_symbol",
    "save_csv",
    "save_json",
    "stft",
    "stft_adjoint",
    "stft_norm_factorization_check",
    "stft_projection",
    "symbol_norm",
    "twisted_convolution",
    "verify_holder",
    "verify_young_convolution",
    "wigner",
    "worker_count",
]

__version__ = "1.0.0"
