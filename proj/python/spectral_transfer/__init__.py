"""Spectral measures, Weyl functions and transfer functions."""

from ._core import (
    CompareResult,
    DecayFit,
    FundamentalValues,
    Hamiltonian,
    MassDistribution,
    Potential,
    PsdVerdict,
    ScrewFunction,
    SLProblem,
    SpectralMeasure,
    TransferFunction,
    canonical_spectral_measure,
    compare_transfer,
    decay_fit,
    krein_kernel_psd,
    orthogonal_measure,
    phi_from_measure,
    screw_from_measure,
    solve_fundamental,
    string_spectral_measure,
    string_transfer,
    weyl_m,
)

__all__ = [
    "CompareResult",
    "DecayFit",
    "FundamentalValues",
    "Hamiltonian",
    "MassDistribution",
    "Potential",
    "PsdVerdict",
    "ScrewFunction",
    "SLProblem",
    "SpectralMeasure",
    "TransferFunction",
    "canonical_spectral_measure",
    "compare_transfer",
    "decay_fit",
    "krein_kernel_psd",
    "orthogonal_measure",
    "phi_from_measure",
    "screw_from_measure",
    "solve_fundamental",
    "string_spectral_measure",
    "string_transfer",
    "weyl_m",
]
