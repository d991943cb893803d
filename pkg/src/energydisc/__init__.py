"""Bayesian energy discriminant classification on the projection lattice."""

from .classifier import (
    ClassSpec,
    EnergyClassifier,
    EnergyReport,
    NormalizationMode,
    decide,
    decide_batch,
    discriminants,
    empirical_quality,
    energy_report,
    fit,
    format_model,
    load_model,
    parse_model,
    region_energy,
    save_model,
    snr,
)
from .datasets import (
    LabeledDataset,
    gen_example1,
    gen_example2,
    load_csv,
    make_rng,
    save_csv,
    unit_normalized,
)
from .errors import (
    DegenerateTrace,
    DimensionMismatch,
    EmptyClass,
    EmptyDataset,
    EnergydiscError,
    InvalidMatrix,
    InvalidParameter,
    LabelError,
    NotPSD,
    ParseError,
    ZeroSignal,
)
from .logic import FuzzyProposition, join, leq, meet, membership
from .moments import MomentSummary, analytic_moments, estimate_moments, expected_quadratic
from .spectral import (
    EigenDecomposition,
    Projector,
    complement,
    identity_projector,
    projector_from_basis,
    sym_eig,
    sym_matrix,
    zero_projector,
)

__version__ = "0.1.0"

__all__ = [
    "ClassSpec",
    "DegenerateTrace",
    "DimensionMismatch",
    "EigenDecomposition",
    "EmptyClass",
    "EmptyDataset",
    "EnergyClassifier",
    "EnergyReport",
    "EnergydiscError",
    "FuzzyProposition",
    "InvalidMatrix",
    "InvalidParameter",
    "LabelError",
    "LabeledDataset",
    "MomentSummary",
    "NormalizationMode",
    "NotPSD",
    "ParseError",
    "Projector",
    "ZeroSignal",
    "analytic_moments",
    "complement",
    "decide",
    "decide_batch",
    "discriminants",
    "empirical_quality",
    "energy_report",
    "estimate_moments",
    "expected_quadratic",
    "fit",
    "format_model",
    "gen_example1",
    "gen_example2",
    "identity_projector",
    "join",
    "leq",
    "load_csv",
    "load_model",
    "make_rng",
    "meet",
    "membership",
    "parse_model",
    "projector_from_basis",
    "region_energy",
    "save_csv",
    "save_model",
    "snr",
    "sym_eig",
    "sym_matrix",
    "unit_normalized",
    "zero_projector",
]
