"""groupmask: group-anonymity masking for census-style microdata.

The package reshapes the wavelet approximation of a concentration-difference
signal while preserving its wavelet details, then rewrites the microfile so
the masked distribution is realized by actual records.

Typical flow::

    from groupmask import (
        load_microfile, quantity_signal, concentration_signal,
        difference_signal, make_basis, run_masking, plan_moves, apply_moves,
    )
"""

from .masking import (
    DifferenceContext,
    InfeasibleConcentrations,
    MaskingResult,
    detail_drift,
    difference_signal,
    extremum_report,
    remask,
    rescale_and_round,
    resolve_concentrations,
    run_masking,
    synthesize_quantities,
)
from .microdata import (
    Attribute,
    AttributeSchema,
    ConcentrationSignal,
    Microfile,
    MicrofileParseError,
    ParameterSpec,
    QuantitySignal,
    SplitRule,
    VitalSelection,
    apply_split_rules,
    concentration_signal,
    largest_remainder,
    load_microfile,
    quantity_signal,
    save_microfile,
    schema,
    vital,
)
from .rewriter import Move, MovePlan, RewriteReport, apply_moves, plan_moves
from .wavelet import (
    Decomposition,
    ReconstructionMatrix,
    WaveletBasis,
    approximation_and_details,
    decompose,
    make_basis,
    reconstruct,
    reconstruction_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # microdata
    "Attribute", "AttributeSchema", "Microfile", "VitalSelection", "SplitRule",
    "ParameterSpec", "QuantitySignal", "ConcentrationSignal", "MicrofileParseError",
    "schema", "vital", "load_microfile", "save_microfile", "apply_split_rules",
    "quantity_signal", "concentration_signal", "largest_remainder",
    # wavelet
    "WaveletBasis", "Decomposition", "ReconstructionMatrix", "make_basis",
    "decompose", "reconstruct", "reconstruction_matrix", "approximation_and_details",
    # masking
    "DifferenceContext", "MaskingResult", "InfeasibleConcentrations",
    "difference_signal", "remask", "resolve_concentrations", "synthesize_quantities",
    "rescale_and_round", "extremum_report", "detail_drift", "run_masking",
    # rewriter
    "Move", "MovePlan", "RewriteReport", "plan_moves", "apply_moves",
]
