"""Riesz products on the circle: exact sparse Fourier expansion,
singularity/equivalence classification, dimension estimates, and
quasi-independent set combinatorics."""

from .core import (
    DYADIC,
    LACUNARY3,
    CapError,
    CoefficientSequence,
    FourierCoefficient,
    FrequencySequence,
    RegimeError,
    RieszSpec,
    SignPattern,
    SpectralBand,
    SpectralGapError,
    StabilityError,
    TrigPolynomial,
    ValidationError,
    convolve_products,
    eval_partial_product,
    expand_partial_product,
    fourier_coefficient,
    gram_centered_exponentials,
    randomize_phases,
    spectrum_bands,
    validate_spec,
)
from .analysis import (
    DimensionReport,
    EnergyReport,
    HolderSample,
    alpha_energy_band_series,
    alpha_energy_direct,
    dimension_bounds,
    dimension_integral,
    energy_dimension_bound,
    holder_transfer_check,
    interval_measure,
    interval_upper_bound,
    local_holder,
    series_verdict,
    smooth_by_vp,
    vallee_poussin_kernel,
)
from .classify import (
    DivergenceWitness,
    SeriesEvidence,
    TailDeclarations,
    Verdict,
    build_divergence_witness,
    centered_series_partial_sums,
    classify_pair,
    disc_metric_distance,
    series_gap_l2,
    series_gap_weighted,
)
from .qi import (
    DissociatedBase,
    IntVectorSet,
    LambdaSet,
    Mesh,
    MeshBoundReport,
    MeshIntersection,
    QiCheckResult,
    QiMatrix,
    SidonEstimate,
    build_dissociated_base,
    build_lambda,
    build_qi_matrix,
    closed_form_column_count,
    mesh_intersection,
    qi_check_bruteforce,
    qi_check_mitm,
    sidon_lower_estimate,
    sidon_union_bound,
    verify_mesh_bound,
)
from .specio import Diagnostic, SpecFileError, load_spec, schema_validate

__version__ = "0.1.0"
