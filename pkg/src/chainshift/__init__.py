"""Substitution subshifts over a chain of primitive components: languages,
block Perron-Frobenius data, invariant-set classification and exact cylinder
measures."""

from .errors import (
    BudgetExceeded,
    ChainshiftError,
    DomainError,
    LambdaNotDominant,
    MeasureTypeCounting,
    NoPrimitiveChainError,
    ParseError,
    ThetaNotAboveOne,
    WordNotInLevelLanguage,
)
from .words import Alphabet, Occurrences, Substitution, apply, count_occurrences, language
from .structure import (
    ComponentChain,
    IncidenceMatrix,
    component_chain,
    incidence_matrix,
    is_empty_bottom,
    sub_substitution,
)
from .auxiliary import AuxiliarySubstitution, auxiliary_matrix, build_auxiliary, level_empty_diag
from .spectral import (
    EigenPair,
    LimitData,
    SpectralProfile,
    block_eigenvalues,
    limit_data,
    pf_vectors,
)
from .classify import (
    DecompositionReport,
    LevelReport,
    MinimalSets,
    PointSeed,
    SeedPair,
    arbitrarily_long_s_powers,
    classify_level,
    decomposition_report,
    find_seed_pair,
    minimal_sets,
    positively_recurrent,
)
from .measures import (
    CylinderValue,
    MeasureDescriptor,
    cylinder_measure,
    empirical_frequency,
    level_measure_table,
    measure_type,
    uniformity_check,
)
from .cli import InputSpec, parse_input

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AuxiliarySubstitution",
    "BudgetExceeded",
    "ChainshiftError",
    "ComponentChain",
    "CylinderValue",
    "DecompositionReport",
    "DomainError",
    "EigenPair",
    "IncidenceMatrix",
    "InputSpec",
    "LambdaNotDominant",
    "LevelReport",
    "LimitData",
    "MeasureDescriptor",
    "MeasureTypeCounting",
    "MinimalSets",
    "NoPrimitiveChainError",
    "Occurrences",
    "ParseError",
    "PointSeed",
    "SeedPair",
    "SpectralProfile",
    "Substitution",
    "ThetaNotAboveOne",
    "WordNotInLevelLanguage",
    "apply",
    "arbitrarily_long_s_powers",
    "auxiliary_matrix",
    "block_eigenvalues",
    "build_auxiliary",
    "classify_level",
    "component_chain",
    "count_occurrences",
    "cylinder_measure",
    "decomposition_report",
    "empirical_frequency",
    "find_seed_pair",
    "incidence_matrix",
    "is_empty_bottom",
    "language",
    "level_empty_diag",
    "level_measure_table",
    "limit_data",
    "measure_type",
    "minimal_sets",
    "parse_input",
    "pf_vectors",
    "positively_recurrent",
    "sub_substitution",
    "uniformity_check",
]
