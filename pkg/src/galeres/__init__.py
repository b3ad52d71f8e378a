"""galeres: exact Gale-duality classification of planar configurations and
toric residue series for codimension-two essential Cayley systems."""

from .arrangement import (
    Arrangement,
    Cell,
    MinimalCellSet,
    isolating_direction,
    map_exponent,
    minimal_cells,
    negative_support,
    series_support_cell,
)
from .classify import (
    CayleyStructure,
    ClassificationResult,
    InvariantViolation,
    ccw_indexing,
    classify,
    classify_balanced7,
    essential_cayley,
    gl2_equivalence,
    heptagon_template,
    pk_partition,
    theorem_matchers,
)
from .configs import (
    Cocircuit,
    Configuration,
    NumberFieldContext,
    NumericContext,
    PlanarConfig,
    PreconditionError,
    Profile,
    RationalContext,
    ValidationReport,
    circuit_discriminant,
    circuit_dual,
    cocircuit_status,
    cocircuits,
    profile,
    validate,
    zero_sum_partitions,
)
from .exact import (
    IntMatrix,
    NumberField,
    NumberFieldElement,
    column_hnf,
    heptagon_field,
    hermite_normal_form,
    kernel_basis,
    smith_normal_form,
)
from .laurent import LaurentPolynomial, RationalFunction, TruncatedSeries
from .operators import (
    AnnihilationReport,
    DegenerateWeightError,
    DerivativeTable,
    DifferentialOperator,
    StabilityReport,
    annihilation_check,
    apply_operator,
    hypergeometric_generators,
    laurent_expand,
    stability_check,
)
from .residues import (
    CAYLEY_VARS,
    CayleySystem,
    ConditioningError,
    ResidueSeriesResult,
    euler_jacobi_test,
    f2_fixtures,
    numeric_residue_oracle,
    residue_series,
    series_for_degree,
    shift_c,
)

__version__ = "0.1.0"
