from .enums import ConditionKind, OutputFormat, ResidueClass, SeriesCase, Splitting, Verb
from .errors import (
    CapacityError,
    CensusError,
    DivergentProductError,
    InvalidDiscriminantError,
    InvariantViolation,
    PureCubicCaseError,
)
