use thiserror::Error;

/// Broad failure classes, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Budget,
    Invariant,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group closure exceeded the order bound {0}")]
    OrderBoundExceeded(usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not contained in the ambient subgroup")]
    NotContained,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live in different group algebras")]
    GroupMismatch,
    #[error("element is not an idempotent")]
    NotAnIdempotent,
    #[error("quotient is not cyclic")]
    QuotientNotCyclic,
    #[error("character sum did not produce rational coefficients")]
    NonRationalOutput,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("matrix unit relation failed: {0}")]
    MatrixUnitRelationFailed(String),
    #[error("element is not in the image of the field embedding")]
    NotInImage,
    #[error("galois group has size {found}, expected {expected}")]
    GaloisSizeMismatch { expected: usize, found: usize },
    #[error("twisting could not be trivialized: {0}")]
    TwistingNotTrivialized(String),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("component is not certified to have Schur index one")]
    SchurIndexNotOne,
    #[error("invalid parameter: {0}")]
    ParameterInvalid(String),
    #[error("inverse has non-integral coefficients")]
    NonIntegralInverse,
    #[error("no integral power found below {0}")]
    MinimalExponentNotFound(usize),
    #[error("component is exceptional")]
    ExceptionalComponent,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            NotAPermutation(_) | NotASubgroup | NotContained | NotNormal | QuotientNotCyclic
            | ParameterInvalid(_) | Parse(_) | GroupMismatch | ConductorMismatch(..)
            | DimensionMismatch(_) | NotAnIdempotent | NotInImage => ErrorClass::Input,
            OrderBoundExceeded(_) | BudgetExceeded(_) | TwistingNotTrivialized(_) => {
                ErrorClass::Budget
            }
            SchurIndexNotOne | ExceptionalComponent => ErrorClass::Unsupported,
            _ => ErrorClass::Invariant,
        }
    }

    /// Stable machine-readable tag.
    pub fn reason(&self) -> &'static str {
        use Error::*;
        match self {
            OrderBoundExceeded(_) => "order_bound_exceeded",
            NotAPermutation(_) => "not_a_permutation",
            NotASubgroup => "not_a_subgroup",
            NotContained => "not_contained",
            NotNormal => "not_normal",
            DivisionByZero => "division_by_zero",
            ConductorMismatch(..) => "conductor_mismatch",
            DimensionMismatch(_) => "dimension_mismatch",
            GroupMismatch => "group_mismatch",
            NotAnIdempotent => "not_an_idempotent",
            QuotientNotCyclic => "quotient_not_cyclic",
            NonRationalOutput => "non_rational_output",
            BudgetExceeded(_) => "budget_exceeded",
            MatrixUnitRelationFailed(_) => "matrix_unit_relation_failed",
            NotInImage => "not_in_image",
            GaloisSizeMismatch { .. } => "galois_size_mismatch",
            TwistingNotTrivialized(_) => "twisting_not_trivialized",
            SingularSystem => "singular_system",
            SchurIndexNotOne => "schur_index_not_one",
            ParameterInvalid(_) => "parameter_invalid",
            NonIntegralInverse => "non_integral_inverse",
            MinimalExponentNotFound(_) => "minimal_exponent_not_found",
            ExceptionalComponent => "exceptional_component",
            Parse(_) => "parse_error",
            InvariantBreach(_) => "invariant_breach",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
