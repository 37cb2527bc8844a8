use thiserror::Error;

use crate::sl2::SpectralTag;

/// Errors raised by classification, canonicalization and the moduli-space tools.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModuliError {
    #[error("determinant {det} is not within tolerance of 1")]
    Determinant { det: f64 },

    #[error("exact determinant {det} is not 1")]
    ExactDeterminant { det: String },

    #[error(
        "ambiguous classification: |tr| = {abs_trace} lies in the parabolic band but the matrix \
         is near neither ±I nor a parabolic Jordan form (defect {defect:e}); use exact mode or widen class_tol"
    )]
    ClassificationAmbiguous { abs_trace: f64, defect: f64 },

    #[error("matrix has no real eigenvalues")]
    NoRealEigenvalues,

    #[error("matrices do not commute (commutator norm {norm:e})")]
    NotCommuting { norm: f64 },

    #[error("type combination ({0}, {1}) cannot occur for a commuting pair")]
    ForbiddenCombo(SpectralTag, SpectralTag),

    #[error("operation expects combination {expected}, got ({0}, {1})", .found.0, .found.1)]
    WrongCombo {
        expected: &'static str,
        found: (SpectralTag, SpectralTag),
    },

    #[error("degenerate CC pair: nilpotent ratio c = {c:e} vanishes within tolerance")]
    DegenerateCC { c: f64 },

    #[error("complex eigenvector of the first matrix is not an eigenvector of the second (residual {residual:e})")]
    NotJointEigenvector { residual: f64 },

    #[error("parameter {name} = {value} is outside its allowed range")]
    ParamOutOfRange { name: &'static str, value: f64 },
}

impl ModuliError {
    /// Stable machine-readable code, used by the CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            ModuliError::Determinant { .. } | ModuliError::ExactDeterminant { .. } => "DETERMINANT",
            ModuliError::ClassificationAmbiguous { .. } => "AMBIGUOUS",
            ModuliError::NoRealEigenvalues => "NO_REAL_EIGENVALUES",
            ModuliError::NotCommuting { .. } => "NOT_COMMUTING",
            ModuliError::ForbiddenCombo(..) => "FORBIDDEN_COMBO",
            ModuliError::WrongCombo { .. } => "WRONG_COMBO",
            ModuliError::DegenerateCC { .. } => "DEGENERATE_CC",
            ModuliError::NotJointEigenvector { .. } => "NOT_JOINT_EIGENVECTOR",
            ModuliError::ParamOutOfRange { .. } => "PARAM_OUT_OF_RANGE",
        }
    }

    pub fn is_ambiguous(&self) -> bool {
        matches!(self, ModuliError::ClassificationAmbiguous { .. })
    }
}

pub type Result<T> = std::result::Result<T, ModuliError>;
