use thiserror::Error;

/// Hypotheses an inequality check may require of its inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    AlgebraNorm,
    SelfAdjointNorm,
    WeaklyUnitarilyInvariant,
    KnownUnitarySup,
    Hermitian,
    Contraction,
    Commutation,
    Normal,
    SquareZero,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Hypothesis::AlgebraNorm => "algebra norm",
            Hypothesis::SelfAdjointNorm => "self-adjoint norm",
            Hypothesis::WeaklyUnitarilyInvariant => "weakly unitarily invariant norm",
            Hypothesis::KnownUnitarySup => "closed-form unitary supremum",
            Hypothesis::Hermitian => "Hermitian input",
            Hypothesis::Contraction => "operator-norm contraction",
            Hypothesis::Commutation => "TS = +-ST",
            Hypothesis::Normal => "normal input",
            Hypothesis::SquareZero => "square-zero input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("input is not Hermitian (defect {defect:e})")]
    NonHermitianInput { defect: f64 },
    #[error("input is not a contraction (spectral norm {norm})")]
    NotAContraction { norm: f64 },
    #[error("norm evaluation failed: {0}")]
    NormEvaluation(String),
    #[error("unknown norm id {0:?}")]
    UnknownNorm(String),
    #[error("invalid Schatten exponent {0} (need p >= 1)")]
    InvalidSchattenExponent(f64),
    #[error("unknown ensemble id {0:?}")]
    UnknownEnsemble(String),
    #[error("ensemble {kind} requires an even dimension, got {dim}")]
    OddDimension { kind: &'static str, dim: usize },
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("check not applicable: requires {0}")]
    Inapplicable(Hypothesis),
    #[error("parse error in field {field:?}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub fn is_inapplicable(&self) -> bool {
        matches!(self, Error::Inapplicable(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
