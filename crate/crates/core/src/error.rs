use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary (max |U^dag U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("generator is not antihermitian (max |H^dag + H| = {deviation:e})")]
    BadGenerator { deviation: f64 },
    #[error("unsupported dimension: expected {expected}, found {found}")]
    BadDim { expected: usize, found: usize },
    #[error("malformed gate spec: {0}")]
    BadSpec(&'static str),
    #[error("local factor {index} is not a special unitary 2x2 matrix")]
    BadFactor { index: usize },
    #[error("G2 has imaginary part {im:e}; input is not unitary")]
    ImaginaryG2 { im: f64 },
    #[error("W matrix has imaginary residue {residue:e}")]
    ImaginaryW { residue: f64 },
    #[error(
        "no eigenphase assignment reproduces the Makhlin invariants (best residual {residual:e})"
    )]
    NoConsistentAssignment { residual: f64 },
    #[error("Weyl reduction did not reach the chamber")]
    ReductionDiverged,
    #[error("canonical point is not in the Weyl chamber")]
    NotReduced,
    #[error("gate binds no local degrees of freedom; no finite gate-count bound")]
    UnboundedGate,
    #[error("eta = {eta} is out of range for {n} qubits")]
    BadEta { n: usize, eta: usize },
    #[error("surface grid needs at least 2 points per axis")]
    BadGrid,
}

impl Error {
    /// Variant name, stable across message wording changes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotUnitary { .. } => "NotUnitary",
            Error::BadGenerator { .. } => "BadGenerator",
            Error::BadDim { .. } => "BadDim",
            Error::BadSpec(_) => "BadSpec",
            Error::BadFactor { .. } => "BadFactor",
            Error::ImaginaryG2 { .. } => "ImaginaryG2",
            Error::ImaginaryW { .. } => "ImaginaryW",
            Error::NoConsistentAssignment { .. } => "NoConsistentAssignment",
            Error::ReductionDiverged => "ReductionDiverged",
            Error::NotReduced => "NotReduced",
            Error::UnboundedGate => "UnboundedGate",
            Error::BadEta { .. } => "BadEta",
            Error::BadGrid => "BadGrid",
        }
    }
}
