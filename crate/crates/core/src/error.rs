use thiserror::Error;

/// Monomial `(i, j, coefficient)` of a bivariate series that failed to cancel.
pub type Residual = (usize, usize, String);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient z^{requested} requested but the series is only valid through z^{valid}")]
    PrecisionExceeded { requested: i64, valid: i64 },

    #[error("{kernel}: singular prefactor does not cancel; residual monomials {residual:?}")]
    NonCancellation {
        kernel: &'static str,
        residual: Vec<Residual>,
    },

    #[error("singular curve: discriminant of 4x^3 - 60 e4 x - 140 e6 vanishes")]
    SingularCurve,

    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: String, y: String },

    #[error("basepoint ({x}, {y}) is 2-torsion; x - x0 is not a local parameter there")]
    TwoTorsionBasepoint { x: String, y: String },

    #[error("function has a pole at the chart centre")]
    PoleAtChart,

    #[error("Laurent-tail matching for P_{k} is inconsistent: {detail}")]
    InconsistentMatching { k: usize, detail: String },

    #[error("neither sign of 2x^2/y makes df - beta holomorphic at infinity")]
    NoValidFSign,

    #[error("partition sum and exponential form disagree at index {index}")]
    PartitionMismatch { index: usize },

    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },

    #[error("augmentation must be {expected}, found {found}")]
    Augmentation { expected: &'static str, found: String },

    #[error("operator is not strictly weight-raising (entry {row},{col})")]
    NotNilpotent { row: usize, col: usize },

    #[error("operator is not unipotent (entry {row},{col})")]
    NotUnipotent { row: usize, col: usize },

    #[error("operator is not in Span{{1, tau, ad_sigma}}: offending entries {entries:?}")]
    NotInSpan { entries: Vec<(String, String)> },

    #[error("series is not primitive: shuffle of {left} and {right} does not vanish")]
    NotPrimitive { left: String, right: String },

    #[error("connection form has a pole of order {order} > 1")]
    PoleOrder { order: i64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cannot parse {what}: {input}")]
    Parse { what: &'static str, input: String },

    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
