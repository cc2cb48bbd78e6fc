use thiserror::Error;

/// Errors raised anywhere in the braid-to-polynomial pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate deformation parameter: sin(theta/2) vanishes (theta = {theta})")]
    DegenerateQ { theta: f64 },

    #[error("spins ({0}/2, {1}/2, {2}/2) do not form an admissible triple")]
    NonAdmissibleTriple(u32, u32, u32),

    #[error("radicand {value:e} is not positive; theta is too large for the spins in play")]
    NegativeRadicand { value: f64 },

    #[error("vanishing q-factorial [{arg}]! in a denominator")]
    VanishingDenominator { arg: u32 },

    #[error("sample design matrix is rank deficient (condition {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("fit residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("{needed} samples required for a window of width {width}, got {got}")]
    InsufficientSamples { needed: usize, width: usize, got: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("zero power on generator {index}")]
    ZeroPower { index: usize },

    #[error("strand count must be even and at least 2, got {0}")]
    InvalidStrandCount(usize),

    #[error("expected {expected} cup flips, got {got}")]
    FlipCount { expected: usize, got: usize },

    #[error("cap {cap} joins two strands oriented the same way")]
    CapMismatch { cap: usize },

    #[error("syllable {syllable} is annotated {annotated} but propagation gives {propagated}")]
    AnnotationConflict {
        syllable: usize,
        annotated: &'static str,
        propagated: &'static str,
    },

    #[error("run contains generator b{index} whose parity does not match the {basis} basis")]
    ParityMismatch { index: usize, basis: &'static str },

    #[error("syllable {0} has no orientation label")]
    UnannotatedSyllable(usize),

    #[error("{crossings} crossings exceed the state-sum limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },

    #[error("embedded block fails unitarity by {deviation:e}")]
    NonUnitaryBlock { deviation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
