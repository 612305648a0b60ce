use thiserror::Error;

use crate::frame::Stage;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // frame validation
    #[error("ordering violation: {0}")]
    OrderingViolation(String),
    #[error("non-regular designated stage: {name} = {stage}")]
    NonRegularStage { name: &'static str, stage: Stage },
    #[error("alphabet on non-regular stage {0}")]
    AlphabetOnNonRegular(Stage),
    #[error("zero alphabet at {0}")]
    ZeroAlphabet(String),
    #[error("missing alphabet for regular stage {0}")]
    MissingAlphabet(Stage),
    #[error("alphabet given for kappa stage {0}; the kappa coordinate uses col_alphabet")]
    AlphabetOnKappa(Stage),
    #[error("stage {stage} out of range (stage_count = {stage_count})")]
    StageOutOfRange { stage: Stage, stage_count: usize },

    // frame file parsing
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing key \"{0}\"")]
    MissingKey(&'static str),

    // posets
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("poset has no top element")]
    NoTop,
    #[error("predicate excludes top")]
    PredicateExcludesTop,
    #[error("not a projection: clause {clause} fails at {counterexample:?}")]
    NotAProjection {
        clause: &'static str,
        counterexample: Vec<usize>,
    },
    #[error("image not generic")]
    ImageNotGeneric,
    #[error("not a generic filter")]
    NotAGeneric,
    #[error("empty quotient")]
    EmptyQuotient,
    #[error("cap exceeded: {size} > {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("census cap exceeded: {size} > {cap}")]
    CensusCapExceeded { size: usize, cap: usize },

    // collapse posets
    #[error("parameter not regular: {0}")]
    ParameterNotRegular(Stage),
    #[error("empty stage interval ({lower}, {upper})")]
    BadInterval { lower: Stage, upper: Stage },

    // codec
    #[error("not a club code: {0:?}")]
    NotAClubCode(Vec<usize>),
    #[error("value out of alphabet: {value} >= {alphabet}")]
    ValueOutOfAlphabet { value: usize, alphabet: usize },
    #[error("index out of range: {index} >= {count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("block length mismatch: expected {expected}, got {got}")]
    BlockLength { expected: usize, got: usize },
    #[error("block index space overflows: {alphabet}^{len}")]
    IndexOverflow { alphabet: usize, len: usize },

    // factorization
    #[error("block invariant violated: {0}")]
    BlockInvariantViolated(String),
    #[error("domain mismatch at stage {stage}: expected [0,{expected})")]
    DomainMismatch { stage: Stage, expected: usize },

    // term forcing
    #[error("term poset too large: {size} > {cap}")]
    TermPosetTooLarge { size: usize, cap: usize },
    #[error("alphabet mismatch at stage {stage}: value {value} >= {count}")]
    AlphabetMismatch {
        stage: Stage,
        value: usize,
        count: usize,
    },
    #[error("condition not present in poset: {0}")]
    UnknownCondition(String),
}
