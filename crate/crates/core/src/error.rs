use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table entry ({row}, {col}) = {value} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table is not {rows}x{rows} (row {row} has {len} entries)")]
    RaggedTable { rows: usize, row: usize, len: usize },
    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("order {order} exceeds the subset mask width {width}")]
    Overflow { order: usize, width: usize },
    #[error("semigroup must have positive order")]
    EmptySemigroup,
    #[error("collapse relation is not transitive: {a}~{b} and {b}~{c} but not {a}~{c}")]
    NotAnEquivalence { a: usize, b: usize, c: usize },
    #[error("collapse relation is not a congruence: {a}~{a2} and {b}~{b2} but {a}*{b} !~ {a2}*{b2}")]
    NotWellDefined {
        a: usize,
        a2: usize,
        b: usize,
        b2: usize,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("semigroup does not satisfy the strong Følner condition")]
    NoSfc,
    #[error("the finite set F must be nonempty")]
    EmptyF,
    #[error("semigroup is not left amenable")]
    NotAmenable,
    #[error("mean is not left invariant: {0}")]
    NotInvariantInput(String),
    #[error("eta must satisfy 0 < eta < p(A)")]
    BadEta,
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("exhaustive enumeration supports order <= {max}, got {order}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("unknown campaign `{0}`")]
    UnknownCampaign(String),
    #[error("index must be >= 1, got {0}")]
    BadIndex(usize),
    #[error("word length must be >= {min}, got {len}")]
    BadLength { len: usize, min: usize },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
