use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("profile must contain at least one agent")]
    Empty,
    #[error("malformed header: {0:?}")]
    BadHeader(String),
    #[error("expected {expected} preference lines, found {found}")]
    WrongAgentCount { expected: usize, found: usize },
    #[error("line {line}: expected {expected} houses, found {found}")]
    WrongLength { line: usize, expected: usize, found: usize },
    #[error("line {line}: duplicate house `{label}`")]
    DuplicateHouse { line: usize, label: String },
    #[error("line {line}: house `{label}` does not appear in the first preference line")]
    InconsistentHouses { line: usize, label: String },
    #[error("invalid house label `{0}`")]
    BadLabel(String),
    #[error("unknown house `{0}`")]
    UnknownHouse(String),
    #[error("unknown agent {0}")]
    UnknownAgent(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("restriction needs as many agents as houses ({agents} agents, {houses} houses)")]
    SizeMismatch { agents: usize, houses: usize },
    #[error("universe of {n}! assignments exceeds the brute-force limit n <= {limit}")]
    UniverseTooLarge { n: usize, limit: usize },
    #[error("canonical index {index} out of range (there are {total})")]
    IndexOutOfRange { index: u128, total: u128 },
    #[error("{count} profiles requested, more than {limit} needs long mode")]
    LongRunRequired { count: u128, limit: u128 },
    #[error("profile is not in canonical form")]
    NotCanonical,
    #[error("majority answers are not induced by any profile: {0}")]
    Unresolvable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
