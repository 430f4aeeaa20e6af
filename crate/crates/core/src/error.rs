use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("empty table: a semigroup with zero has at least one element")]
    EmptyTable,

    #[error("zero must be element 0, found {0}")]
    ZeroNotFirst(usize),

    #[error("entry {value} at cell ({row}, {col}) is outside [0, {order})")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("not associative: ({x}*{y})*{z} = {lhs} but {x}*({y}*{z}) = {rhs}")]
    NotAssociative {
        x: usize,
        y: usize,
        z: usize,
        lhs: usize,
        rhs: usize,
    },

    #[error("zero is not absorbing at cell ({row}, {col})")]
    ZeroNotAbsorbing { row: usize, col: usize },

    #[error("element {element} is outside a table of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("division needs nonzero operands")]
    ZeroOperand,

    #[error("division is ambiguous: both {first} and {second} solve it")]
    AmbiguousSolution { first: usize, second: usize },

    #[error("ideal family exceeded the cap of {cap} members")]
    CapExceeded { cap: usize },

    #[error("the complement of the unit group is not nilpotent, so the socle is undefined")]
    NotElementary,

    #[error("the semigroup has no identity")]
    NoIdentity,

    #[error("exhaustive functional search needs {size} candidates, above the bound {bound}")]
    SearchSpaceTooLarge { size: u128, bound: u128 },

    #[error("algebra dimension {dim} exceeds the brute-force cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("witness {0} lies in the subgroup")]
    WitnessInH(String),

    #[error("witness {0} does not normalize the subgroup")]
    WitnessNotNormalizing(String),

    #[error("constructed operation is not associative at ({x}, {y}, {z})")]
    AssociativityFailed { x: usize, y: usize, z: usize },

    #[error("{cells} free cells exceed the enumeration budget {budget}")]
    BudgetExceeded { cells: usize, budget: usize },

    #[error("not 0-cancellative: {a} and {b} cancel against {c}")]
    NotZeroCancellative { a: usize, b: usize, c: usize },

    #[error("unsupported field: {0}")]
    BadField(String),

    #[error("unknown group spec: {0}")]
    BadGroupSpec(String),

    #[error("unknown element name: {0}")]
    UnknownElement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag, used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::EmptyTable => "EmptyTable",
            Error::ZeroNotFirst(_) => "ZeroNotFirst",
            Error::NotClosed { .. } => "NotClosed",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::ZeroNotAbsorbing { .. } => "ZeroNotAbsorbing",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::ZeroOperand => "ZeroOperand",
            Error::AmbiguousSolution { .. } => "AmbiguousSolution",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotElementary => "NotElementary",
            Error::NoIdentity => "NoIdentity",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            Error::DimensionTooLarge { .. } => "DimensionTooLarge",
            Error::NotAGroup(_) => "NotAGroup",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::WitnessInH(_) => "WitnessInH",
            Error::WitnessNotNormalizing(_) => "WitnessNotNormalizing",
            Error::AssociativityFailed { .. } => "AssociativityFailed",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotZeroCancellative { .. } => "NotZeroCancellative",
            Error::BadField(_) => "BadField",
            Error::BadGroupSpec(_) => "BadGroupSpec",
            Error::UnknownElement(_) => "UnknownElement",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
