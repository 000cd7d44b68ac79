use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("generator `{0}` has no assigned value")]
    UnassignedGenerator(String),

    #[error("exponent vector must be nonempty with entries >= 1")]
    BadExponents,

    #[error("invalid exponent product `{0}`")]
    BadExponentProduct(String),

    #[error("field degree {0} is out of range (1..=32)")]
    FieldDegree(u32),

    #[error("modulus {0:#x} is not irreducible")]
    Reducible(u64),

    #[error("operands belong to different fields")]
    MixedFields,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),

    #[error("{j} does not divide the field degree {k}")]
    NotASubfield { j: u32, k: u32 },

    #[error("determinant is not 1")]
    Determinant,

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::perm::MAX_DEGREE)]
    PermDegree(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle type {ct} does not fit on {n} points")]
    SupportExceeds { ct: String, n: usize },

    #[error("cycle type {0} is odd and has no elements in the alternating group")]
    OddCycleType(String),

    #[error("invalid cycle type `{0}`")]
    BadCycleType(String),

    #[error("word uses generator `{0}`; only x and y are supported here")]
    NotTwoGenerator(String),

    #[error("{0} does not divide q-1 or q+1")]
    OrderNotInTorus(u64),

    #[error("enumeration of {0} cases exceeds the guard of {1}")]
    SizeGuard(u128, u128),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("recipe file line {line}: {msg}")]
    RecipeFile { line: usize, msg: String },

    #[error("malformed field element `{0}`")]
    BadElement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
