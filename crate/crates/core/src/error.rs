use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("defining polynomial is reducible: {0}")]
    Reducible(String),
    #[error("invalid field specification: {0}")]
    InvalidSpec(String),
    #[error("supplied unit check failed: {0}")]
    NotAUnit(String),
    #[error("torsion order mismatch: expected {expected}, found {found}")]
    TorsionOrder { expected: u64, found: u64 },
    #[error("basis change does not define an integral basis: {0}")]
    NonIntegralBasis(String),
    #[error("rank-deficient lattice")]
    RankDeficient,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("element is zero at some embedding")]
    ZeroCoordinate,
    #[error("element does not belong to the ambient ideal")]
    NotInIdeal,
    #[error("region is unbounded")]
    Unbounded,
    #[error("residue class is not a unit: {0}")]
    NonUnitClass(String),
    #[error("modulus too large for brute-force residue enumeration ({0} classes)")]
    ModulusTooLarge(u64),
    #[error("class number {0} > 1 is not supported for this operation")]
    ClassGroupUnsupported(u64),
    #[error("unsupported degree {0} for this operation")]
    UnsupportedDegree(usize),
    #[error("prime {0} divides the index of every available order generator")]
    IndexDivisor(u64),
    #[error("torus set too large: size {0} violates the 1/5 bound")]
    TorusSetTooLarge(f64),
    #[error("region touches a coordinate axis where the character is not constant")]
    NonConstantCharacter,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
