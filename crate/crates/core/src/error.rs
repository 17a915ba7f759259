use core::fmt;

/// Failure modes of the arithmetic kernel and the structures built on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The base of a modulus is not an odd prime.
    InvalidPrime(u64),
    /// Precision exponent of zero.
    ZeroPrecision,
    /// `p^k` does not stay below 2^63.
    ModulusOverflow { p: u64, k: u32 },
    /// Two residues with different moduli were combined.
    ModulusMismatch,
    /// The value is divisible by `p`.
    NotAUnit(u64),
    /// Discrete log search exhausted without a match.
    NotInGroup(u64),
    /// The base handed to the discrete log does not generate the units group.
    NotAGenerator(u64),
    /// Baby-step table would exceed the supported size.
    TableTooLarge(u64),
    /// Malformed p-ary digit string.
    Parse(ParseError),
    /// `p` is not 1 mod 6, so 1 has no nontrivial cube roots.
    NoCubicRoots(u64),
    /// The derivative vanishes mod `p` at the seed root.
    SingularRoot,
    /// The seed does not satisfy the polynomial at its precision.
    NotARoot,
    /// A lift was requested to a precision below the current one.
    InvalidPrecision { from: u32, to: u32 },
    /// One of the FLT terms is divisible by `p`.
    Case2Excluded(i64),
    /// The successor-inverse map is undefined when `a + 1` is not a unit.
    UndefinedAtMinusOne(u64),
    /// Requested subgroup order does not divide `p - 1`.
    NotADivisor { d: u64, order: u64 },
    /// Scan parameters outside the supported range.
    OutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Empty,
    WrongLength { expected: u32, found: usize },
    InvalidDigit { digit: u64, base: u64 },
    BadCharacter(char),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::ZeroPrecision => f.write_str("precision k must be at least 1"),
            Error::ModulusOverflow { p, k } => write!(f, "{p}^{k} exceeds the modulus bound 2^63"),
            Error::ModulusMismatch => f.write_str("residues belong to different moduli"),
            Error::NotAUnit(n) => write!(f, "{n} is not a unit"),
            Error::NotInGroup(x) => write!(f, "no discrete logarithm found for {x}"),
            Error::NotAGenerator(g) => write!(f, "{g} does not generate the units group"),
            Error::TableTooLarge(n) => write!(f, "group of order {n} is too large for baby-step giant-step"),
            Error::Parse(e) => write!(f, "invalid p-ary code: {e}"),
            Error::NoCubicRoots(p) => write!(f, "no nontrivial cubic roots of 1 for p = {p} (p is not 1 mod 6)"),
            Error::SingularRoot => f.write_str("derivative vanishes mod p at the root"),
            Error::NotARoot => f.write_str("seed is not a root at its precision"),
            Error::InvalidPrecision { from, to } => {
                write!(f, "cannot lift from precision {from} to {to}")
            }
            Error::Case2Excluded(x) => write!(f, "{x} is divisible by p (case 2 is excluded)"),
            Error::UndefinedAtMinusOne(a) => write!(f, "{a} + 1 is not a unit"),
            Error::NotADivisor { d, order } => write!(f, "{d} does not divide the core order {order}"),
            Error::OutOfRange => f.write_str("parameters out of supported range"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => f.write_str("empty digit string"),
            ParseError::WrongLength { expected, found } => {
                write!(f, "expected {expected} digits, found {found}")
            }
            ParseError::InvalidDigit { digit, base } => write!(f, "digit {digit} out of range for base {base}"),
            ParseError::BadCharacter(c) => write!(f, "unexpected character {c:?}"),
        }
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
