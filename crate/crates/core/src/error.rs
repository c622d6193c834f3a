//! Crate-wide error type.

/// Errors produced by any module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Field construction was asked for a composite characteristic.
    #[error("{0} is not prime")]
    NotPrime(u64),
    /// Field construction was asked for extension degree zero.
    #[error("extension degree must be positive")]
    ZeroDegree,
    /// The requested field order p^m does not fit the supported range.
    #[error("field order {p}^{m} exceeds the supported range")]
    FieldTooLarge { p: u64, m: u32 },
    /// Two elements live in fields with no declared embedding between them.
    #[error("no embedding between GF({p}^{ma}) and GF({q}^{mb})")]
    FieldMismatch { p: u64, ma: u32, q: u64, mb: u32 },
    /// Multiplicative inverse of zero.
    #[error("division by zero in GF({p}^{m})")]
    ZeroInverse { p: u64, m: u32 },
    /// A parameter had to be a power of the characteristic and was not.
    #[error("{q} is not a positive power of the characteristic {p}")]
    NotPowerOfChar { q: u128, p: u64 },
    /// An element was expected inside a subfield and was not fixed by its
    /// Frobenius.
    #[error("element lies outside the requested subfield")]
    NotInSubfield,
    /// Root-finding on the zero polynomial.
    #[error("the zero polynomial does not have a root set")]
    ZeroPolynomial,
    /// Roots of unity of order divisible by the characteristic (or zero).
    #[error("root-of-unity order {n} must be nonzero and coprime to {p}")]
    BadRootOrder { n: u64, p: u64 },
    /// A multiplicative-order computation needed a prime factor beyond the
    /// 64-bit factoring range.
    #[error("order computation exceeds the 64-bit factoring range")]
    OrderTooLarge,
    /// A sublattice basis matrix was not square and nonsingular.
    #[error("sublattice basis must be square with nonzero determinant")]
    SingularBasis,
    /// Vectors or lattices of different ranks were combined.
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    /// An operation requiring gcd(index, p) = 1 was given a sublattice whose
    /// index is divisible by p.
    #[error("sublattice index {index} is divisible by the characteristic {p}")]
    NotPSaturated { index: u64, p: u64 },
    /// Matrix dimensions did not match the operation.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A dual function had support outside the dual subgroup of the quotient.
    #[error("support contains a character outside the dual subgroup")]
    CharacterOutsideDual,
    /// Descent input whose coefficients are not fixed by the base-field
    /// Frobenius.
    #[error("operator coefficients are not fixed by the GF(q) Frobenius")]
    NotFrobeniusFixed,
    /// A function's period lattice is not contained in the fragmentation
    /// lattice.
    #[error("period lattice is not compatible with the fragmentation lattice")]
    IncompatiblePeriod,
    /// Maximal abelian covers exist only for connected graphs.
    #[error("graph is not connected")]
    DisconnectedGraph,
    /// A Laurent polynomial asked for a negative power of a base operator
    /// that has no supplied inverse.
    #[error("negative power of base operator {variable} with no inverse supplied")]
    MissingInverse { variable: usize },
    /// A torus point had a zero coordinate.
    #[error("torus point coordinates must be nonzero")]
    ZeroCoordinate,
    /// Text input failed to parse.
    #[error("{file}:{line}:{col}: {msg}")]
    Parse {
        file: String,
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
