use alloc::string::String;
use core::fmt;

/// Errors surfaced by the exact layer.
///
/// Every variant names the violated invariant; callers (in particular the
/// CLI) print the message verbatim as the diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix dimensions incompatible with the requested operation.
    DimensionMismatch(String),
    /// The given matrix does not square to the identity.
    NotInvolution,
    /// A form that must be alternating (`uᵀ = −u`) is not.
    NotAlternating,
    /// A form that must satisfy `τᵀ·u·τ = −u` does not.
    NotAntiInvariant,
    /// A vector expected to lie in a sublattice does not.
    NotInSublattice,
    /// The pair `(u, w₀)` violates `w₀|_{(id+τ)Λ} = f_u`; no Real line
    /// bundle realizes it.
    FiberProductViolation,
    /// Group operations on classes over different lattice involutions.
    LatticeMismatch,
    /// A character fails the Reality condition.
    NotRealCharacter,
    /// Topological type `(g, r, a)` outside the admissible range.
    InvalidKleinType(String),
    /// Boundary degree parity violation: `Σ wᵢ ≢ d (mod 2)`.
    DegreeParityViolation,
    /// `J² ≠ −id` or `u` is not `J`-invariant.
    IncompatibleComplexStructure,
    /// A disk cap whose boundary does not match the prescribed loop.
    MalformedCap,
    /// Inverting a graded class whose degree-0 term is not 1.
    ConstantTermNotOne,
    /// Graded-algebra degree bookkeeping failure.
    DegreeMismatch(String),
    /// A mod-2 linear system that must be solvable is not; indicates a
    /// broken precondition upstream.
    InconsistentSystem,
    /// The degree `d` is below the stability bound; the orientability
    /// criterion is not established there.
    BelowStabilityBound(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            Error::NotInvolution => write!(f, "matrix is not an involution (square != identity)"),
            Error::NotAlternating => write!(f, "form is not alternating"),
            Error::NotAntiInvariant => write!(f, "form is not anti-invariant for the involution"),
            Error::NotInSublattice => write!(f, "vector does not lie in the required sublattice"),
            Error::FiberProductViolation => {
                write!(
                    f,
                    "w0 does not restrict to f_u on (id+tau)L: pair not realizable"
                )
            }
            Error::LatticeMismatch => write!(f, "classes live over different lattice involutions"),
            Error::NotRealCharacter => write!(f, "character violates the Reality condition"),
            Error::InvalidKleinType(m) => write!(f, "invalid topological type: {m}"),
            Error::DegreeParityViolation => {
                write!(f, "sum of boundary classes does not match degree mod 2")
            }
            Error::IncompatibleComplexStructure => {
                write!(f, "complex structure incompatible with the form")
            }
            Error::MalformedCap => write!(f, "cap boundary does not match the loop"),
            Error::ConstantTermNotOne => write!(f, "graded class has degree-0 term != 1"),
            Error::DegreeMismatch(m) => write!(f, "degree mismatch: {m}"),
            Error::InconsistentSystem => write!(f, "mod-2 linear system unexpectedly inconsistent"),
            Error::BelowStabilityBound(m) => write!(f, "degree below stability bound: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
