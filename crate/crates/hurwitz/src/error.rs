//! Crate-wide error type.
//!
//! One enum covers all modules so that CLI exit paths and the C ABI can map
//! every failure onto a stable code. Variants are grouped by area; the
//! `#[error]` strings are the single source of user-facing wording.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit can report.
#[derive(Debug, Error)]
pub enum Error {
    // ---- parsing / file formats -------------------------------------------
    /// Malformed input in a data file (group, type, family, cover, samples…).
    #[error("parse error in {file} line {line}: {msg}")]
    Parse {
        /// File (or pseudo-file) the error occurred in.
        file: String,
        /// 1-based line number.
        line: usize,
        /// What went wrong.
        msg: String,
    },
    /// Underlying I/O failure.
    #[error("i/o error on {path}: {source}")]
    Io {
        /// Path involved.
        path: String,
        /// OS error.
        #[source]
        source: std::io::Error,
    },

    // ---- permutations and groups ------------------------------------------
    /// Image list is not a bijection, or a cycle repeats a point.
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    /// Point outside 1..=degree.
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange {
        /// Offending 1-based point.
        point: usize,
        /// Degree of the ambient set.
        degree: usize,
    },
    /// Two objects that must share a degree do not.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch {
        /// First degree.
        left: usize,
        /// Second degree.
        right: usize,
    },
    /// An enumeration or closure exceeded its configured element budget.
    #[error("budget exceeded: {what} needs more than {budget} elements")]
    BudgetExceeded {
        /// Operation that overflowed.
        what: String,
        /// Configured cap.
        budget: usize,
    },
    /// A class descriptor matched no conjugacy class.
    #[error("no conjugacy class matches descriptor {0}")]
    NoMatchingClass(String),
    /// A class descriptor matched more than one conjugacy class.
    #[error("ambiguous class descriptor {0}: more than one class matches; add class_size or element_order")]
    AmbiguousClass(String),
    /// An element order or group order overflowed the machine range.
    #[error("order overflow: {0}")]
    OrderOverflow(String),

    // ---- tuples and Nielsen classes ---------------------------------------
    /// A tuple entry is the identity.
    #[error("tuple entry {index} is the identity")]
    IdentityEntry {
        /// 1-based tuple position.
        index: usize,
    },
    /// Tuple entries do not multiply to the identity.
    #[error("tuple product is not the identity")]
    ProductNotIdentity,
    /// Tuple entries do not generate the ambient group.
    #[error("tuple does not generate the group (subgroup order {found}, expected {expected})")]
    NotGenerating {
        /// Order of the generated subgroup.
        found: u128,
        /// Order of the ambient group.
        expected: u128,
    },
    /// Operation requires a transitive group.
    #[error("group is not transitive")]
    NotTransitive,
    /// Operation requires a trivial centre.
    #[error("group centre is nontrivial (order {0}); inner-class counting requires a trivial centre")]
    NontrivialCentre(u128),
    /// Ramification data fails a structural requirement.
    #[error("invalid ramification data: {0}")]
    InvalidRamification(String),
    /// Riemann–Hurwitz total is odd or the genus is negative.
    #[error("genus computation failed: {0}")]
    BadGenus(String),
    /// A braid word references an out-of-range generator.
    #[error("braid generator Q{index} out of range for {strands} strands")]
    BraidIndexOutOfRange {
        /// 1-based generator index.
        index: usize,
        /// Number of strands (tuple length).
        strands: usize,
    },
    /// A block system handed to an operation is not valid for the group.
    #[error("invalid block system: {0}")]
    InvalidBlockSystem(String),

    // ---- exact polynomial arithmetic --------------------------------------
    /// Division by the zero polynomial or zero element.
    #[error("division by zero in {0}")]
    DivisionByZero(String),
    /// The requested modulus is not an odd prime in range.
    #[error("invalid prime {0}: need an odd prime below 2^62")]
    InvalidPrime(u64),
    /// A polynomial operation received inconsistent arguments.
    #[error("invalid polynomial input: {0}")]
    InvalidPolynomial(String),
    /// A value required to be a branch point (or to avoid them) is not.
    #[error("branch point condition violated: {0}")]
    BranchPoint(String),
    /// Specializations of a bivariate factorization disagree beyond retry.
    #[error("inconsistent specializations: {0}")]
    InconsistentSpecializations(String),
    /// Exact square root does not exist.
    #[error("polynomial is not a perfect square: {0}")]
    NotASquare(String),

    // ---- numerical covers --------------------------------------------------
    /// Requested precision below the supported floor.
    #[error("precision {0} bits is below the 53-bit floor")]
    PrecisionTooLow(u32),
    /// Root finding or refinement failed to converge within its budget.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// Two tracked paths came closer than the safety margin.
    #[error("path collision: {0}")]
    PathCollision(String),
    /// A homotopy endpoint or waypoint violates the clearance requirement.
    #[error("clearance violation: {0}")]
    Clearance(String),
    /// Newton system is singular (typically missing normalization pins).
    #[error("singular Jacobian: {0}")]
    SingularJacobian(String),
    /// Numerical certificate failed its internal cross-check.
    #[error("certificate check failed: {0}")]
    CertificateFailed(String),

    // ---- recognition -------------------------------------------------------
    /// Lattice input is malformed (ragged rows, zero dimension…).
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    /// Recognition margin too small to trust the relation.
    #[error("recognition inconclusive: {0}")]
    RecognitionInconclusive(String),
    /// Dependency interpolation found no relation at the given degree bounds.
    #[error("no dependency found: {0}")]
    NoDependency(String),
    /// Dependency interpolation is underdetermined.
    #[error("dependency underdetermined: {0}; supply more samples")]
    DependencyUnderdetermined(String),

    // ---- configuration / CLI ----------------------------------------------
    /// Bad command-line or environment configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// A manifest expectation failed during verification.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    /// Convenience constructor for parse errors.
    pub fn parse(file: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { file: file.into(), line, msg: msg.into() }
    }

    /// Convenience constructor for I/O errors.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Stable numeric code for the C ABI and scripting.
    pub fn code(&self) -> i32 {
        use Error::*;
        match self {
            Parse { .. } => 10,
            Io { .. } => 11,
            NotAPermutation(_) => 20,
            PointOutOfRange { .. } => 21,
            DegreeMismatch { .. } => 22,
            BudgetExceeded { .. } => 23,
            NoMatchingClass(_) => 24,
            AmbiguousClass(_) => 25,
            OrderOverflow(_) => 26,
            IdentityEntry { .. } => 30,
            ProductNotIdentity => 31,
            NotGenerating { .. } => 32,
            NotTransitive => 33,
            NontrivialCentre(_) => 34,
            InvalidRamification(_) => 35,
            BadGenus(_) => 36,
            BraidIndexOutOfRange { .. } => 37,
            InvalidBlockSystem(_) => 38,
            DivisionByZero(_) => 40,
            InvalidPrime(_) => 41,
            InvalidPolynomial(_) => 42,
            BranchPoint(_) => 43,
            InconsistentSpecializations(_) => 44,
            NotASquare(_) => 45,
            PrecisionTooLow(_) => 50,
            NoConvergence(_) => 51,
            PathCollision(_) => 52,
            Clearance(_) => 53,
            SingularJacobian(_) => 54,
            CertificateFailed(_) => 55,
            InvalidLattice(_) => 60,
            RecognitionInconclusive(_) => 61,
            NoDependency(_) => 62,
            DependencyUnderdetermined(_) => 63,
            Config(_) => 70,
            VerificationFailed(_) => 71,
        }
    }
}
