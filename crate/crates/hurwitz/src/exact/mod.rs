//! Exact polynomial arithmetic over ℚ and prime fields, and the
//! verification toolkit built on it: resultants and discriminants,
//! branch-locus analysis and ramification profiles of rational covers,
//! Sturm chains, finite-field factorization, and structural predicates
//! (square discriminants, factor degrees of subcovers, exact composition).

pub mod factor;
pub mod family;
pub mod field;
pub mod poly;
pub mod profile;
pub mod ratfunc;
pub mod resultant;
pub mod sturm;
pub mod subcover;
pub mod verify;

pub use factor::{factor_fp, is_irreducible};
pub use family::{CoverFamily, FactorRole, FamilyFactor};
pub use field::{is_prime_u64, Coefficients, PrimeField, Rationals};
pub use poly::{FpPoly, Poly, QPoly};
pub use profile::{
    branch_profiles, ramification_profile, ramification_profile_infinity,
    ramification_profile_pair, rational_sqrt, BranchPoint, RamificationProfile,
};
pub use ratfunc::{verify_composition, RationalFunction};
pub use resultant::{
    discriminant, discriminant_in_t, discriminant_in_t_fp, discriminant_in_t_modular, resultant,
    PolyRing,
};
pub use sturm::{sturm_count, sturm_count_all, SturmChain, SturmCount};
pub use subcover::{subcover_factor_degrees, subcover_factor_degrees_with, SubcoverOptions};
pub use verify::{
    dedekind_cycle_samples, discriminant_is_square_fp_pencil, discriminant_is_square_q, poly_sqrt,
    poly_sqrt_fp, DedekindSample, DedekindSamples, SkippedSample,
};
