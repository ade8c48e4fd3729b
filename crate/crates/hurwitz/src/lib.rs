//! Exact and certified-numerical computation of branched covers of the
//! projective line with prescribed monodromy.
//!
//! The crate has five layers:
//!
//! * [`perm`] and [`group`] — permutations, cycle types, stabilizer chains,
//!   conjugacy classes, block systems, and canonical forms of tuples under
//!   conjugation. Everything is exact and certified by order counting.
//! * [`nielsen`], [`braid`], [`wreath`] — Nielsen classes of generating
//!   tuples, the Hurwitz braid action and its orbits, and the reduction of a
//!   four-branch-point family to a three-branch-point cover of wreath-product
//!   type.
//! * [`exact`] — polynomial arithmetic over the rationals and prime fields:
//!   resultants, discriminants, Sturm chains, squarefree and irreducible
//!   factorization, ramification profiles of specialized covers, and the
//!   verification of defining equations for families of covers.
//! * [`numeric`] — arbitrary-precision complex arithmetic, certified root
//!   tracking along loops (numerical monodromy), Newton refinement of cover
//!   coefficients, and coefficient deformation along parameter paths.
//! * [`recognize`] — lattice reduction, recognition of rationals and
//!   algebraic numbers from high-precision floats, and interpolation of
//!   polynomial dependencies from exact samples.
//!
//! The `hurwitz` binary exposes the same operations as subcommands; see the
//! repository README for the command-line interface and file formats.
//!
//! # Conventions
//!
//! Permutations compose right-to-left: `(p ∘ q)(i) = p(q(i))`. A tuple
//! `(t₁, …, t_r)` multiplies in order, `t₁ ∘ t₂ ∘ ⋯ ∘ t_r`. Conjugation is
//! `conj(g, x) = g ∘ x ∘ g⁻¹`. Points are 1-based in all textual forms and
//! 0-based internally.

#![warn(missing_docs)]
#![forbid(unsafe_code)]

pub mod cli;
pub mod braid;
pub mod error;
pub mod exact;
pub mod group;
pub mod io;
pub mod nielsen;
pub mod perm;
pub mod wreath;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::{CycleType, Permutation};

/// Crate version, for reports and the C ABI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Entry point for the `hurwitz` binary.
pub fn cli_main() {
    cli::main()
}
