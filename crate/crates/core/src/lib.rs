//! Propelinear perfect binary codes from regular subgroups of the general
//! affine group `GA(r,2)`.
//!
//! The extended Hamming code `H` of length `2^r` has its coordinates indexed
//! by `F^r`; its cosets `H_a = H + e_a + e_0` partition the even-weight code.
//! For a bijection `τ` of `F^r` fixing `0`, the code
//!
//! ```text
//! S_{H,τ} = ⋃_a H_a × H_{τ(a)}
//! ```
//!
//! is an extended perfect code of length `2^(r+1)`. When `τ` is induced by
//! an automorphism of a regular subgroup of `GA(r,2)`, the code is
//! propelinear. The crate builds these codes, computes their rank and
//! kernel both by closed formulas and by independent linear-algebra
//! oracles, searches regular subgroups and their automorphisms, and checks
//! perfectness and propelinearity directly.
//!
//! ```
//! use propelinear::affine::example1_tau;
//! use propelinear::invariants::{full_report, OracleLevel};
//!
//! let tau = example1_tau().into_tau();
//! let report = full_report(&tau, OracleLevel::Enumeration).unwrap();
//! assert_eq!((report.distension, report.deficiency), (3, 3));
//! assert_eq!((report.rank, report.kernel_dim), (14, 8));
//! ```

pub mod affine;
pub mod cli;
pub mod concat;
pub mod error;
pub mod gf2;
pub mod hamming;
pub mod invariants;
pub mod mollard;
pub mod search;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/gf2.md")]
    mod gf2 {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/mollard.md")]
    mod mollard {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
