//! Continuity spectra of bijections.
//!
//! For a space `X` and a bijection `f`, the set of exponents `n` with `f^n`
//! continuous is always a submonoid of Z, and every submonoid arises this way.
//! This crate builds those realizations symbolically and checks them:
//!
//! * [`submonoid`]: finitely generated submonoids of Z in canonical form;
//! * [`piecewise`]: column spaces, piecewise translations, exact continuity;
//! * [`topology`]: exhaustive finite topologies and their homeomorphism groups;
//! * [`realization`]: the same constructions over finite Cayley tables;
//! * [`figure`]: SVG and DOT renderings of a line realization.

pub mod figure;
pub mod piecewise;
pub mod realization;
pub mod submonoid;
pub mod topology;

pub use submonoid::{canonicalize, closure_oracle, CanonicalSubmonoid, GeneratorSet};
