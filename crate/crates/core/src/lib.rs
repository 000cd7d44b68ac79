//! Word maps with small image in SL(2, 2^k) and in alternating groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`words`]: free-group words, a parser for them, and evaluation into any
//!   group implementing [`words::EvaluationContext`].
//! * [`binaryfield`]: GF(2^k), its absolute trace, Artin-Schreier equations.
//! * [`tracepoly`]: trace polynomials of two-generator words.
//! * [`sl2`]: SL(2, 2^k) elements, classes and enumeration by trace.
//! * [`perm`]: permutations, cycle types and Alt(n)-classes.
//! * [`sl2verify`]: the SL(2, 2^(2^n)) small-image construction, checked
//!   symbolically, over fields, and by brute force.
//! * [`altverify`]: images of composite commutator words over Alt(n).
//! * [`cli`]: the `wordmap` command line.

pub mod altverify;
mod arith;
pub mod binaryfield;
pub mod cli;
pub mod error;
pub mod perm;
pub mod sl2;
pub mod sl2verify;
pub mod tracepoly;
pub mod words;

pub use arith::euler_phi;
pub use error::{Error, Result};
