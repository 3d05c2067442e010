//! Exact computations for one-dimensional complete local Cohen–Macaulay
//! rings presented as `k[[x1..xn]]/I`, their maximal Cohen–Macaulay modules,
//! and the zero-sum combinatorics governing bounded CM type.

pub mod classify;
pub mod davenport;
pub mod descent;
pub mod endm;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hom;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod par;
pub mod polynomial;
pub mod primes;
pub mod ring;
pub mod stalk;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use monomial::Monomial;
pub use polynomial::{parse_polynomial, Polynomial};
pub use ring::{ideal_member, normal_form, parse_ring, IdealHandle, Ring, RingElem, RingPresentation};
