//! Exact symbolic kernel for locally nilpotent derivation filtrations.
//!
//! The crate covers:
//!
//! - [`poly`]: exact rationals, sparse multivariate polynomials and derivations.
//! - [`commalg`]: Gröbner bases, quotient algebras, Jacobi matrices and
//!   Jacobian ideals.
//! - [`weyl`]: the Weyl algebra `A_n` in `x`-before-`d` normal order, the
//!   ad-calculus and the action of operators on polynomials.
//! - [`skew`]: iterated Ore extensions and generalized Weyl algebras.
//! - [`filtration`]: the order of an element with respect to a commuting
//!   family of inner derivations, together with descent to the zero component.
//! - [`localization`]: left fractions `s^-k * e` over an ad-locally nilpotent
//!   element `s`.
//! - [`diffops`]: differential operators on monomial curves, annihilator
//!   ideals, simplicity witnesses and the verification suites for the three
//!   subalgebras `R0 ⊂ R1 ⊂ R2` of `A_1`.
//!
//! Every value is immutable once built and every operation is a pure
//! function, so all types are `Send + Sync`.

pub mod budget;
pub mod commalg;
pub mod diffops;
pub mod error;
pub mod filtration;
pub mod linalg;
pub mod localization;
pub mod poly;
pub mod render;
pub mod skew;
pub mod weyl;

pub use budget::Budget;
pub use error::{Error, Result};
pub use poly::{Monomial, MultiPoly, Rat};
pub use weyl::WeylElement;
