//! Differential operators at desk scale: monomial curves, annihilator
//! ideals, the subalgebras `R_0, R_1, R_2 ⊂ A_1` and their check suites.

pub mod annihilator;
pub mod curve;
pub mod report;
pub mod subalgebras;
pub mod suites;

pub use annihilator::{annihilator_pair, AnnihilatorPair};
pub use curve::{
    curve_diffops_basis, simplicity_witness, DiffOpSpace, MonomialCurve, SimplicityWitness,
    WitnessOutcome,
};
pub use report::{Check, CheckStatus, Equation, SuiteReport};
pub use subalgebras::{ideal_meets_base, ideal_membership, BaseIntersection, Subalgebra};
pub use suites::{verify_r0_suite, verify_r1_suite, verify_r2_suite, verify_suite, SuiteBounds};
