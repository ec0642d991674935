//! The metabelian Lie algebra on `A, B` with basis `A, B, sigma_{r,s}`,
//! `sigma_{r,s} = ad_B^r ad_A^s [A, B]`, and its adjoint operator calculus.

mod adaverage;
mod bch;
mod elt;
mod logarithm;
mod ops;

pub use adaverage::{adaverage, adaverage_all, AdaverageCheck};
pub use bch::metab_bch;
pub use elt::{sigma_count, sigma_slot, Basis, MetabElt};
pub use logarithm::{
    closed_form_report, first_difference, grouplike_log, grouplike_log_closed, BernoulliSign, ClosedFormCheck,
};
pub use ops::{span_decompose, SpanCoeffs, WOp};
