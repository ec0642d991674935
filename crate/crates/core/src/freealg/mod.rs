//! Truncated free Hopf algebra on `A, B`: the oracle layer for everything
//! computed in the metabelian quotient.

mod flat;
mod hopf;
mod normalize;
mod series;

pub use flat::{expand_functions, flat_residual, flat_section, gauge_apply, ConnectionForm};
pub use hopf::{
    dynkin_log, grouplike_violation, is_grouplike, is_primitive, left_bracket, primitive_violation, project_metab,
    project_unchecked, shuffle,
};
pub use normalize::{
    hodge_check, naive_form, normalize_to_naive, HodgeReport, HodgeViolation, Normalization, NormalizationStep,
};
pub use series::{NCSeries, Word};
