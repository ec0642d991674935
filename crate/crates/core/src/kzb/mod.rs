//! The KZB connection pair on the punctured curve, its residue at the
//! puncture, and the adjoint flat section on the metabelian quotient.
//!
//! No curvature checks live here: every connection on a curve is flat.

mod adjoint;
mod build;
mod residue;

pub use adjoint::{
    adjoint_flat_section, adjoint_forms, adjoint_free, adjoint_generating, adjoint_recursion, adjoint_routes,
    free_flat_section, free_log, AdjointComparison, AdjointForms, AdjointSection, RouteDisagreement,
};
pub use build::{ad_b_power_a, build_kzb, KZBData};
pub use residue::{residue_at_infinity, ResidueReport};
