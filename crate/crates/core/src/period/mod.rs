//! The metabelian de Rham period map: g-series, the coordinate `iota`, the
//! closed-form right-hand side and the free-algebra oracle.

mod gseries;
mod theorem;

pub use gseries::{g_series, GSeries};
pub use theorem::{
    iota_of, period_map_oracle, period_map_rhs, verify_theorems, Conventions, Method, PeriodMismatch, PeriodResult,
    TheoremReport,
};
