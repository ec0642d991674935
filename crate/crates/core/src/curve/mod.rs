//! The Weierstrass curve `y^2 = 4x^3 - 60 e4 x - 140 e6`: coordinate ring,
//! expansions at rational points and at the puncture, the functions
//! `P_k`, `p_n`, `q_n`, `f`, and reduction of one-forms to `Span{alpha, beta}`.

pub mod chart;
pub mod cohomology;
pub mod function;
pub mod poly;
pub mod pq;
pub mod recurrences;
pub mod weierstrass;

pub use chart::{Chart, ChartKind, Expander};
pub use cohomology::{assemble_form, cohomology_reduce};
pub use function::{CurveFn, CurveParams};
pub use poly::Poly;
pub use pq::{p_list, pq_coeffs, pq_from_p, PQ};
pub use weierstrass::{choose_f, e_k, p_k, weierstrass_expansion, wp_k, wp_series};
