//! Exact arithmetic: rationals, log-Laurent series, bivariate series,
//! Bernoulli numbers and the BCH/logarithm kernels.

pub mod bernoulli;
pub mod bivar;
pub mod kernels;
pub mod rational;
pub mod ring;
pub mod zlseries;

pub use bernoulli::{bernoulli, bernoulli_minus};
pub use bivar::BivarSeries;
pub use kernels::{
    averaged_exp_series, holomorphic_identities, kernel_bch, kernel_s_printed, kernel_t, kernel_t_printed,
    kurlin_kernel, shifted_exp_series, IdentityCheck,
};
pub use rational::{binomial, factorial, format_rational, int, parse_rational, rat, Rational};
pub use ring::{horner, Differential, Ring};
pub use zlseries::{iterated_integral, ZLSeries, EXACT};
