//! Uniformly damped binomial all-pole low-pass filters.
//!
//! The denominator of an order-`n` filter is the binomial row of `(s + 1)^n`
//! with every interior coefficient scaled by one damping constant `zeta`.
//! The "five-percent" choice `zeta_n = sqrt(n(n-1) - (n-2)) / n` keeps the
//! step overshoot at or below 5% for every order.

// Tests quote tabulated values such as 1.41421 on purpose.
#![cfg_attr(test, allow(clippy::approx_constant))]

pub mod analysis;
pub mod commands;
pub mod compare;
pub mod digital;
pub mod error;
pub mod export;
pub mod filter;
pub mod noise;
pub mod poly;
pub mod reference;
pub mod roots;
pub mod transient;
pub mod udb;

pub use error::{Error, Result};
pub use filter::{AnalogPolynomialFilter, ReferenceKind};
pub use udb::{damping_constant, five_percent_filter, DampingConstant, Order};
