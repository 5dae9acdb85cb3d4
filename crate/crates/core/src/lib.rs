//! Dynamics toolkit for a logistic-map model of innovation accumulation.
//!
//! The state `x ∈ [0,1]` is the fraction of accumulated innovation effect in
//! an industry; it evolves under the quadratic map
//!
//! ```text
//! x_{t+1} = r · x_t · (1 − x_t),        r = T · ε
//! ```
//!
//! where the firm coefficient `T = (α+β)/(1+n)` combines technology-input
//! growth `α`, output technological-content growth `β`, and labour growth
//! `n`, and `ε ∈ (0,10)` is a regulation-intensity multiplier.
//!
//! Module map:
//! - [`map`] — validated parameters, orbit iteration, fixed points.
//! - [`diagnostics`] — cycle detection, Lyapunov exponents, the Li-Yorke
//!   sufficient-condition certificate.
//! - [`bifurcation`] — parameter sweeps, doubling-point location, regime
//!   classification, Feigenbaum-ratio estimate.
//! - [`indicators`] — yearbook-style CSV ingestion and log-difference
//!   growth-rate tables.
//! - [`policy`] — dangerous regulation values and recommendation reports.

// Validation guards are spelled `!(x > 0.0)` rather than `x <= 0.0` so that
// NaN inputs fail them as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifurcation;
pub mod diagnostics;
mod error;
pub mod indicators;
pub mod map;
pub mod policy;

pub use error::{Error, Result};
