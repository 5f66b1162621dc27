//! An experimental mathematics laboratory.
//!
//! Exact rational machinery for continued fractions, Newton-family root
//! finding with backward error, the modified equation of Euler's method on
//! `y' = y^2`, inverse-iteration pre-image clouds, and the chaos game
//! representation of symbol streams.

pub mod cgr;
pub mod cli;
pub mod contfrac;
pub mod exact;
pub mod julia;
pub mod modeq;
pub mod rootfind;
pub mod sequences;

pub use exact::{Integer, PowerSeries, Rational};
