//! Exterior algebra on an 8-dimensional frame, Spin(7) 4-forms, torsion
//! connections on Lie-group frames, and a residual-based identity checker.

// index loops mirror the tensor formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod connection;
pub mod corpus;
pub mod error;
pub mod exterior;
pub mod geometry;
pub mod report;
pub mod scalar;
pub mod spin7;
pub mod suite;
pub mod tensor;
pub mod torsion;

pub use error::{Error, Result};
pub use exterior::{Covector, FrameMetric, KForm, MultiIndex};
pub use report::{Entry, EntryKind, VerificationReport};
