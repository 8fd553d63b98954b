//! Exact analysis of Lie algebras with left-invariant pseudo-Riemannian
//! metrics: Levi-Civita connections, curvature, annihilators, strong ideals
//! and their decompositions.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod curvature;
pub mod decompose;
pub mod error;
pub mod format;
pub mod ideals;
pub mod linalg;
pub mod report;

pub use error::{Error, Result};
