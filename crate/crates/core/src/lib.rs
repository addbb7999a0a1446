//! Exact analysis of ReLU network functions `F: R^n → R`: canonical
//! polyhedral complexes, compact homotopy models of level sets, local and
//! global H-complexity, and the depth-2 PL Morse classification.

pub mod compact;
pub mod complex;
pub mod complexity;
pub mod ensembles;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod network;
pub mod rational;
pub mod svg;

pub use error::{Error, Result};
pub use rational::Rational;
