//! Stabilizer codes and quantum error transmutation over GF(2).
//!
//! Everything is computed exactly in the symplectic representation of the
//! Pauli group: codes, syndromes, logical classes, transmutation checks,
//! classical and lattice constructions, and channel simulation.

pub mod catalog;
pub mod classical;
pub mod error;
pub mod f2;
pub mod lattice;
pub mod pauli;
pub mod qet;
pub mod report;
pub mod search;
pub mod sim;
pub mod stabilizer;
pub mod transforms;

pub use error::{Error, Result};
