//! Computational toolkit for wide/narrow questions about monotone Lagrangians:
//! cyclotomic periodicity tests, quantum-cohomology presentations, and
//! Maslov-index bookkeeping for Gysin and quilt computations.

pub mod cli;
pub mod periodicity;
pub mod poincare;
pub mod presentations;
pub mod quilt;
pub mod ring_core;
pub mod spin_gysin;
pub mod verdict;

mod serde_bigint;
