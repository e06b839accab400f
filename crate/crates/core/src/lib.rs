//! p-Frobenius and p-Sylvester numbers of Fibonacci and Lucas triples.
//!
//! [`apery`] is the ground truth: it computes `g_p` and `n_p` of any tuple
//! from `p`-Apéry sets over a table of representation counts. The
//! [`closed_forms`] module evaluates the explicit formulas for the triples
//! `(X_i, X_{i+2}, X_{i+k})`, and [`verify`] sweeps parameter grids comparing
//! the two.

pub mod apery;
pub mod closed_forms;
pub mod compute;
pub mod denumerant;
pub mod error;
pub mod sequences;
pub mod tables;
pub mod verify;

pub use apery::{apery_set, p_frobenius, p_sylvester, AperySet, FreshTables, SemigroupOracle, TableSource};
pub use compute::{compute_family, compute_tuple, Method, Quantity};
pub use denumerant::{denumerant, DenumerantTable, GeneratorTuple};
pub use error::{Error, Result};
pub use sequences::{fib, lucas, SequenceKind};
