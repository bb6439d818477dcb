//! Exact solver and experiment lab for cops-and-robber games on directed
//! graphs.
//!
//! The visible fast robber and the invisible inert robber are solved exactly
//! in plain and robber-monotone modes. Monotone cop numbers give DAG-width,
//! Kelly-width and directed path-width; the [`lab`] module scans for
//! monotonicity gaps and [`hardproblems`] holds exact solvers for classic
//! digraph problems.

pub mod arena;
pub mod cli;
pub mod digraph;
pub mod hardproblems;
pub mod lab;
pub mod solver;
pub mod width;

pub use arena::GameVariant;
pub use digraph::{Digraph, UndirectedGraph, VertexSet};
pub use solver::{cop_number, gap, solve, verify_certificate, Certificate, SolveOptions, Winner};
