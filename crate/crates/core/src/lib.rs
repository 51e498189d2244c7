//! Coined discrete-time quantum walks on finite graphs under dynamical
//! percolation.
//!
//! The walker lives on the directed edges of a [`StateGraph`]: every
//! undirected structure edge contributes two paired directed edges and
//! unpaired loops pad vertices up to a common degree. One step applies a
//! per-vertex coin `C`, a per-vertex permutation `P` and the reflecting shift
//! `R_K` of the currently open edges `K`, either as `U = P R_K C` or
//! `U = C P R_K`. Percolation draws a fresh `K` each step, which turns the
//! evolution into a random unitary channel.
//!
//! Modules:
//!
//! - [`graphs`]: graph files, state graphs, faces of planar embeddings.
//! - [`walk`]: coins, local permutations and step operators.
//! - [`percolation`]: percolation schemes, exact channel evolution and
//!   Monte Carlo trajectories.
//! - [`attractors`]: common eigenstates, p-attractors, the brute-force
//!   attractor oracle and the asymptotic state.
//! - [`grover3`]: analytic constructions for Grover walks on graphs of
//!   maximal degree three (trapped states, edge-3-colorings).
//! - [`transport`]: sinks, sink-resistant trapped states and transfer
//!   efficiency.

pub mod attractors;
pub mod error;
pub mod graphs;
pub mod grover3;
pub mod linalg;
pub mod percolation;
pub mod transport;
pub mod walk;

pub use error::{Error, Result};
pub use graphs::{Configuration, Face, StateGraph, StructureGraph};
pub use linalg::{CMatrix, CVector, C64};
pub use percolation::{DensityMatrix, PercolationScheme};
pub use walk::{CoinSpec, PermutationSpec, Variant, WalkSpec};
