//! Hilbert-space geometry of strictly positive, ergodic, stationary
//! finite-valued processes.
//!
//! Processes are encoded by probabilistic finite-state automata
//! ([`pfsa::Pfsa`]). On top of the simplex algebra of strictly positive
//! probability vectors ([`simplex`]) the crate provides process scaling,
//! addition, inner products, norms and angles ([`process`]), together with
//! the synchronization search those constructions rely on ([`sync`]) and
//! estimators that work directly on raw symbol streams ([`stream`],
//! [`experiment`]).
//!
//! ```
//! use pfsa_space::fixtures;
//! use pfsa_space::process::{angle, scale_process, InnerMode, McConfig, ProcessHandle};
//!
//! let g = ProcessHandle::new(&fixtures::g2(), "A").unwrap();
//! let minus_g = scale_process(-1.0, &g).unwrap();
//! let theta = angle(&g, &minus_g, InnerMode::Exact, &McConfig::default()).unwrap();
//! assert!((theta.value - std::f64::consts::PI).abs() < 1e-9);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod chart;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod graph;
pub mod markov;
pub mod pfsa;
pub mod process;
pub mod simplex;
pub mod stream;
pub mod symbols;
pub mod sync;

pub use error::{Error, Result};
pub use pfsa::{Belief, Pfsa};
pub use process::{InnerMode, McConfig, ProcessHandle};
pub use simplex::ProbVec;
pub use symbols::{Alphabet, SymbolStream};
