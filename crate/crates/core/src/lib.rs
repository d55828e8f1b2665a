//! # bindinfo
//!
//! Exact information-theoretic structure measures for finite sets of discrete
//! random variables and for stationary first-order Markov chains.
//!
//! | Module | Provides |
//! |---|---|
//! | [`dist`] | dense joint tables, subset masks, marginalization |
//! | [`measures`] | entropy, conditional / mutual information, multi-information `I`, binding information `B`, PIR profiles |
//! | [`processes`] | modulo-K (parity), giant-bit, independent, known-state and random-simplex distributions |
//! | [`markov`] | entropy rate, multi-information rate, residual entropy rate, predictive information rate |
//! | [`bounds`] | the linear constraints relating `H`, `I` and `B`, plus corner points of the feasible region |
//! | [`prover`] | exact-rational LP certificates that an entropy functional is nonnegative on the Shannon cone |
//! | [`maximizer`] | mirror ascent on the simplex for `B` or `I` |
//! | [`estimate`] | plug-in block estimates from symbol sequences |
//! | [`cli`] | the `bindinfo` command-line tool |
//!
//! All quantities are in bits.
//!
//! ```
//! use bindinfo::{measures, processes};
//!
//! let parity = processes::modulo_process(6, 2, 0).unwrap();
//! let b = measures::binding_information(&parity).unwrap();
//! let i = measures::multi_information(&parity).unwrap();
//! assert!((b - 5.0).abs() < 1e-9);
//! assert!((i - 1.0).abs() < 1e-9);
//! ```

#![forbid(unsafe_code)]

pub mod bounds;
pub mod cli;
pub mod dist;
pub mod error;
pub mod estimate;
pub mod markov;
pub mod maximizer;
pub mod measures;
pub mod processes;
pub mod prover;

pub use dist::{Configuration, JointTable, Shape, SubsetMask};
pub use error::{Error, Result};
pub use estimate::SymbolSequence;
pub use markov::MarkovModel;
pub use measures::MeasureReport;
