//! Exact prime spectra, Zariski topology-graphs and annihilating-submodule
//! graphs of finite modules over finite commutative rings.
//!
//! Rings are products `Z_{n_1} × … × Z_{n_k}` ([`ring`]), modules are
//! finite and fully enumerable ([`module`]), and [`spectra`] builds the
//! Zariski topology on `Spec(M)`. The graphs `G(τ_T)`, `AG(M)` and
//! `AG(M)*` with exact metric solvers live in [`graph`]; [`verifier`]
//! checks the structural theorems about them on concrete instances.

pub mod cli;
pub mod error;
pub mod graph;
pub mod module;
pub mod ring;
pub mod spectra;
pub mod verifier;

pub use error::{Error, Result};
