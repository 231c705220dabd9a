//! Exact construction and mechanical verification of uniserial
//! representations of the solvable Lie algebra `g = <x> |x L(V)`, where
//! `L(V) = V + Wedge^2(V)` is the free 2-step nilpotent Lie algebra on `V`
//! and `x` acts on `V` by a Jordan block (or one of the related actions).
//!
//! Everything runs over the rationals with no rounding: representations are
//! built from explicit block data, checked exhaustively against the defining
//! relations, and analyzed for uniseriality, length, faithfulness and
//! relative faithfulness. A sweep harness replays the classification-level
//! facts at desk scale and reports any counterexamples in machine- and
//! human-readable form.

pub mod analysis;
pub mod error;
pub mod phi;
pub mod rational;
#[macro_use]
pub mod matrix;
pub mod lie;
pub mod rep;
pub mod report;
pub mod sampler;
pub mod schema;
pub mod sweep;

pub use error::{Error, Result};
pub use rational::Rational;
