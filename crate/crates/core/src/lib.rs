//! Exact symbolic dynamics for left-ordered groups.
//!
//! The crate works with groups given by explicit actions on the real line:
//!
//! * [`plmap`] and [`periodic`]: piecewise-linear homeomorphisms with exact
//!   rational breakpoints, and the ones commuting with `x ↦ x+1`.
//! * [`intervals`]: fixed sets and their complements.
//! * [`pingpong`]: free subsemigroup and free subgroup certificates.
//! * [`ordering`]: left orders induced by the action, and harnesses that
//!   check the order axioms on finite word balls.
//! * [`amalgam`]: glued actions of amalgamated products over a cyclic
//!   subgroup, and their normal forms.
//! * [`thompson`]: Thompson's group F, lifts of Thompson's group T, and
//!   commuting conjugates in groups without interior global fixed points.
//! * [`braid`]: Artin braid words, handle reduction and the Dehornoy order.

pub mod amalgam;
pub mod braid;
pub mod error;
pub mod intervals;
pub mod literal;
pub mod ordering;
pub mod periodic;
pub mod pingpong;
pub mod plmap;
pub mod rational;
pub mod thompson;
pub mod word;

pub use error::{Error, Result};
pub use intervals::{ClosedSet, Endpoint, OpenIntervalList};
pub use literal::AnyMap;
pub use periodic::PeriodicMap;
pub use plmap::{Affine, LineMap, PLMap};
pub use rational::Rational;
pub use word::Word;
