//! Presentations of monoid acts.
//!
//! The crate is layered bottom-up:
//!
//! * [`monoid`] holds words, rewriting systems (plain rules and pumped rule
//!   schemas), finite multiplication tables and the [`monoid::Monoid`]
//!   handle that unifies them.
//! * [`act`] holds explicit finite acts, congruence closure, Rees quotients
//!   and the presentation oracle that materialises `F_X / <R>` over a finite
//!   monoid.
//! * [`presentation`] holds act presentations, the consequence prover with
//!   replayable certificates, Tietze moves and the canonical presentations.
//! * [`construct`] builds presentations of Rees quotients, extensions,
//!   unions, union components, subacts and large subacts.

pub mod act;
pub mod construct;
pub mod monoid;
pub mod presentation;
pub mod random;

pub use act::{ActCongruence, FiniteAct, Subact};
pub use monoid::{Alphabet, FiniteMonoid, Letter, Monoid, RewritingSystem, Word};
pub use presentation::{ActPresentation, FreeActElement, Relation};

