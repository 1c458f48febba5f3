//! Exact engine for piecewise-linear relations presented as string diagrams.
//!
//! Terms built from the copy/add/order generators (plus unions) are evaluated
//! to finite unions of rational polyhedra. Inclusion and equality of the
//! denoted relations are decided exactly through shared-hyperplane normal
//! forms, and an electrical front end compiles ideal-diode circuits into the
//! same terms.
//!
//! Coordinates of a relation `n -> m` are always laid out as the `n` left
//! ports (top to bottom) followed by the `m` right ports (top to bottom):
//!
//! ```text
//!   x0 ─┐        ┌─ x2
//!       │  term  │
//!   x1 ─┘        └─ x3        (arity 2 -> 2, point = (x0, x1, x2, x3))
//! ```

pub mod axioms;
pub mod circuits;
pub mod decide;
pub mod error;
pub mod normalform;
pub mod polyhedron;
pub mod rat;
pub mod semantics;
pub mod stdlib;
mod syntax;
pub mod term;
pub mod testkit;

pub use decide::{equal, equal_terms, subset, subset_terms, Verdict};
pub use error::{Error, ParseError, Result};
pub use normalform::{pl_nf, Hyperplane, PLNormalForm, Sign};
pub use polyhedron::{Constraint, Interval, LinExpr, Polyhedron, Rel};
pub use rat::Rat;
pub use semantics::{eval, PLRelation};
pub use term::{Arity, Generator, Term};
