//! Anytime online-to-batch conversions for stochastic convex optimization.
//!
//! The crate wraps any regret-minimizing online learner into a stochastic
//! optimization method whose *played* iterates carry an excess-loss guarantee
//! at every round, not only after a final averaging step. On top of the plain
//! conversion it provides an optimistic variant that exploits gradient
//! stability on smooth losses and an adaptive accelerated variant built on
//! the same averaging principle, along with synthetic benchmark problems and
//! an experiment harness that evaluates the matching closed-form bounds.
//!
//! Start with [`conversions::AnytimeConverter`] for the basic wrapper, or see
//! the guide in `book/` for a narrative walkthrough.

pub mod conversions;
pub mod domain;
pub mod error;
pub mod harness;
pub mod learners;
pub mod problems;
pub mod rng;
pub mod schedule;
pub mod vector;

pub use domain::Domain;
pub use error::{Error, Result};
pub use schedule::{ScheduleCursor, WeightSchedule};
pub use vector::{running_average_update, Vector};

// The guide's code blocks run as doc-tests so the book cannot drift from the
// library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }
    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(Conversions, "../../../book/src/conversions.md");
    chapter!(Learners, "../../../book/src/learners.md");
    chapter!(Problems, "../../../book/src/problems.md");
    chapter!(Acceleration, "../../../book/src/acceleration.md");
    chapter!(Harness, "../../../book/src/harness.md");
}
