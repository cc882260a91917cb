//! Exact Lipschitz analysis over finite and presented ultrametric spaces.
//!
//! All scalars are [`Rational`]s. A space is pointed at index 0.

pub mod dendrogram;
pub mod error;
pub mod extremal;
pub mod fixtures;
pub mod hierarchy;
pub mod lipschitz;
pub mod format;
pub mod lp;
pub mod mideal;
pub mod presented;
pub mod random;
pub mod rational;
pub mod retraction;
pub mod space;
pub mod suite;
pub mod witnesses;

pub use dendrogram::{DendNode, Dendrogram};
pub use error::{Error, Result};
pub use presented::{builtin, PresentedSpace};
pub use rational::Rational;
pub use space::{BallKind, BallSpec, FiniteUltraSpace, BASE};
