//! Toggle dynamics on finite posets: combinatorial, piecewise-linear and
//! birational rowmotion and promotion, with exact rational arithmetic.

pub mod algebra;
pub mod array;
pub mod dynamics;
pub mod error;
pub mod ideal;
pub mod lab;
pub mod linalg;
pub mod orbit;
pub mod polytope;
pub mod poset;
pub mod rational;
pub mod verify;

pub use algebra::{Birational, ToggleAlgebra, Tropical};
pub use array::{LabeledArray, Profile};
pub use error::{Error, Result};
pub use ideal::{Antichain, Filter, OrderIdeal, TogglePlan};
pub use poset::{Cell, Element, Poset, PosetKind, PosetSpec};
pub use rational::Q;

/// Library version, embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
