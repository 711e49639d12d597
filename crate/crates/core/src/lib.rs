//! Finite posemigroups with markings, the quantale of `A`-ideals, and the
//! quantale of closed lower sets.
//!
//! Subsets of a carrier are `u64` bitmasks, so carriers hold at most 64
//! elements; exhaustive passes over all subsets are further limited by a
//! configurable cap (16 by default).

pub mod bundled;
pub mod closure;
pub mod dot;
pub mod error;
pub mod ideal;
pub mod marking;
pub mod nucleus;
pub mod order;
pub mod posemigroup;
pub mod quantale;
pub mod reflection;
pub mod scenario;
pub mod subset;
pub mod verdict;
pub mod word;

pub use error::{Error, Result};
pub use marking::{MarkedPosemigroup, Marking, MorphismLevel};
pub use order::{LowerSet, Poset};
pub use posemigroup::{OptElement, Posemigroup};
pub use quantale::FiniteQuantale;
pub use subset::Subset;
pub use verdict::Verdict;
