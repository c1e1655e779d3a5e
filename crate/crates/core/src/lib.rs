//! Translational tilings of finite abelian groups.
//!
//! Groups are explicit products of cyclic factors and subsets are bit vectors
//! over element indices. On top of that sit exact Fourier zero-sets,
//! exact-cover enumeration of tiling complements, exhaustive property checks
//! and builders for explicit tilings.

pub mod arith;
pub mod bitset;
pub mod budget;
mod clique;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod fourier;
pub mod group;
pub mod properties;
pub mod quotient;
pub mod snf;
pub mod subgroup;
pub mod subset;
pub mod tiling;

pub use budget::{Budget, BudgetUsage, SearchConfig};
pub use error::{Error, Result};
pub use group::{element_arith, parse_group, parse_group_with_max, Group, GroupElement};
pub use quotient::{quotient, Quotient};
pub use subgroup::{subgroup_generated, Subgroup};
pub use subset::{parse_element, parse_subset, GroupSubset};
