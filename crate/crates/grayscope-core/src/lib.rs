//! Finite truncated strict omega-categories and finite Gray
//! infinity-categories, with exhaustive desk-scale law checking.
//!
//! Everything here is exact and enumerable: categories are finite tables,
//! laws are checked over every tuple, and higher constructions (cylinders,
//! comma categories, slices, the Grothendieck construction) come with
//! independently-computed cross-checks.

pub mod assemble;
pub mod comma;
pub mod cyl;
pub mod doc;
pub mod enriched;
pub mod error;
pub mod fixtures;
pub mod functoriality;
pub mod gray;
pub mod grayslice;
pub mod hom;
pub mod homcart;
pub mod limits;
pub mod omega;

pub use error::{Error, Result};
pub use omega::{CellRef, OmegaCat, OmegaFunctor};
