//! Arithmetic in ℤ and in maximal orders of imaginary quadratic fields.

pub mod class_group;
pub mod ideal;
pub mod quad;
pub mod search;

pub use class_group::Form;
pub use ideal::{PrimeIdeal, QuadIdeal};
pub use quad::{KElem, QuadElem, QuadField, QuadRing};
