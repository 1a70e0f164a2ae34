//! Skew polynomial rings: iterated Ore extensions and generalized Weyl
//! algebras.

pub mod gwa;
pub mod ore;

pub use gwa::{
    gwa_mul, gwa_to_weyl, shift_nilpotency_order, weyl_gwa_iso, AffineMap, GwaElement, GwaHandle,
    GwaPresentation,
};
pub use ore::{ore_mul, OreElement, OrePresentation};
