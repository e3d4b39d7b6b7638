//! Partial tilings of the plane in which no two points at unit distance share a colour.
//!
//! The crate builds periodic tilings from a few parameters, maximises the
//! ratio of covered area to void area, and checks the result independently.

pub mod geometry;
pub mod constraints;
pub mod families;
pub mod instance;
pub mod verifier;
pub mod optimizer;
pub mod params;
pub mod bounds;
pub mod render;
pub mod cli;
