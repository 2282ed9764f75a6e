pub mod analysis;
pub mod area;
pub mod cube;
pub mod error;
pub mod interval;
mod kernel;
pub mod laws;
pub mod pv;
pub mod svg;
