//! Exact symbolic calculus for Fedosov resolutions of Hochschild chains and cochains
//! on a single polynomial chart.

pub mod algebra;
pub mod cli;
pub mod fedosov;
pub mod hochschild;
pub mod linfty;
pub mod quantization;
pub mod random;
