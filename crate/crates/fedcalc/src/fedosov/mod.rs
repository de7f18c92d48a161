//! Fedosov resolutions on a single chart: homotopy calculus, the connection,
//! the iteration for `A`, lifts and the conjugator.

pub mod base;
pub mod connection;
pub mod homotopy;
pub mod lifts;
pub mod resolution;

pub use connection::Connection;
pub use homotopy::{Contractible, Fiberwise};
pub use lifts::LiftError;
pub use resolution::{koszul_field, FedosovData};
