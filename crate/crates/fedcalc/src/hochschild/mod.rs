//! Fiberwise Hochschild structures: brackets, the chain action, differentials,
//! Lie derivatives and the HKR / Connes comparison maps.

pub mod chains;
pub mod forms;
pub mod gerstenhaber;
pub mod maps;
pub mod schouten;

use crate::algebra::Mask;

/// Koszul sign for moving an object of internal degree `k` past the dx-monomial `dx`.
#[inline]
pub(crate) fn koszul_neg(k: i32, dx: Mask) -> bool {
    (k as i64 * dx.len() as i64).rem_euclid(2) == 1
}
