//! The DGLAs and DG modules of polyvector fields, polydifferential operators,
//! chains and forms, all valued in base differential forms.

use super::tables::{AlgebraTable, ModuleTable};
use crate::algebra::{ChainElement, EForm, PolyDiffOp, PolyVector};

/// `(Ω(T_poly), d, [,]_SN)`.
pub fn polyvectors(dim: usize, order: u32) -> AlgebraTable<PolyVector> {
    AlgebraTable::from_dgla("T_poly", PolyVector::new(dim, order), |a| a.d(), |a, b| a.schouten(b))
}

/// `(Ω(D_poly), d + ∂, [,]_G)`.
pub fn diffops(dim: usize, order: u32) -> AlgebraTable<PolyDiffOp> {
    AlgebraTable::from_dgla(
        "D_poly",
        PolyDiffOp::new(dim, order),
        |a| a.d().add(&a.hochschild_d()),
        |a, b| a.gerstenhaber(b),
    )
}

/// Chains over `Ω(D_poly)`: differential `d + 𝔟`, action `R`.
pub fn chains(dim: usize, order: u32) -> ModuleTable<PolyDiffOp, ChainElement> {
    ModuleTable::from_dg_module(
        "C_poly",
        ChainElement::new(dim, order),
        |v| v.d().add(&v.hochschild_b()),
        |a: &PolyDiffOp, v| a.chain_action(v),
    )
}

/// Forms over `Ω(T_poly)`: differential `d`, action by Lie derivatives.
pub fn forms(dim: usize, order: u32) -> ModuleTable<PolyVector, EForm> {
    ModuleTable::from_dg_module("E", EForm::new(dim, order), |v| v.d(), |a: &PolyVector, v| a.lie_derivative(v))
}
