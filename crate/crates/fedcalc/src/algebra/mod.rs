//! Exact coefficients, multi-index storage and the keyed element families.

pub mod fixture;
pub mod multi;
pub mod parse;
pub mod rational;
pub mod series;
pub mod xpoly;

pub use fixture::FixtureError;
pub use multi::{Mask, Multi, MAX_DIM};
pub use parse::{parse_xpoly, PolyParseError};
pub use rational::Rational;
pub use series::{
    AlgebraError, ChKey, ChainElement, DoKey, EForm, EfKey, Family, FiberKey, GradedMul, Key, PolyDiffOp, PolyVector,
    PvKey, RawKey, Series, SmElement, SmKey, UNTRUNCATED,
};
pub use xpoly::XPoly;
