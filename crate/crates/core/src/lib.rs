#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod gfield;
pub mod families;
pub mod rankcode;
pub mod linpoly;
pub mod scatter;
pub mod symmetry;

pub use error::{Error, Result};
pub use gfield::{FieldCtx, FieldElem, FieldOptions, FpMatrix, FpOperator, SubfieldHandle};
pub use linpoly::{FqLinearMap, LinPoly};
