//! Exact-arithmetic geometry of Hom-Lie algebras.
//!
//! A Hom-Lie algebra is a bracket twisted by a linear map `φ`. This crate
//! builds the Hom-Levi-Civita connection of a `φ`-compatible metric, checks
//! Norden and Kähler-Norden conditions for a complex structure, evaluates
//! Tachibana operators and the curvature tensor, and classifies or searches
//! structures on small algebras. All arithmetic is over exact rationals.
//!
//! Basis vectors are 0-based in the API. Witnesses in validation reports use
//! 1-based labels so that `indices: [1, 4]` means the pair `(e1, e4)`.
//!
//! Matrices follow the column convention: column `j` holds the coordinates of
//! the image of `e_j`.

#![no_std]

extern crate alloc;

pub mod classify;
pub mod curvature;
pub mod discovery;
pub mod exactnum;
pub mod geometry;
pub mod homalg;
pub mod identities;
pub mod linalg;
pub mod report;
pub mod tensorcalc;

pub use exactnum::{eval_expr, parse_expr, Bindings, ExprError, ParamExpr, Rational};
pub use geometry::{ComplexStructure, Connection, Metric};
pub use homalg::HomLieAlgebra;
pub use linalg::Matrix;
pub use report::{Check, ValidationReport, Witness};
pub use tensorcalc::{Endomorphism, Tensor};
