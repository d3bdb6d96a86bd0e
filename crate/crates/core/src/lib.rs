//! Exact symbolic engine for the three-parameter quantized enveloping algebra
//! `U_{ℏ₁,ℏ₂,ℏ₃}(𝔤_NC^{α,β,γ})`, its Hopf structure, the dual star-product
//! and the induced Lie bialgebra.
//!
//! All arithmetic is over `ℚ[[ℏ₁,ℏ₂,ℏ₃]]` truncated at a fixed total degree,
//! so every identity is checked by exact equality.

pub mod bialgebra;
pub mod dual;
pub mod error;
pub mod expr;
pub mod hopf;
pub mod multiindex;
pub mod report;
pub mod series;
pub mod uea;

pub use bialgebra::{Cocommutator, GroupElement, LieData, WedgeElement};
pub use dual::{DualElement, DualMonomial, StarOracle};
pub use error::{Error, Result};
pub use expr::{parse_algebra, parse_dual, parse_expression, Expression};
pub use hopf::{Hopf, TensorElement, TripleTensorElement};
pub use multiindex::{Index3, Index4, Index7, MultiIndex};
pub use report::{Check, VerificationReport};
pub use series::{Rational, Series, Zeroed};
pub use uea::{AlgebraElement, DeformParams, Generator, PbwMonomial, Uea, ZMap, ZMonomial};
