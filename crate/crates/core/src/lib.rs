//! Exact arithmetic and verification tools for pairs of hyperelliptic curves
//! whose Jacobians are related by a (2,…,2)-isogeny.

pub mod corresp;
pub mod error;
pub mod family;
pub mod field;
pub mod identities;
pub mod jacobian;
pub mod moduli;
pub mod mpoly;
pub mod seed;
pub mod upoly;
pub mod zeta;

pub use error::{Error, Result};
pub use field::{ext_build, ExtField, Field, FiniteField, Fp, Fq, PrimeField, Rational};
pub use mpoly::{expand_equal, MPolyZ};
pub use upoly::{BiPoly, UPoly};

pub type QPoly = UPoly<Rational>;
pub type FpPoly = UPoly<Fp>;
pub type FqPoly = UPoly<Fq>;
