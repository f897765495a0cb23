//! Exact decomposition of bounded double complexes into squares and zigzags,
//! with direct and zigzag-counting computations of their cohomologies and
//! spectral sequences, and the deformed Iwasawa complex as a worked family.

pub mod cli;
pub mod dcomplex;
pub mod decomp;
pub mod exactla;
pub mod iwasawa;
pub mod scalar;

pub use dcomplex::BigradedComplex;
pub use scalar::Scalar;
