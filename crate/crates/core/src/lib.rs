//! Certified decisions for eventual order and equality of C-finite functions.
//!
//! Inputs are Cauchy problems for homogeneous linear ODEs with constant
//! coefficients, presented by oracles of arbitrary accuracy. All numerics run
//! in ball arithmetic, so every `True`/`False` verdict is proved correct; on
//! instances sitting on the decision boundary the procedures run until their
//! fuel is exhausted.

pub mod cfinite;
pub mod decide;
pub mod forge;
pub mod instance;
pub mod error;
pub mod poly;
pub mod realnum;
pub mod scalar;
pub mod vandermonde;

pub use error::*;
pub use realnum::{BallSign, ComplexBall, ComplexName, Dyadic, RealName, Round};
pub use scalar::{QComplex, Scalar};
