//! Exact computations with associated forms of tuples of homogeneous forms:
//! apolarity, catalecticant loci, resultants and the ternary-cubic case.

pub mod apolar;
pub mod assocform;
pub mod catvar;
pub mod error;
pub mod exactla;
pub mod polyring;
pub mod quotalg;
pub mod resultant;
pub mod sample;
pub mod ternary;
pub mod verify;
pub mod textio;

pub use error::{Error, Result};
pub use exactla::{JetScalar, Matrix};
pub use polyring::{GradedForm, Monomial, MonomialBasis, Scalar, Side};
pub use quotalg::FormTuple;
