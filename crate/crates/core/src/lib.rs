#![allow(clippy::needless_range_loop)]

pub mod algebroid;
pub mod bialgebroid;
pub mod calculus;
pub mod corpus;
pub mod error;
pub mod hessian;
pub mod io;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod presymplectic;
pub mod random;
pub mod report;
pub mod scalar;
pub mod search;

pub use algebroid::{Algebroid, Covector, Kind, Labels, OperatorMatrix, Section};
pub use bialgebroid::{Candidate, SymTensor};
pub use calculus::{FormTensor, PolyTensor, Tensor, Wedge};
pub use error::{Error, Result};
pub use hessian::FlatConnection;
pub use linalg::Matrix;
pub use presymplectic::{BigSection, PreSymplectic, Subbundle};
pub use report::{Check, Report, Witness};
pub use scalar::{Scalar, Vars, VectorField};
