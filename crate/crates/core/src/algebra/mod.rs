//! Exact scalars: F_q, A = F_q[θ], k = F_q(θ), finite extensions of k,
//! matrices over them, and twisted polynomials in the q-Frobenius τ.

pub mod ext;
pub mod factored;
pub mod fq;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod tau;

pub use ext::{ExtElem, ExtField};
pub use factored::FactoredRat;
pub use fq::{Fe, Fq};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use scalar::Scalar;
pub use tau::TauMatrixPoly;
