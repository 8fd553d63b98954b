//! Exact rational linear algebra: matrices, subspaces, bilinear forms and
//! polynomials.

pub mod form;
pub mod mat;
pub mod poly;
pub mod rat;
pub mod subspace;

pub use form::{congruent_diagonalize, Diagonalization, Signature, SymForm};
pub use mat::{rref, Echelon, Mat, Rref};
pub use poly::{coprime_split, minimal_polynomial, Poly};
pub use rat::{fmt_rat, int, parse_rat, rat, Rat};
pub use subspace::{projection, Subspace};
