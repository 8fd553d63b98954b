use num_traits::{Signed, Zero};

use super::mat::Mat;
use super::rat::{vec_axpy, Rat};
use crate::error::{Error, Result};

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymForm {
    gram: Mat,
}

impl SymForm {
    pub fn new(gram: Mat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension("Gram matrix must be square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidSpec("Gram matrix is not symmetric".into()));
        }
        Ok(SymForm { gram })
    }

    pub fn identity(n: usize) -> Self {
        SymForm { gram: Mat::identity(n) }
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.gram.apply(y);
        x.iter().zip(&gy).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    /// Gram matrix of the form on the span of the rows of `basis`.
    pub fn restricted_gram(&self, basis: &Mat) -> Mat {
        &(basis * &self.gram) * &basis.transpose()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.det().is_zero()
    }

    pub fn scaled(&self, s: &Rat) -> SymForm {
        SymForm { gram: self.gram.scale(s) }
    }
}

/// Counts of positive, negative and zero diagonal entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Rows are the new basis vectors: `basis_change * gram * basis_changeᵀ`
    /// is diagonal.
    pub basis_change: Mat,
    pub diagonal: Vec<Rat>,
    pub signature: Signature,
}

/// Symmetric Gaussian elimination by simultaneous row and column operations.
/// No square roots are taken, so diagonal entries are arbitrary rationals.
pub fn congruent_diagonalize(form: &SymForm) -> Diagonalization {
    let n = form.dim();
    let mut a = form.gram.clone();
    let mut p = Mat::identity(n);

    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, k, j);
                p.swap_rows(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // a[k][k] becomes 2 a[k][j] since a[j][j] = 0
                add_sym(&mut a, k, j, &Rat::from_integer(1.into()));
                let row = p.row(j).to_vec();
                vec_axpy(p.row_mut(k), &Rat::from_integer(1.into()), &row);
            } else {
                continue;
            }
        }
        let pivot = a[(k, k)].clone();
        for j in k + 1..n {
            if a[(j, k)].is_zero() {
                continue;
            }
            let f = -(&a[(j, k)] / &pivot);
            add_sym(&mut a, j, k, &f);
            let row = p.row(k).to_vec();
            vec_axpy(p.row_mut(j), &f, &row);
        }
    }

    let diagonal: Vec<Rat> = (0..n).map(|i| a[(i, i)].clone()).collect();
    let signature = Signature {
        positive: diagonal.iter().filter(|d| d.is_positive()).count(),
        negative: diagonal.iter().filter(|d| d.is_negative()).count(),
        zero: diagonal.iter().filter(|d| d.is_zero()).count(),
    };
    Diagonalization { basis_change: p, diagonal, signature }
}

fn swap_sym(a: &mut Mat, i: usize, j: usize) {
    a.swap_rows(i, j);
    let n = a.rows();
    for r in 0..n {
        let tmp = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = tmp;
    }
}

/// row_i += f row_j, then col_i += f col_j.
fn add_sym(a: &mut Mat, i: usize, j: usize, f: &Rat) {
    let row = a.row(j).to_vec();
    vec_axpy(a.row_mut(i), f, &row);
    for r in 0..a.rows() {
        let add = f * &a[(r, j)];
        a[(r, i)] += add;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::int;

    fn check(form: &SymForm) -> Diagonalization {
        let d = congruent_diagonalize(form);
        let prod = &(&d.basis_change * form.gram()) * &d.basis_change.transpose();
        assert_eq!(prod, Mat::diag(&d.diagonal));
        assert!(!d.basis_change.det().is_zero());
        d
    }

    #[test]
    fn already_diagonal() {
        let f = SymForm::new(Mat::diag(&[int(2), int(-3)])).unwrap();
        let d = check(&f);
        assert_eq!(d.diagonal, vec![int(2), int(-3)]);
        assert_eq!(d.signature, Signature { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn hyperbolic_pair() {
        let f = SymForm::new(Mat::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        let d = check(&f);
        assert_eq!(d.signature, Signature { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn zero_form() {
        let f = SymForm::new(Mat::zeros(3, 3)).unwrap();
        assert_eq!(check(&f).signature, Signature { positive: 0, negative: 0, zero: 3 });
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(SymForm::new(Mat::from_ints(&[&[0, 1], &[2, 0]])).is_err());
    }
}
