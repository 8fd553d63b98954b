use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use super::rat::{fmt_rat, int, vec_axpy, Rat};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from explicit rows; `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Mat { rows: n, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rat] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rat]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        self.row_iter().map(<[Rat]>::to_vec).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `v M` for a row vector `v`.
    pub fn left_apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rat::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            vec_axpy(&mut out, vi, self.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_rows(self.cols, idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn pow(&self, k: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(None).len()
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                for k in c..n {
                    let sub = &f * &m[(c, k)];
                    m[(r, k)] -= sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let r = rref(self);
        (r.rank == self.rows).then_some(r.transform)
    }

    /// Basis of `{x : M x = 0}` as rows.
    pub fn kernel(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(None);
        kernel_from_rref(&m, &pivots)
    }

    /// Solves `M x = b`, returning one solution if any.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.reduce_in_place(None);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination in place; returns pivot columns. When
    /// `transform` is given, the same row operations are applied to it.
    fn reduce_in_place(&mut self, mut transform: Option<&mut Mat>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            if let Some(t) = transform.as_deref_mut() {
                t.swap_rows(p, row);
            }
            let inv = self[(row, col)].recip();
            for x in self.row_mut(row) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            if let Some(t) = transform.as_deref_mut() {
                for x in t.row_mut(row) {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pivot_row = self.row(row).to_vec();
            let pivot_t = transform.as_deref().map(|t| t.row(row).to_vec());
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = -self[(r, col)].clone();
                vec_axpy(self.row_mut(r), &f, &pivot_row);
                if let (Some(t), Some(pt)) = (transform.as_deref_mut(), pivot_t.as_ref()) {
                    vec_axpy(t.row_mut(r), &f, pt);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

fn kernel_from_rref(m: &Mat, pivots: &[usize]) -> Mat {
    let n = m.cols;
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[(r, free)].clone();
        }
        basis.push(v);
    }
    Mat::from_rows(n, basis)
}

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    /// The unique RREF of the input (same shape, zero rows at the bottom).
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Invertible `T` with `T * input == matrix`.
    pub transform: Mat,
}

impl Rref {
    /// The nonzero rows of the RREF.
    pub fn basis(&self) -> Mat {
        self.matrix.select_rows(&(0..self.rank).collect::<Vec<_>>())
    }
}

pub fn rref(m: &Mat) -> Rref {
    let mut matrix = m.clone();
    let mut transform = Mat::identity(m.rows);
    let pivots = matrix.reduce_in_place(Some(&mut transform));
    Rref { rank: pivots.len(), matrix, pivots, transform }
}

/// Row-echelon accumulator: rows are fed one at a time and reduced against
/// the pivots seen so far. Used for large, sparse, very redundant systems.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = -v[*p].clone();
                vec_axpy(&mut v, &f, row);
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                vec_axpy(row, &f, &v);
            }
        }
        self.rows.push((p, v));
        true
    }

    /// Current rows as an RREF matrix (sorted by pivot).
    pub fn to_rref(&self) -> (Mat, Vec<usize>) {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|(p, _)| *p);
        let pivots = rows.iter().map(|(p, _)| *p).collect();
        (Mat::from_rows(self.cols, rows.into_iter().map(|(_, r)| r).collect()), pivots)
    }

    /// Basis of the right kernel of the accumulated system.
    pub fn kernel(&self) -> Mat {
        let (m, pivots) = self.to_rref();
        kernel_from_rref(&m, &pivots)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let a = a.clone();
                vec_axpy(out.row_mut(i), &a, rhs.row(k));
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.row_iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

pub(crate) fn check_square(m: &Mat, n: usize, what: &str) -> Result<()> {
    if m.rows != n || m.cols != n {
        return Err(Error::Dimension(format!(
            "{what} is {}x{}, expected {n}x{n}",
            m.rows, m.cols
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::{int, rat};

    #[test]
    fn rref_identity() {
        let r = rref(&Mat::identity(3));
        assert_eq!(r.matrix, Mat::identity(3));
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_zero() {
        let r = rref(&Mat::zeros(2, 4));
        assert_eq!(r.rank, 0);
        assert_eq!(r.basis().rows(), 0);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Mat::from_ints(&[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.basis(), Mat::from_ints(&[&[1, 2]]));
        assert_eq!(&r.transform * &m, r.matrix);
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        let sing = Mat::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.det(), int(0));
        assert_eq!(Mat::from_ints(&[&[0, 1], &[1, 0]]).det(), int(-1));
    }

    #[test]
    fn kernel_and_solve() {
        let m = Mat::from_ints(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k.rows(), 1);
        assert!(m.apply(k.row(0)).iter().all(Zero::is_zero));
        let x = m.solve(&[int(3), rat(1, 2)]).unwrap();
        assert_eq!(m.apply(&x), vec![int(3), rat(1, 2)]);
        assert!(Mat::from_ints(&[&[1, 1], &[2, 2]]).solve(&[int(1), int(3)]).is_none());
    }

    #[test]
    fn echelon_matches_rref() {
        let m = Mat::from_ints(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5], &[2, 2, 2]]);
        let mut e = Echelon::new(3);
        for r in m.row_iter() {
            e.push(r.to_vec());
        }
        assert_eq!(e.to_rref().0, rref(&m).basis());
        assert_eq!(e.kernel(), m.kernel());
    }
}
