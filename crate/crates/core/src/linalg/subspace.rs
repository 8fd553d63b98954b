use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::form::SymForm;
use super::mat::{rref, Mat};
use super::rat::{fmt_rat, unit_vec, vec_axpy, Rat};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored as the nonzero rows of its RREF.
///
/// Because the RREF of a row space is unique, two `Subspace` values are equal
/// exactly when they describe the same space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &Mat) -> Self {
        let r = rref(m);
        Subspace { ambient: m.cols(), basis: r.basis(), pivots: r.pivots }
    }

    pub fn span<I, V>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<Rat>>,
    {
        let rows: Vec<Vec<Rat>> = vectors.into_iter().map(Into::into).collect();
        Subspace::from_rows(&Mat::from_rows(ambient, rows))
    }

    /// Span of the listed standard basis vectors.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Subspace::span(ambient, indices.iter().map(|&i| unit_vec(ambient, i)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// RREF basis rows.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Rat]> {
        self.basis.row_iter()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace. For an RREF basis the coordinates are the pivot entries.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(self.basis.row_iter()) {
            vec_axpy(&mut residual, &-c.clone(), row);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Vector with the given coordinates in the RREF basis.
    pub fn from_coordinates(&self, coords: &[Rat]) -> Vec<Rat> {
        self.basis.left_apply(coords)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        check_ambient(self, other);
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    /// Zassenhaus intersection: row-reduce `[[A, A], [B, 0]]`; the rows whose
    /// left half vanishes carry a basis of `A ∩ B` in their right half.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        check_ambient(self, other);
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.vectors() {
            let mut r = v.to_vec();
            r.extend_from_slice(v);
            rows.push(r);
        }
        for v in other.vectors() {
            let mut r = v.to_vec();
            r.extend(std::iter::repeat_with(Rat::zero).take(n));
            rows.push(r);
        }
        let r = rref(&Mat::from_rows(2 * n, rows));
        let inter = (0..r.rank)
            .map(|i| r.matrix.row(i))
            .filter(|row| row[..n].iter().all(Zero::is_zero))
            .map(|row| row[n..].to_vec());
        Subspace::span(n, inter)
    }

    /// A complement `c` of `self` inside `within` (`self ⊕ c = within`).
    ///
    /// Coordinates are taken with respect to the RREF basis of `within`; the
    /// complement is spanned by the basis vectors of `within` sitting at the
    /// non-pivot positions of `self` expressed in those coordinates. For
    /// `within` the full space this is the span of the standard basis
    /// vectors at the non-pivot columns of `self`.
    pub fn complement(&self, within: &Subspace) -> Result<Subspace> {
        check_ambient(self, within);
        let coords: Option<Vec<Vec<Rat>>> =
            self.vectors().map(|v| within.coordinates(v)).collect();
        let coords = coords.ok_or(Error::NotContained)?;
        let local = Subspace::span(within.dim(), coords);
        let mut is_pivot = vec![false; within.dim()];
        for &p in &local.pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..within.dim())
            .filter(|&i| !is_pivot[i])
            .map(|i| within.basis.row(i).to_vec());
        Ok(Subspace::span(self.ambient, vectors))
    }

    /// `{x : form(x, y) = 0 for all y in self}`.
    pub fn orthogonal_complement(&self, form: &SymForm) -> Subspace {
        assert_eq!(form.dim(), self.ambient);
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        let constraints = &self.basis * form.gram();
        Subspace::from_rows(&constraints.kernel())
    }

    /// `{x in self : form(x, y) = 0 for all y in self}`.
    pub fn radical(&self, form: &SymForm) -> Subspace {
        let g = form.restricted_gram(&self.basis);
        let k = g.kernel();
        Subspace::from_rows(&(&k * &self.basis))
    }

    pub fn is_isotropic(&self, form: &SymForm) -> bool {
        form.restricted_gram(&self.basis).is_zero()
    }

    pub fn is_nondegenerate(&self, form: &SymForm) -> bool {
        self.radical(form).is_zero()
    }

    /// Image under the linear map `v ↦ M v`.
    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::span(m.rows(), self.vectors().map(|v| m.apply(v)))
    }

    /// Direct-sum check: the subspaces are independent and sum to `target`.
    pub fn is_direct_sum(parts: &[&Subspace], target: &Subspace) -> bool {
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        if total != target.dim() {
            return false;
        }
        let mut acc = Subspace::zero(target.ambient);
        for p in parts {
            acc = acc.sum(p);
        }
        acc == *target
    }
}

fn check_ambient(a: &Subspace, b: &Subspace) {
    assert_eq!(a.ambient, b.ambient, "subspaces live in different ambient spaces");
}

/// Canonical order: by dimension, then lexicographically on the RREF entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| {
                for (a, b) in self.vectors().flatten().zip(other.vectors().flatten()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .vectors()
            .map(|r| format!("({})", r.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

/// Projection onto `onto` along `along` (which must be complementary), as a
/// matrix acting on column vectors.
pub fn projection(onto: &Subspace, along: &Subspace) -> Result<Mat> {
    let n = onto.ambient_dim();
    if onto.dim() + along.dim() != n {
        return Err(Error::Dimension("projection: subspaces are not complementary".into()));
    }
    let b = onto.basis().vstack(along.basis());
    let inv = b.inverse().ok_or_else(|| {
        Error::Dimension("projection: subspaces intersect nontrivially".into())
    })?;
    // Row convention: v = a B, P(v) = a D B with D keeping the first block.
    let mut d = Mat::zeros(n, n);
    for i in 0..onto.dim() {
        d[(i, i)] = num_traits::One::one();
    }
    Ok((&(&inv * &d) * &b).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::{int, ints};

    fn e(n: usize, i: usize) -> Vec<Rat> {
        unit_vec(n, i)
    }

    #[test]
    fn sum_of_lines() {
        let a = Subspace::span(3, [e(3, 0)]);
        let b = Subspace::span(3, [e(3, 1)]);
        assert_eq!(a.sum(&b), Subspace::coordinate(3, &[0, 1]));
    }

    #[test]
    fn zassenhaus_intersection() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(a.intersect(&b), Subspace::coordinate(3, &[1]));
        let c = Subspace::span(3, [ints(&[1, 1, 0]), ints(&[0, 0, 1])]);
        assert_eq!(a.intersect(&c), Subspace::span(3, [ints(&[1, 1, 0])]));
    }

    #[test]
    fn coordinate_complement() {
        let a = Subspace::span(2, [e(2, 0)]);
        assert_eq!(a.complement(&Subspace::full(2)).unwrap(), Subspace::span(2, [e(2, 1)]));
        let b = Subspace::span(3, [ints(&[1, 1, 0])]);
        let within = Subspace::span(3, [ints(&[1, 1, 0]), ints(&[0, 1, 1])]);
        let c = b.complement(&within).unwrap();
        assert!(Subspace::is_direct_sum(&[&b, &c], &within));
        assert_eq!(
            Subspace::span(3, [e(3, 2)]).complement(&within),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn orthogonal_complements() {
        let eucl = SymForm::new(Mat::identity(2)).unwrap();
        assert!(Subspace::zero(2).orthogonal_complement(&eucl).is_full());
        assert_eq!(
            Subspace::span(2, [e(2, 0)]).orthogonal_complement(&eucl),
            Subspace::span(2, [e(2, 1)])
        );
    }

    #[test]
    fn radical_cases() {
        let hyp = SymForm::new(Mat::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        let line = Subspace::span(2, [e(2, 0)]);
        assert_eq!(line.radical(&hyp), line);
        assert!(line.is_isotropic(&hyp));
        assert!(Subspace::full(2).radical(&hyp).is_zero());
        assert!(Subspace::zero(2).is_isotropic(&hyp));
    }

    #[test]
    fn projection_is_idempotent() {
        let a = Subspace::span(2, [ints(&[1, 1])]);
        let b = Subspace::span(2, [ints(&[1, -1])]);
        let p = projection(&a, &b).unwrap();
        assert_eq!(&p * &p, p);
        assert_eq!(p.apply(&ints(&[2, 0])), ints(&[1, 1]));
        assert_eq!(p.apply(&ints(&[1, -1])), vec![int(0), int(0)]);
    }

    #[test]
    fn canonical_order() {
        let a = Subspace::coordinate(3, &[0]);
        let b = Subspace::coordinate(3, &[1]);
        let c = Subspace::coordinate(3, &[0, 1]);
        let mut v = vec![c.clone(), a.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![b, a, c]);
    }
}
