//! Orthogonal splitting of flat Riemannian metric Lie algebras.

use crate::algebra::MetricAlgebra;
use crate::curvature::curvature_tensor;
use crate::error::{Error, Result};
use crate::ideals::{ann, nabla_gg};
use crate::linalg::{congruent_diagonalize, Mat, Subspace};

/// `g = b ⊕ ann ⊕ derived`, orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSplit {
    pub b: Subspace,
    pub ann: Subspace,
    pub derived: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatStructure {
    Split(FlatSplit),
    NotApplicable(String),
}

fn left_by(alg: &MetricAlgebra, x: &[crate::linalg::Rat]) -> Mat {
    alg.gamma().left_by(x)
}

fn ad_by(alg: &MetricAlgebra, x: &[crate::linalg::Rat]) -> Mat {
    let n = alg.dim();
    let mut m = Mat::zeros(n, n);
    for (i, xi) in x.iter().enumerate() {
        if !num_traits::Zero::is_zero(xi) {
            m = &m + &alg.spec().ad(i).scale(xi);
        }
    }
    m
}

/// Extracts and checks the split of a flat positive definite metric.
pub fn flat_riemannian_structure(alg: &MetricAlgebra) -> Result<FlatStructure> {
    let n = alg.dim();
    let metric = alg.metric();
    if congruent_diagonalize(metric).signature.positive != n {
        return Ok(FlatStructure::NotApplicable("metric is not positive definite".into()));
    }
    if !curvature_tensor(alg.gamma(), alg.spec()).is_zero() {
        return Ok(FlatStructure::NotApplicable("metric is not flat".into()));
    }
    let spec = alg.spec();
    let all = Subspace::full(n);
    let bracket_span = |a: &Subspace, b: &Subspace| {
        let vs: Vec<Vec<_>> =
            a.vectors().flat_map(|x| b.vectors().map(move |y| spec.bracket(x, y))).collect();
        Subspace::span(n, vs)
    };
    let fail = |what: &str| Err(Error::Certificate(format!("flat split: {what}")));

    let derived = bracket_span(&all, &all);
    if derived != nabla_gg(alg.gamma()) {
        return fail("[g,g] differs from ∇_g g");
    }
    let ann = ann(alg.gamma());
    if !ann.intersect(&derived).is_zero() {
        return fail("Ann meets [g,g]");
    }
    let b = ann.sum(&derived).orthogonal_complement(metric);

    if !bracket_span(&b, &b).is_zero() {
        return fail("b is not abelian");
    }
    if !bracket_span(&derived, &derived).is_zero() {
        return fail("[g,g] is not abelian");
    }
    if !derived.contains_subspace(&bracket_span(&all, &derived)) {
        return fail("[g,g] is not an ideal");
    }
    if derived.dim() % 2 != 0 || 2 * b.dim() > derived.dim() {
        return fail("dimension constraints fail");
    }
    for u in ann.sum(&derived).vectors() {
        if !left_by(alg, u).is_zero() {
            return fail("∇_u ≠ 0 for some u in Ann ⊕ [g,g]");
        }
    }
    for x in b.vectors() {
        if !alg.gamma().right_by(x).is_zero() {
            return fail("∇ b ≠ 0");
        }
        let ad = ad_by(alg, x);
        if left_by(alg, x) != ad {
            return fail("∇_b ≠ ad b");
        }
        let m = &ad.transpose() * metric.gram();
        if !(&m + &m.transpose()).is_zero() {
            return fail("ad b is not skew-adjoint");
        }
    }
    Ok(FlatStructure::Split(FlatSplit { b, ann, derived }))
}
