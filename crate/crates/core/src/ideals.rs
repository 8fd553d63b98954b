//! Annihilators, isotropy and strong ideals.

use std::fmt;

use crate::algebra::ConnectionCoeffs;
use crate::linalg::{Mat, Rat, Subspace, SymForm};

/// Span of all `∇_{e_i} e_j`.
pub fn nabla_gg(gamma: &ConnectionCoeffs) -> Subspace {
    let n = gamma.dim();
    Subspace::span(n, (0..n).flat_map(|i| (0..n).map(move |j| gamma.vector(i, j).to_vec())))
}

/// `{X : ∇_Y X = 0 for all Y}`: the joint kernel of the left operators.
pub fn ann_r(gamma: &ConnectionCoeffs) -> Subspace {
    let n = gamma.dim();
    let lefts: Vec<Mat> = (0..n).map(|i| gamma.left(i)).collect();
    Subspace::from_rows(&joint_kernel(n, &lefts))
}

/// `{X ∈ Ann_R : ∇_X Y = 0 for all Y}`.
pub fn ann(gamma: &ConnectionCoeffs) -> Subspace {
    let n = gamma.dim();
    let ops: Vec<Mat> = (0..n).map(|i| gamma.left(i)).chain((0..n).map(|j| gamma.right(j))).collect();
    Subspace::from_rows(&joint_kernel(n, &ops))
}

fn joint_kernel(n: usize, ops: &[Mat]) -> Mat {
    if ops.is_empty() {
        return Mat::identity(n);
    }
    let stacked = ops.iter().skip(1).fold(ops[0].clone(), |acc, m| acc.vstack(m));
    stacked.kernel()
}

pub fn is_isotropic(h: &Subspace, form: &SymForm) -> bool {
    h.is_isotropic(form)
}

/// `∇_{e_i} h ⊆ h` and `∇_h e_j ⊆ h` for all basis vectors.
pub fn is_strong_ideal(h: &Subspace, gamma: &ConnectionCoeffs) -> bool {
    let n = gamma.dim();
    h.vectors().all(|v| {
        (0..n).all(|i| {
            let e = crate::linalg::rat::unit_vec(n, i);
            h.contains(&gamma.apply(&e, v)) && h.contains(&gamma.apply(v, &e))
        })
    })
}

/// Smallest strong ideal containing `s`.
pub fn strong_ideal_closure(s: &Subspace, gamma: &ConnectionCoeffs) -> Subspace {
    let n = gamma.dim();
    let lefts: Vec<Mat> = (0..n).map(|i| gamma.left(i)).collect();
    let rights: Vec<Mat> = (0..n).map(|j| gamma.right(j)).collect();
    let mut h = s.clone();
    loop {
        let vs: Vec<&[Rat]> = h.vectors().collect();
        let left_images = lefts.iter().flat_map(|l| vs.iter().map(move |v| l.apply(v)));
        let grown = h.sum(&Subspace::span(n, left_images));
        let vs: Vec<&[Rat]> = grown.vectors().collect();
        let right_images = rights.iter().flat_map(|r| vs.iter().map(move |v| r.apply(v)));
        let grown = grown.sum(&Subspace::span(n, right_images));
        if grown == h {
            return h;
        }
        h = grown;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    AnnRFull,
    AnnRZero,
    Isotropic,
    AnnREqAnn,
    NonIsotropic,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::AnnRFull => "ANN_R_FULL",
            CaseTag::AnnRZero => "ANN_R_ZERO",
            CaseTag::Isotropic => "ISOTROPIC",
            CaseTag::AnnREqAnn => "ANN_R_EQ_ANN",
            CaseTag::NonIsotropic => "NON_ISOTROPIC",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnReport {
    pub ann_r: Subspace,
    pub ann: Subspace,
    pub nabla_gg: Subspace,
    pub ann_r_isotropic: bool,
    pub ann_r_equals_ann: bool,
    pub case_tag: CaseTag,
}

pub fn ann_report(gamma: &ConnectionCoeffs, metric: &SymForm) -> AnnReport {
    let ann_r = ann_r(gamma);
    let ann = ann(gamma);
    let ann_r_isotropic = ann_r.is_isotropic(metric);
    let ann_r_equals_ann = ann_r == ann;
    let case_tag = if ann_r.is_full() {
        CaseTag::AnnRFull
    } else if ann_r.is_zero() {
        CaseTag::AnnRZero
    } else if ann_r_isotropic {
        CaseTag::Isotropic
    } else if ann_r_equals_ann {
        CaseTag::AnnREqAnn
    } else {
        CaseTag::NonIsotropic
    };
    AnnReport { nabla_gg: nabla_gg(gamma), ann_r, ann, ann_r_isotropic, ann_r_equals_ann, case_tag }
}
