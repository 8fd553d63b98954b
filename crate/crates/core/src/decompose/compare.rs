//! Comparing two decompositions of the same algebra.

use crate::algebra::{ConnectionCoeffs, MetricAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{projection, Mat, Subspace, SymForm};

use super::decomposition::Decomposition;

/// `span{∇_x y : x ∈ a, y ∈ b}`
pub fn nabla_span(gamma: &ConnectionCoeffs, a: &Subspace, b: &Subspace) -> Subspace {
    let n = gamma.dim();
    let vs: Vec<Vec<_>> =
        a.vectors().flat_map(|x| b.vectors().map(move |y| gamma.apply(x, y))).collect();
    Subspace::span(n, vs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    /// `matching[j]` is the index in the second decomposition matched with
    /// factor `j` of the first.
    pub matching: Vec<usize>,
    pub dims_equal: bool,
    /// Per factor: `∇_{g_j}g_j = ∇_{g_j}g'_j = ∇_{g'_j}g_j = ∇_{g'_j}g'_j`.
    pub nabla_equalities: Vec<bool>,
    /// `∇_{g_j}g'_k = ∇_{g'_k}g_j = 0` for unmatched pairs.
    pub cross_vanishing_ok: bool,
    /// `π(∇_X Y) = ∇_{πX} πY` on basis pairs.
    pub strong_homomorphism_ok: bool,
    /// Strong homomorphism and invertible.
    pub automorphism: bool,
    pub isometric: Vec<bool>,
    pub g0_isometric: Option<bool>,
    /// `π = Σ_j P'_{σ(j)} P_j` (plus the `g0` term).
    pub pi: Mat,
}

/// Projection onto each block along the sum of the others.
pub(crate) fn block_projections(d: &Decomposition, n: usize) -> Result<Vec<Mat>> {
    let blocks = d.blocks();
    (0..blocks.len())
        .map(|i| {
            let rest = blocks
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Subspace::zero(n), |acc, (_, b)| acc.sum(b));
            projection(blocks[i], &rest)
        })
        .collect()
}

/// Matches non-flat factors by the nonvanishing of `∇_{g_j}g'_k` and flat
/// ones (`∇_{g_j}g_j = 0`) in order.
pub(crate) fn match_factors(
    gamma: &ConnectionCoeffs,
    a: &Decomposition,
    b: &Decomposition,
) -> Result<Vec<usize>> {
    if a.factors.len() != b.factors.len() {
        return Err(Error::NoMatching(format!(
            "factor counts differ ({} vs {})",
            a.factors.len(),
            b.factors.len()
        )));
    }
    let is_flat = |s: &Subspace| nabla_span(gamma, s, s).is_zero();
    let b_flat: Vec<bool> = b.factors.iter().map(is_flat).collect();
    let mut used = vec![false; b.factors.len()];
    let mut matching = vec![usize::MAX; a.factors.len()];
    let mut flat_a = Vec::new();
    for (j, g) in a.factors.iter().enumerate() {
        if is_flat(g) {
            flat_a.push(j);
            continue;
        }
        let candidates: Vec<usize> = (0..b.factors.len())
            .filter(|&k| !b_flat[k] && !nabla_span(gamma, g, &b.factors[k]).is_zero())
            .collect();
        match candidates[..] {
            [k] if !used[k] => {
                used[k] = true;
                matching[j] = k;
            }
            _ => {
                return Err(Error::NoMatching(format!(
                    "factor {j} meets {} factors of the other decomposition",
                    candidates.len()
                )))
            }
        }
    }
    let mut free_b = (0..b.factors.len()).filter(|&k| b_flat[k] && !used[k]);
    for j in flat_a {
        let k = free_b
            .next()
            .ok_or_else(|| Error::NoMatching("flat factors do not pair up".into()))?;
        matching[j] = k;
    }
    if free_b.next().is_some() || matching.contains(&usize::MAX) {
        return Err(Error::NoMatching("factors do not pair up".into()));
    }
    Ok(matching)
}

pub(crate) fn preserves_metric(m: &Mat, block: &Subspace, metric: &SymForm) -> bool {
    let images: Vec<Vec<_>> = block.vectors().map(|v| m.apply(v)).collect();
    let imgs = Mat::from_rows(metric.dim(), images);
    metric.restricted_gram(&imgs) == metric.restricted_gram(block.basis())
}

pub(crate) fn is_strong_homomorphism(m: &Mat, gamma: &ConnectionCoeffs) -> bool {
    let n = gamma.dim();
    let cols: Vec<Vec<_>> = (0..n).map(|j| m.col(j)).collect();
    (0..n).all(|i| (0..n).all(|j| m.apply(gamma.vector(i, j)) == gamma.apply(&cols[i], &cols[j])))
}

pub fn compare_decompositions(
    a: &Decomposition,
    b: &Decomposition,
    alg: &MetricAlgebra,
) -> Result<CompareReport> {
    let n = alg.dim();
    let gamma = alg.gamma();
    let metric = alg.metric();
    if a.g0.is_some() != b.g0.is_some() {
        return Err(Error::NoMatching("only one decomposition has a g0 block".into()));
    }
    let matching = match_factors(gamma, a, b)?;
    let pa = block_projections(a, n)?;
    let pb = block_projections(b, n)?;
    let m = a.factors.len();

    let mut pi = Mat::zeros(n, n);
    let mut isometric = Vec::with_capacity(m);
    for (j, &k) in matching.iter().enumerate() {
        let pij = &pb[k] * &pa[j];
        isometric.push(preserves_metric(&pij, &a.factors[j], metric));
        pi = &pi + &pij;
    }
    let g0_isometric = match (&a.g0, &b.g0) {
        (Some(g0), Some(_)) => {
            let p0 = &pb[m] * &pa[m];
            let ok = preserves_metric(&p0, g0, metric);
            pi = &pi + &p0;
            Some(ok)
        }
        _ => None,
    };

    let dims_equal = matching.iter().enumerate().all(|(j, &k)| a.factors[j].dim() == b.factors[k].dim())
        && a.g0.as_ref().map(Subspace::dim) == b.g0.as_ref().map(Subspace::dim);
    let nabla_equalities = matching
        .iter()
        .enumerate()
        .map(|(j, &k)| {
            let (g, h) = (&a.factors[j], &b.factors[k]);
            let base = nabla_span(gamma, g, g);
            nabla_span(gamma, g, h) == base
                && nabla_span(gamma, h, g) == base
                && nabla_span(gamma, h, h) == base
        })
        .collect();
    let cross_vanishing_ok = matching.iter().enumerate().all(|(j, &k)| {
        (0..m).filter(|&l| l != k).all(|l| {
            let (g, h) = (&a.factors[j], &b.factors[l]);
            nabla_span(gamma, g, h).is_zero() && nabla_span(gamma, h, g).is_zero()
        })
    });
    let strong_homomorphism_ok = is_strong_homomorphism(&pi, gamma);
    let automorphism = strong_homomorphism_ok && pi.inverse().is_some();
    Ok(CompareReport {
        matching,
        dims_equal,
        nabla_equalities,
        cross_vanishing_ok,
        strong_homomorphism_ok,
        automorphism,
        isometric,
        g0_isometric,
        pi,
    })
}
