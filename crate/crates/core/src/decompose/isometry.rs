//! Strong isometries between two orthogonal decompositions when
//! `Ann_R = Ann`.

use num_traits::{One, Zero};

use crate::algebra::MetricAlgebra;
use crate::error::{Error, Result};
use crate::ideals::{ann_r, ann_report};
use crate::linalg::rat::{half, rational_sqrt, vec_axpy, vec_scale};
use crate::linalg::{congruent_diagonalize, Mat, Rat, Subspace, SymForm};

use super::compare::{
    block_projections, is_strong_homomorphism, match_factors, nabla_span, preserves_metric,
};
use super::decomposition::Decomposition;

/// Witt-type basis of one factor `g_1`:
/// `X_1..X_k` span `Ann_R(g_1)`, `X_1..X_s` span `∇_{g_1}g_1`, the middle
/// block is diagonal with norms `d_i`, and the partners satisfy
/// `⟨X_i, X_{s+i}⟩ = 1` with all other pairings zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub ann_r: Vec<Vec<Rat>>,
    pub diagonal: Vec<Vec<Rat>>,
    pub norms: Vec<Rat>,
    pub partners: Vec<Vec<Rat>>,
    /// `b_pq` for the matched factor; `k × k`, upper triangular.
    pub corrections: Mat,
}

impl AdaptedBasis {
    pub fn k(&self) -> usize {
        self.ann_r.len()
    }

    pub fn s(&self) -> usize {
        self.ann_r.len() + self.diagonal.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<Rat>> {
        self.ann_r.iter().chain(&self.diagonal).chain(&self.partners)
    }

    /// Gram matrix in this basis.
    pub fn gram(&self, metric: &SymForm) -> Mat {
        let rows: Vec<Vec<Rat>> = self.vectors().cloned().collect();
        metric.restricted_gram(&Mat::from_rows(metric.dim(), rows))
    }
}

/// Builds the adapted basis of a factor (corrections left zero).
pub fn adapted_basis(alg: &MetricAlgebra, factor: &Subspace) -> Result<AdaptedBasis> {
    let metric = alg.metric();
    let gamma = alg.gamma();
    let nab = nabla_span(gamma, factor, factor);
    let a = ann_r(gamma).intersect(factor);
    if !a.is_isotropic(metric) || !nab.contains_subspace(&a) {
        return Err(Error::Precondition("Ann_R of a factor is not isotropic".into()));
    }
    let k = a.dim();
    let x: Vec<Vec<Rat>> = a.vectors().map(<[Rat]>::to_vec).collect();

    let w_space = a.complement(&nab)?;
    let w_form = SymForm::new(metric.restricted_gram(w_space.basis()))?;
    let diag = congruent_diagonalize(&w_form);
    let w: Vec<Vec<Rat>> =
        diag.basis_change.row_iter().map(|r| w_space.basis().left_apply(r)).collect();
    let norms = diag.diagonal.clone();
    if norms.iter().any(Zero::is_zero) {
        return Err(Error::Certificate("∇_g g has an unexpected radical".into()));
    }

    let c = nab.complement(factor)?;
    let cv: Vec<Vec<Rat>> = c.vectors().map(<[Rat]>::to_vec).collect();
    if cv.len() != k {
        return Err(Error::Certificate("partner block has the wrong dimension".into()));
    }
    // m[i][j] = ⟨X_i, c_j⟩
    let mut m = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = metric.eval(&x[i], &cv[j]);
        }
    }
    let minv = m
        .inverse()
        .ok_or_else(|| Error::Certificate("Ann_R is not paired with its partners".into()))?;
    let n = alg.dim();
    let mut y: Vec<Vec<Rat>> = (0..k)
        .map(|j| {
            let mut v = vec![Rat::zero(); n];
            for l in 0..k {
                vec_axpy(&mut v, &minv[(l, j)], &cv[l]);
            }
            for (wm, dm) in w.iter().zip(&norms) {
                let f = -(metric.eval(&v, wm) / dm);
                vec_axpy(&mut v, &f, wm);
            }
            v
        })
        .collect();
    let pair: Vec<Vec<Rat>> =
        (0..k).map(|j| (0..k).map(|l| metric.eval(&y[j], &y[l])).collect()).collect();
    for j in 0..k {
        for l in 0..k {
            let f = -(&pair[j][l] * half());
            vec_axpy(&mut y[j], &f, &x[l]);
        }
    }
    let basis = AdaptedBasis { ann_r: x, diagonal: w, norms, partners: y, corrections: Mat::zeros(k, k) };
    check_adapted_gram(&basis, metric)?;
    Ok(basis)
}

fn check_adapted_gram(b: &AdaptedBasis, metric: &SymForm) -> Result<()> {
    let (k, s) = (b.k(), b.s());
    let g = b.gram(metric);
    let mut expected = Mat::zeros(s + k, s + k);
    for (i, d) in b.norms.iter().enumerate() {
        expected[(k + i, k + i)] = d.clone();
    }
    for i in 0..k {
        expected[(i, s + i)] = Rat::one();
        expected[(s + i, i)] = Rat::one();
    }
    if g == expected {
        Ok(())
    } else {
        Err(Error::Certificate("adapted basis has the wrong Gram pattern".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongIsometry {
    /// Acts on column vectors; maps the first decomposition onto the second.
    pub map: Mat,
    /// Matched factor index in the second decomposition, per factor.
    pub matching: Vec<usize>,
    /// One per factor of the first decomposition (empty for flat lines).
    pub adapted: Vec<Option<AdaptedBasis>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryOutcome {
    Isometry(StrongIsometry),
    /// Matching norms would need an irrational rescaling.
    Unsupported(String),
}

/// Splits `v = p + r` with `p ∈ onto`, `r ∈ along`; returns `p`.
fn component(v: &[Rat], onto: &Subspace, along: &Subspace) -> Option<Vec<Rat>> {
    let stacked = onto.basis().vstack(along.basis());
    let coeffs = stacked.transpose().solve(v)?;
    let (head, _) = coeffs.split_at(onto.dim());
    Some(onto.basis().left_apply(head))
}

/// Constructs a strong isometry carrying decomposition `a` onto `b`.
pub fn build_strong_isometry(
    a: &Decomposition,
    b: &Decomposition,
    alg: &MetricAlgebra,
) -> Result<IsometryOutcome> {
    let n = alg.dim();
    let gamma = alg.gamma();
    let metric = alg.metric();
    let report = ann_report(gamma, metric);
    if !report.ann_r_equals_ann {
        return Err(Error::Precondition("requires Ann_R = Ann".into()));
    }
    if !a.orthogonal || !b.orthogonal {
        return Err(Error::Precondition("both decompositions must be orthogonal".into()));
    }
    if a.g0.is_some() != b.g0.is_some() {
        return Err(Error::Precondition("only one decomposition has a g0 block".into()));
    }
    let matching = match_factors(gamma, a, b)?;
    let pb = block_projections(b, n)?;
    let m = a.factors.len();

    let mut sources: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut targets: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut adapted = Vec::with_capacity(m);
    let mut matching = matching;
    let flat: Vec<bool> =
        a.factors.iter().map(|f| nabla_span(gamma, f, f).is_zero()).collect();

    // flat lines: pair by square class of the norms
    let flat_a: Vec<usize> = (0..m).filter(|&j| flat[j]).collect();
    let mut free_b: Vec<usize> = flat_a.iter().map(|&j| matching[j]).collect();
    free_b.sort_unstable();
    for &j in &flat_a {
        let f = &a.factors[j];
        if f.dim() != 1 {
            return Ok(IsometryOutcome::Unsupported(format!(
                "flat factor {j} has dimension {}",
                f.dim()
            )));
        }
        let v = f.basis().row(0).to_vec();
        let nv = metric.eval(&v, &v);
        let found = free_b.iter().enumerate().find_map(|(pos, &k)| {
            let w = b.factors[k].basis().row(0).to_vec();
            let nw = metric.eval(&w, &w);
            if nw.is_zero() || b.factors[k].dim() != 1 {
                return None;
            }
            rational_sqrt(&(&nv / &nw)).map(|lambda| (pos, k, vec_scale(&w, &lambda)))
        });
        let Some((pos, k, image)) = found else {
            return Ok(IsometryOutcome::Unsupported(format!(
                "no factor of the second decomposition has norm ratio a rational square \
                 with factor {j}"
            )));
        };
        free_b.remove(pos);
        matching[j] = k;
        sources.push(v);
        targets.push(image);
    }

    for j in 0..m {
        if flat[j] {
            adapted.push(None);
            continue;
        }
        let k = matching[j];
        let mut basis = adapted_basis(alg, &a.factors[j])?;
        let (kk, s) = (basis.k(), basis.s());
        let pi1 = &pb[k];
        let b0 = b.g0.as_ref().map(|_| &pb[m]);
        let p0: Vec<Vec<Rat>> = basis
            .partners
            .iter()
            .map(|x| b0.map_or_else(|| vec![Rat::zero(); n], |p| p.apply(x)))
            .collect();
        let mut corr = Mat::zeros(kk, kk);
        for p in 0..kk {
            for q in p..kk {
                let v = metric.eval(&p0[p], &p0[q]);
                corr[(p, q)] = if p == q { v * half() } else { v };
            }
        }
        for v in basis.ann_r.iter().chain(&basis.diagonal) {
            sources.push(v.clone());
            targets.push(v.clone());
        }
        for p in 0..kk {
            let mut img = pi1.apply(&basis.partners[p]);
            for l in p..kk {
                vec_axpy(&mut img, &corr[(p, l)], &basis.ann_r[l]);
            }
            sources.push(basis.partners[p].clone());
            targets.push(img);
        }
        debug_assert_eq!(s + kk, a.factors[j].dim());
        basis.corrections = corr;
        adapted.push(Some(basis));
    }

    if let (Some(g0), Some(g0b)) = (&a.g0, &b.g0) {
        let rad = report.ann_r.radical(metric);
        for v in g0.vectors() {
            let img = component(v, g0b, &rad)
                .ok_or_else(|| Error::Certificate("g0 blocks are not complements of the radical".into()))?;
            sources.push(v.to_vec());
            targets.push(img);
        }
    }

    let src = Mat::from_rows(n, sources);
    let tgt = Mat::from_rows(n, targets);
    let src_inv = src
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Certificate("adapted bases do not span the algebra".into()))?;
    let map = &tgt.transpose() * &src_inv;

    if !is_strong_homomorphism(&map, gamma) || map.inverse().is_none() {
        return Err(Error::Certificate("constructed map is not a strong isomorphism".into()));
    }
    if !preserves_metric(&map, &Subspace::full(n), metric) {
        return Err(Error::Certificate("constructed map is not an isometry".into()));
    }
    for (j, &k) in matching.iter().enumerate() {
        if a.factors[j].image(&map) != b.factors[k] {
            return Err(Error::Certificate(format!("factor {j} is not mapped onto its match")));
        }
    }
    if let (Some(g0), Some(g0b)) = (&a.g0, &b.g0) {
        if g0.image(&map) != *g0b {
            return Err(Error::Certificate("g0 is not mapped onto g0'".into()));
        }
    }
    Ok(IsometryOutcome::Isometry(StrongIsometry { map, matching, adapted }))
}
