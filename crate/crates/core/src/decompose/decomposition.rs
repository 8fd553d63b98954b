//! Decomposition into indecomposable nondegenerate strong ideals.

use crate::algebra::MetricAlgebra;
use crate::error::{Error, Result};
use crate::ideals::{ann_report, is_strong_ideal, CaseTag};
use crate::linalg::{congruent_diagonalize, projection, Mat, Rat, Subspace, SymForm};

use super::commutant::commutant;
use super::idempotent::{
    find_splitting_idempotent, IdempotentSearch, SearchBudget, DEFAULT_BUDGET, DEFAULT_SEED,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub budget: usize,
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { budget: DEFAULT_BUDGET, seed: DEFAULT_SEED }
    }
}

/// Why a factor is believed indecomposable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The commutant of the factor is the scalars: a proof.
    CommutantTrivial,
    /// No idempotent was found within the recorded search.
    SearchExhausted(SearchBudget),
    /// No split was attempted (non-isotropic `Ann_R` different from `Ann`).
    NotAttempted,
}

impl Evidence {
    pub fn label(&self) -> &'static str {
        match self {
            Evidence::CommutantTrivial => "COMMUTANT_TRIVIAL",
            Evidence::SearchExhausted(_) => "SEARCH_EXHAUSTED",
            Evidence::NotAttempted => "NOT_ATTEMPTED",
        }
    }
}

/// One split `parent = image ⊕ complement`. `idempotent` is the projection of
/// the whole algebra onto `image` along `complement` plus every other block
/// present at that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitStep {
    pub parent: Subspace,
    pub image: Subspace,
    pub complement: Subspace,
    pub idempotent: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<SplitStep>,
    /// Aligned with `Decomposition::factors`.
    pub evidence: Vec<Evidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Sorted by dimension, then by RREF entries.
    pub factors: Vec<Subspace>,
    /// Maximal nondegenerate subspace of `Ann_R` split off first, if any.
    pub g0: Option<Subspace>,
    pub certificate: Certificate,
    pub orthogonal: bool,
    pub case: CaseTag,
    pub note: Option<String>,
}

impl Decomposition {
    /// Factors followed by `g0`.
    pub fn blocks(&self) -> Vec<&Subspace> {
        self.factors.iter().chain(self.g0.as_ref()).collect()
    }

    /// Re-checks every structural claim and every split step from scratch.
    pub fn verify(&self, alg: &MetricAlgebra) -> Result<()> {
        let n = alg.dim();
        let gamma = alg.gamma();
        let metric = alg.metric();
        let fail = |msg: String| Err(Error::Certificate(msg));

        if self.certificate.evidence.len() != self.factors.len() {
            return fail("evidence list does not match the factor list".into());
        }
        let blocks = self.blocks();
        if blocks.iter().any(|b| b.ambient_dim() != n) {
            return fail("block lives in the wrong ambient space".into());
        }
        if !Subspace::is_direct_sum(&blocks, &Subspace::full(n)) {
            return fail("blocks do not form a direct sum of the algebra".into());
        }
        for (i, b) in blocks.iter().enumerate() {
            if !is_strong_ideal(b, gamma) {
                return fail(format!("block {i} is not a strong ideal"));
            }
            if !b.is_nondegenerate(metric) {
                return fail(format!("block {i} is degenerate"));
            }
        }
        if self.orthogonal != pairwise_orthogonal(&blocks, metric) {
            return fail("orthogonality flag is wrong".into());
        }
        for (i, (f, ev)) in self.factors.iter().zip(&self.certificate.evidence).enumerate() {
            if *ev == Evidence::CommutantTrivial && commutant(alg.restrict(f)?.gamma()).len() != 1
            {
                return fail(format!("factor {i}: commutant is not trivial"));
            }
        }

        let ops = gamma.operators();
        let mut current = vec![Subspace::full(n)];
        for (k, step) in self.certificate.steps.iter().enumerate() {
            let e = &step.idempotent;
            if e.rows() != n || !e.is_square() {
                return fail(format!("step {k}: idempotent has the wrong shape"));
            }
            if &(e * e) != e {
                return fail(format!("step {k}: e² ≠ e"));
            }
            if let Some(i) = ops.iter().position(|op| e * op != op * e) {
                return fail(format!("step {k}: idempotent does not commute with operator {i}"));
            }
            if Subspace::from_rows(&e.transpose()) != step.image {
                return fail(format!("step {k}: image of e is not the claimed subspace"));
            }
            if !step.complement.vectors().all(|v| e.apply(v).iter().all(num_traits::Zero::is_zero)) {
                return fail(format!("step {k}: complement is not in the kernel of e"));
            }
            if !Subspace::is_direct_sum(&[&step.image, &step.complement], &step.parent) {
                return fail(format!("step {k}: image ⊕ complement ≠ parent"));
            }
            for s in [&step.image, &step.complement] {
                if !is_strong_ideal(s, gamma) || !s.is_nondegenerate(metric) {
                    return fail(format!("step {k}: a piece is not a nondegenerate strong ideal"));
                }
            }
            let Some(pos) = current.iter().position(|s| *s == step.parent) else {
                return fail(format!("step {k}: parent is not a current block"));
            };
            current.swap_remove(pos);
            current.push(step.image.clone());
            current.push(step.complement.clone());
        }
        current.sort();
        let mut expected: Vec<Subspace> = blocks.into_iter().cloned().collect();
        expected.sort();
        if current != expected {
            return fail("split steps do not produce the listed blocks".into());
        }
        Ok(())
    }

    /// Builds and checks a decomposition from given blocks, for example a
    /// reference decomposition. Each factor is searched for a further split;
    /// finding one is an error.
    pub fn from_factors(
        alg: &MetricAlgebra,
        factors: Vec<Subspace>,
        g0: Option<Subspace>,
        opts: &DecomposeOptions,
    ) -> Result<Decomposition> {
        let n = alg.dim();
        let metric = alg.metric();
        let gamma = alg.gamma();
        let mut blocks: Vec<&Subspace> = factors.iter().collect();
        blocks.extend(g0.as_ref());
        if blocks.iter().any(|b| b.ambient_dim() != n) {
            return Err(Error::Dimension("factor has the wrong ambient dimension".into()));
        }
        if !Subspace::is_direct_sum(&blocks, &Subspace::full(n)) {
            return Err(Error::Precondition("factors do not form a direct sum".into()));
        }
        for b in &blocks {
            if !is_strong_ideal(b, gamma) {
                return Err(Error::NotStrongIdeal);
            }
            if !b.is_nondegenerate(metric) {
                return Err(Error::DegenerateMetric(format!(" on block {b}")));
            }
        }
        drop(blocks);
        let mut factors = factors;
        factors.sort();

        let mut steps = Vec::new();
        let mut parent = Subspace::full(n);
        let mut rest = Subspace::zero(n);
        if let Some(g0) = &g0 {
            let image = sum_all(n, factors.iter());
            steps.push(SplitStep {
                idempotent: projection(&image, g0)?,
                parent: parent.clone(),
                image: image.clone(),
                complement: g0.clone(),
            });
            parent = image;
            rest = g0.clone();
        }
        for k in 0..factors.len().saturating_sub(1) {
            let image = factors[k].clone();
            let complement = sum_all(n, factors[k + 1..].iter());
            steps.push(SplitStep {
                idempotent: projection(&image, &complement.sum(&rest))?,
                parent: parent.clone(),
                image: image.clone(),
                complement: complement.clone(),
            });
            rest = rest.sum(&image);
            parent = complement;
        }

        let mut evidence = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            let local = alg.restrict(f)?;
            match find_splitting_idempotent(&commutant(local.gamma()), opts.budget, opts.seed) {
                IdempotentSearch::Found(_) => {
                    return Err(Error::Precondition(format!("factor {k} is decomposable")))
                }
                IdempotentSearch::CommutantTrivial => evidence.push(Evidence::CommutantTrivial),
                IdempotentSearch::Exhausted(b) => evidence.push(Evidence::SearchExhausted(b)),
            }
        }
        let mut blocks: Vec<&Subspace> = factors.iter().collect();
        blocks.extend(g0.as_ref());
        let orthogonal = pairwise_orthogonal(&blocks, metric);
        let case = ann_report(gamma, metric).case_tag;
        let d = Decomposition {
            factors,
            g0,
            certificate: Certificate { steps, evidence },
            orthogonal,
            case,
            note: None,
        };
        d.verify(alg)?;
        Ok(d)
    }
}

fn sum_all<'a>(n: usize, it: impl Iterator<Item = &'a Subspace>) -> Subspace {
    it.fold(Subspace::zero(n), |acc, s| acc.sum(s))
}

pub(crate) fn cross_gram(a: &Subspace, b: &Subspace, metric: &SymForm) -> Mat {
    &(a.basis() * metric.gram()) * &b.basis().transpose()
}

fn pairwise_orthogonal(blocks: &[&Subspace], metric: &SymForm) -> bool {
    blocks.iter().enumerate().all(|(i, a)| {
        blocks[i + 1..].iter().all(|b| cross_gram(a, b, metric).is_zero())
    })
}

struct Splitter<'a> {
    alg: &'a MetricAlgebra,
    opts: DecomposeOptions,
    orthogonalize: bool,
    steps: Vec<SplitStep>,
    pending: Vec<Subspace>,
    done: Vec<(Subspace, Evidence)>,
    g0: Option<Subspace>,
}

impl Splitter<'_> {
    fn others(&self) -> Subspace {
        let n = self.alg.dim();
        let mut acc = sum_all(n, self.pending.iter().chain(self.done.iter().map(|(s, _)| s)));
        if let Some(g0) = &self.g0 {
            acc = acc.sum(g0);
        }
        acc
    }

    fn run(&mut self) -> Result<()> {
        let n = self.alg.dim();
        let metric = self.alg.metric();
        let gamma = self.alg.gamma();
        while let Some(part) = self.pending.pop() {
            let local = self.alg.restrict(&part)?;
            let search =
                find_splitting_idempotent(&commutant(local.gamma()), self.opts.budget, self.opts.seed);
            let e = match search {
                IdempotentSearch::Found(e) => e,
                IdempotentSearch::CommutantTrivial => {
                    self.done.push((part, Evidence::CommutantTrivial));
                    continue;
                }
                IdempotentSearch::Exhausted(b) => {
                    self.done.push((part, Evidence::SearchExhausted(b)));
                    continue;
                }
            };
            let to_ambient = |v: &[Rat]| part.basis().left_apply(v);
            let image = Subspace::span(n, e.transpose().row_iter().map(to_ambient));
            let mut complement = Subspace::span(n, e.kernel().row_iter().map(to_ambient));
            if self.orthogonalize {
                let orth = image.orthogonal_complement(metric).intersect(&part);
                if Subspace::is_direct_sum(&[&image, &orth], &part) && is_strong_ideal(&orth, gamma)
                {
                    complement = orth;
                }
            }
            if !image.is_nondegenerate(metric) || !complement.is_nondegenerate(metric) {
                return Err(Error::Certificate(
                    "idempotent split produced a degenerate strong ideal".into(),
                ));
            }
            let rest = self.others();
            self.steps.push(SplitStep {
                idempotent: projection(&image, &complement.sum(&rest))?,
                parent: part,
                image: image.clone(),
                complement: complement.clone(),
            });
            self.pending.push(complement);
            self.pending.push(image);
        }
        Ok(())
    }
}

/// Decomposes the algebra, dispatching on the annihilator case.
pub fn decompose(alg: &MetricAlgebra, opts: &DecomposeOptions) -> Result<Decomposition> {
    let n = alg.dim();
    let metric = alg.metric();
    let report = ann_report(alg.gamma(), metric);
    let mut sp = Splitter {
        alg,
        opts: *opts,
        orthogonalize: report.ann_r_equals_ann,
        steps: Vec::new(),
        pending: Vec::new(),
        done: Vec::new(),
        g0: None,
    };
    let mut note = None;
    match report.case_tag {
        CaseTag::AnnRFull => {
            let d = congruent_diagonalize(metric);
            let lines: Vec<Subspace> =
                d.basis_change.row_iter().map(|r| Subspace::span(n, [r.to_vec()])).collect();
            for k in 0..n.saturating_sub(1) {
                let parent = sum_all(n, lines[k..].iter());
                let complement = sum_all(n, lines[k + 1..].iter());
                let rest = sum_all(n, lines[..k].iter());
                sp.steps.push(SplitStep {
                    idempotent: projection(&lines[k], &complement.sum(&rest))?,
                    parent,
                    image: lines[k].clone(),
                    complement,
                });
            }
            // a line with ∇ = 0 has a one-dimensional commutant
            sp.done = lines.into_iter().map(|l| (l, Evidence::CommutantTrivial)).collect();
        }
        CaseTag::AnnRZero | CaseTag::AnnREqAnn => {
            let rad = report.ann_r.radical(metric);
            let g0 = rad.complement(&report.ann_r)?;
            if g0.is_zero() {
                sp.pending.push(Subspace::full(n));
            } else {
                let rest = g0.orthogonal_complement(metric);
                sp.steps.push(SplitStep {
                    idempotent: projection(&rest, &g0)?,
                    parent: Subspace::full(n),
                    image: rest.clone(),
                    complement: g0.clone(),
                });
                sp.g0 = Some(g0);
                if !rest.is_zero() {
                    sp.pending.push(rest);
                }
            }
            sp.run()?;
        }
        CaseTag::Isotropic => {
            sp.pending.push(Subspace::full(n));
            sp.run()?;
        }
        CaseTag::NonIsotropic => {
            sp.done.push((Subspace::full(n), Evidence::NotAttempted));
            note = Some(
                "Ann_R is neither isotropic nor equal to Ann; no direct decomposition is \
                 claimed, see the filtration command"
                    .to_string(),
            );
        }
    }

    let mut done = sp.done;
    done.sort_by(|a, b| a.0.cmp(&b.0));
    let (factors, evidence): (Vec<_>, Vec<_>) = done.into_iter().unzip();
    let mut blocks: Vec<&Subspace> = factors.iter().collect();
    blocks.extend(sp.g0.as_ref());
    let orthogonal = pairwise_orthogonal(&blocks, metric);
    let d = Decomposition {
        factors,
        g0: sp.g0,
        certificate: Certificate { steps: sp.steps, evidence },
        orthogonal,
        case: report.case_tag,
        note,
    };
    d.verify(alg)?;
    Ok(d)
}
