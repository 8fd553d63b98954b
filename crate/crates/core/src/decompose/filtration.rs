//! Chain of nested nondegenerate strong ideals with abelian quotients.

use crate::algebra::MetricAlgebra;
use crate::error::{Error, Result};
use crate::ideals::{ann_r, is_strong_ideal};
use crate::linalg::{Rat, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationChain {
    /// `g = chain[0] ⊃ chain[1] ⊃ …`, in ambient coordinates.
    pub chain: Vec<Subspace>,
    /// `h_blocks[i]` is the nondegenerate part of `Ann_R(chain[i])`
    /// removed to obtain `chain[i + 1]`.
    pub h_blocks: Vec<Subspace>,
    /// Whether `Ann_R` of the last term is isotropic (otherwise the last
    /// term has `Ann_R` equal to itself and splits into lines).
    pub last_isotropic: bool,
}

/// Repeatedly removes a maximal nondegenerate subspace of `Ann_R` and passes
/// to its orthogonal complement, until `Ann_R` is isotropic or everything.
pub fn filtration(alg: &MetricAlgebra) -> Result<FiltrationChain> {
    let n = alg.dim();
    let mut current = alg.clone();
    let mut current_ambient = Subspace::full(n);
    let mut chain = vec![current_ambient.clone()];
    let mut h_blocks = Vec::new();
    loop {
        let m = current.dim();
        let local_metric = current.metric();
        let a = ann_r(current.gamma());
        if a.is_isotropic(local_metric) {
            return Ok(FiltrationChain { chain, h_blocks, last_isotropic: true });
        }
        if a.is_full() {
            return Ok(FiltrationChain { chain, h_blocks, last_isotropic: false });
        }
        let h = a.radical(local_metric).complement(&a)?;
        let next = h.orthogonal_complement(local_metric);

        let fail = |what: &str| Err(Error::Certificate(format!("filtration step {}: {what}", chain.len())));
        if !is_strong_ideal(&next, current.gamma()) {
            return fail("next term is not a strong ideal");
        }
        let spec = current.spec();
        let basis: Vec<Vec<Rat>> = (0..m).map(|i| crate::linalg::rat::unit_vec(m, i)).collect();
        let abelian_quotient =
            basis.iter().all(|x| basis.iter().all(|y| next.contains(&spec.bracket(x, y))));
        if !abelian_quotient {
            return fail("quotient is not abelian");
        }

        let to_ambient = |s: &Subspace| {
            Subspace::span(n, s.vectors().map(|v| current_ambient.basis().left_apply(v)))
        };
        let next_ambient = to_ambient(&next);
        h_blocks.push(to_ambient(&h));
        current = current.restrict(&next)?;
        current_ambient = next_ambient;
        chain.push(current_ambient.clone());
    }
}
