//! Search for nontrivial idempotents in a commutant algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{coprime_split, minimal_polynomial, Mat, Poly, Rat};

pub const DEFAULT_BUDGET: usize = 64;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Range of the integer coefficients used for random combinations.
const RANDOM_COEFF: i64 = 5;

/// What was tried before giving up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub commutant_dim: usize,
    pub basis_tried: usize,
    pub pairs_tried: usize,
    pub random_tried: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdempotentSearch {
    Found(Mat),
    /// The commutant is one-dimensional, so only `0` and `id` are idempotent.
    CommutantTrivial,
    Exhausted(SearchBudget),
}

/// Idempotent `e ∉ {0, id}` that is a polynomial in `t`, if the minimal
/// polynomial of `t` has two coprime factors.
pub fn idempotent_from(t: &Mat) -> Option<Mat> {
    if is_scalar_plus_nilpotent(t) {
        return None;
    }
    let factors = coprime_split(&minimal_polynomial(t));
    if factors.len() < 2 {
        return None;
    }
    let f = &factors[0];
    let h = factors[1..].iter().fold(Poly::one(), |acc, p| acc.mul(p));
    let (g, u, _) = f.ext_gcd(&h);
    debug_assert!(g == Poly::one());
    let e = u.mul(f).eval_mat(t);
    is_proper_idempotent(&e).then_some(e)
}

/// `t − (tr t / n)·id` nilpotent means the minimal polynomial is a power of
/// a linear factor. Cheap to test, and the common case in local commutants.
fn is_scalar_plus_nilpotent(t: &Mat) -> bool {
    let n = t.rows();
    if n == 0 {
        return true;
    }
    let shift = t.trace() / Rat::from_integer((n as i64).into());
    let mut m = t.clone();
    for i in 0..n {
        m[(i, i)] -= &shift;
    }
    // square until the exponent reaches n
    let mut k = 1;
    while k < n && !m.is_zero() {
        m = &m * &m;
        k *= 2;
    }
    m.is_zero()
}

pub fn is_proper_idempotent(e: &Mat) -> bool {
    let n = e.rows();
    &(e * e) == e && !e.is_zero() && *e != Mat::identity(n)
}

/// Tries each basis element, then pairwise sums and differences, then
/// `budget` seeded random integer combinations.
pub fn find_splitting_idempotent(basis: &[Mat], budget: usize, seed: u64) -> IdempotentSearch {
    if basis.len() <= 1 {
        return IdempotentSearch::CommutantTrivial;
    }
    let mut tried = SearchBudget {
        commutant_dim: basis.len(),
        basis_tried: 0,
        pairs_tried: 0,
        random_tried: 0,
        seed,
    };
    for t in basis {
        tried.basis_tried += 1;
        if let Some(e) = idempotent_from(t) {
            return IdempotentSearch::Found(e);
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            tried.pairs_tried += 1;
            for t in [&basis[i] + &basis[j], &basis[i] - &basis[j]] {
                if let Some(e) = idempotent_from(&t) {
                    return IdempotentSearch::Found(e);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = basis[0].rows();
    for _ in 0..budget {
        tried.random_tried += 1;
        let mut t = Mat::zeros(n, n);
        for b in basis {
            let c = rng.gen_range(-RANDOM_COEFF..=RANDOM_COEFF);
            if c != 0 {
                t = &t + &b.scale(&Rat::from_integer(c.into()));
            }
        }
        if let Some(e) = idempotent_from(&t) {
            return IdempotentSearch::Found(e);
        }
    }
    IdempotentSearch::Exhausted(tried)
}
