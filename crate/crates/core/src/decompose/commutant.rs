//! The commutant of the left and right multiplication operators.

use num_traits::Zero;

use crate::algebra::ConnectionCoeffs;
use crate::linalg::rat::vec_is_zero;
use crate::linalg::{Echelon, Mat, Rat};

/// Basis of `{T : T L_i = L_i T, T R_j = R_j T}` where `L_i = ∇_{e_i}·` and
/// `R_j = ∇_·e_j`.
pub fn commutant(gamma: &ConnectionCoeffs) -> Vec<Mat> {
    commutant_of(&gamma.operators(), gamma.dim())
}

/// Basis of the centralizer of `ops` in `End(Q^n)`.
pub fn commutant_of(ops: &[Mat], n: usize) -> Vec<Mat> {
    let unknowns = n * n;
    let mut ech = Echelon::new(unknowns);
    // scalars always commute, so rank n²-1 means the answer is known
    let full_rank = unknowns.saturating_sub(1);
    // commuting with a spanning set is enough
    let mut span = Echelon::new(unknowns);
    let independent: Vec<&Mat> =
        ops.iter().filter(|op| span.push(op.to_rows().concat())).collect();
    'outer: for op in independent {
        for a in 0..n {
            for c in 0..n {
                // (T·op − op·T)[a][c] = Σ_b t[a][b] op[b][c] − op[a][b] t[b][c]
                let mut row = vec![Rat::zero(); unknowns];
                for b in 0..n {
                    row[a * n + b] += &op[(b, c)];
                    row[b * n + c] -= &op[(a, b)];
                }
                if !vec_is_zero(&row) {
                    ech.push(row);
                    if ech.rank() == full_rank {
                        break 'outer;
                    }
                }
            }
        }
    }
    ech.kernel()
        .row_iter()
        .map(|r| Mat::from_rows(n, r.chunks(n).map(<[Rat]>::to_vec).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_operators_gives_everything() {
        assert_eq!(commutant_of(&[], 2).len(), 4);
    }

    #[test]
    fn single_nilpotent_block() {
        // centralizer of a 2x2 Jordan block is {a I + b N}
        let n = Mat::from_ints(&[&[0, 1], &[0, 0]]);
        let c = commutant_of(std::slice::from_ref(&n), 2);
        assert_eq!(c.len(), 2);
        for t in &c {
            assert_eq!(&(t * &n), &(&n * t));
        }
    }
}
