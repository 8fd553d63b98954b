//! Curvature, Ricci and Killing forms, and metric classification.

use num_traits::Zero;

use crate::algebra::{AlgebraSpec, ConnectionCoeffs, Mode};
use crate::linalg::{Mat, Rat, Subspace};

/// `R(e_i,e_j)e_k = Σ_l r[i][j][k][l] e_l` with
/// `R(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_{[X,Y]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    dim: usize,
    /// Operator `R(e_i,e_j)` on column vectors, indexed `i * dim + j`.
    ops: Vec<Mat>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operator(&self, i: usize, j: usize) -> &Mat {
        &self.ops[i * self.dim + j]
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rat {
        &self.operator(i, j)[(l, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(Mat::is_zero)
    }
}

pub fn curvature_tensor(gamma: &ConnectionCoeffs, spec: &AlgebraSpec) -> CurvatureTensor {
    let n = spec.dim();
    let lefts: Vec<Mat> = (0..n).map(|i| gamma.left(i)).collect();
    let mut ops = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = lefts[i].commutator(&lefts[j]);
            for (m, c) in spec.brackets().vector(i, j).iter().enumerate() {
                if !c.is_zero() {
                    r = &r - &lefts[m].scale(c);
                }
            }
            ops.push(r);
        }
    }
    CurvatureTensor { dim: n, ops }
}

/// `ric(X,Y) = Tr(Z ↦ R(Z,X)Y)`.
pub fn ricci_from(curv: &CurvatureTensor) -> Mat {
    let n = curv.dim();
    let mut ric = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            ric[(i, j)] = (0..n).map(|m| curv.get(m, i, j, m).clone()).sum();
        }
    }
    ric
}

pub fn ricci(gamma: &ConnectionCoeffs, spec: &AlgebraSpec) -> Mat {
    ricci_from(&curvature_tensor(gamma, spec))
}

/// `K(e_i,e_j) = Tr(ad e_i ∘ ad e_j)` from the stored bracket table.
pub fn killing_form(spec: &AlgebraSpec) -> Mat {
    let n = spec.dim();
    let ads: Vec<Mat> = (0..n).map(|i| spec.ad(i)).collect();
    let mut k = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = (&ads[i] * &ads[j]).trace();
            k[(j, i)] = t.clone();
            k[(i, j)] = t;
        }
    }
    k
}

/// `⟨[X,Y],Z⟩ + ⟨Y,[X,Z]⟩ = 0` on all basis triples.
pub fn is_biinvariant(spec: &AlgebraSpec) -> bool {
    let g = spec.metric().gram();
    let n = spec.dim();
    (0..n).all(|i| {
        let ad = spec.ad(i);
        // matrix of (y, z) ↦ ⟨ad_i y, z⟩ is adᵀ G; skew iff adᵀG + G ad = 0
        let m = &ad.transpose() * g;
        (&m + &m.transpose()).is_zero()
    })
}

/// Length of the lower central series, if it reaches zero.
pub fn nilpotency_class(spec: &AlgebraSpec) -> Option<usize> {
    let n = spec.dim();
    let all = Subspace::full(n);
    let mut current = all.clone();
    let mut class = 0;
    while !current.is_zero() {
        let next = Subspace::span(
            n,
            all.vectors()
                .flat_map(|x| current.vectors().map(move |y| (x, y)))
                .map(|(x, y)| spec.bracket(x, y))
                .collect::<Vec<_>>(),
        );
        if next == current {
            return None;
        }
        current = next;
        class += 1;
    }
    Some(class)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub flat: bool,
    pub ricci_flat: bool,
    pub einstein: Option<Rat>,
    pub biinvariant: bool,
    /// Only computed for bracket-mode specs.
    pub nilpotency_class: Option<usize>,
    pub killing: Mat,
    /// True when the Killing form comes from the bracket induced by a
    /// supplied connection.
    pub killing_from_induced_bracket: bool,
    pub ricci: Mat,
    pub ricci_nondegenerate: bool,
}

/// Einstein constant `c` with `ric = c·gram`, if one exists.
pub fn einstein_constant(ric: &Mat, gram: &Mat) -> Option<Rat> {
    let n = gram.rows();
    let (i, j) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !gram[(i, j)].is_zero())?;
    let c = &ric[(i, j)] / &gram[(i, j)];
    (gram.scale(&c) == *ric).then_some(c)
}

pub fn classify(gamma: &ConnectionCoeffs, spec: &AlgebraSpec) -> ClassificationReport {
    let curv = curvature_tensor(gamma, spec);
    let ric = ricci_from(&curv);
    let einstein = einstein_constant(&ric, spec.metric().gram());
    ClassificationReport {
        flat: curv.is_zero(),
        ricci_flat: ric.is_zero(),
        einstein,
        biinvariant: is_biinvariant(spec),
        nilpotency_class: match spec.mode() {
            Mode::Bracket => nilpotency_class(spec),
            Mode::Connection => None,
        },
        killing: killing_form(spec),
        killing_from_induced_bracket: spec.mode() == Mode::Connection,
        ricci_nondegenerate: !ric.det().is_zero(),
        ricci: ric,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{derive_connection, Table3};
    use crate::linalg::rat::{int, rat};
    use crate::linalg::SymForm;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    fn heisenberg() -> AlgebraSpec {
        let mut c = Table3::zeros(3);
        c.set(0, 1, 2, int(1));
        c.set(1, 0, 2, int(-1));
        AlgebraSpec::from_brackets("h3", names(3), c, SymForm::identity(3)).unwrap()
    }

    #[test]
    fn heisenberg_ricci() {
        let spec = heisenberg();
        let g = derive_connection(&spec).unwrap();
        let ric = ricci(&g, &spec);
        assert_eq!(ric, Mat::diag(&[rat(-1, 2), rat(-1, 2), rat(1, 2)]));
        let r = classify(&g, &spec);
        assert_eq!(r.nilpotency_class, Some(2));
        assert!(r.killing.is_zero());
        assert!(!r.flat && r.einstein.is_none() && !r.biinvariant);
    }

    #[test]
    fn abelian_is_flat_einstein_zero() {
        let spec = AlgebraSpec::from_brackets("a", names(2), Table3::zeros(2), SymForm::identity(2))
            .unwrap();
        let g = derive_connection(&spec).unwrap();
        let r = classify(&g, &spec);
        assert!(r.flat && r.ricci_flat && r.biinvariant);
        assert_eq!(r.einstein, Some(int(0)));
        assert_eq!(r.nilpotency_class, Some(1));
    }

    #[test]
    fn einstein_requires_exact_proportionality() {
        let gram = Mat::identity(2);
        assert_eq!(einstein_constant(&Mat::diag(&[int(3), int(3)]), &gram), Some(int(3)));
        assert_eq!(einstein_constant(&Mat::diag(&[int(3), int(2)]), &gram), None);
    }
}
