//! Metric Lie algebra specifications and their Levi-Civita connections.
//!
//! An [`AlgebraSpec`] holds structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`
//! and a Gram matrix. In connection mode the connection table is given
//! directly and the bracket is its antisymmetrization. A [`MetricAlgebra`]
//! pairs a checked spec with its connection and is what the analysis
//! modules work on.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::mat::check_square;
use crate::linalg::rat::{half, vec_axpy, vec_is_zero, vec_sub};
use crate::linalg::{Mat, Rat, Subspace, SymForm};

/// Dense `n × n × n` table indexed `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table3 {
    dim: usize,
    data: Vec<Rat>,
}

impl Table3 {
    pub fn zeros(dim: usize) -> Self {
        Table3 { dim, data: vec![Rat::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        self.data[(i * self.dim + j) * self.dim + k] = v;
    }

    /// The vector `Σ_k t[i][j][k] e_k`.
    pub fn vector(&self, i: usize, j: usize) -> &[Rat] {
        let start = (i * self.dim + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    pub fn set_vector(&mut self, i: usize, j: usize, v: &[Rat]) {
        let start = (i * self.dim + j) * self.dim;
        self.data[start..start + self.dim].clone_from_slice(v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Bilinear extension `Σ_{ij} x_i y_j t[i][j][·]`.
    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vec_axpy(&mut out, &(xi * yj), self.vector(i, j));
            }
        }
        out
    }

    /// `t[i][j] - t[j][i]`
    pub fn antisymmetrized(&self) -> Table3 {
        let mut out = Table3::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set_vector(i, j, &vec_sub(self.vector(i, j), self.vector(j, i)));
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Table3 {
        Table3 { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Bracket,
    Connection,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Bracket => "bracket",
            Mode::Connection => "connection",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    basis_names: Vec<String>,
    brackets: Table3,
    metric: SymForm,
    mode: Mode,
    connection_override: Option<Table3>,
}

impl AlgebraSpec {
    pub fn from_brackets(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: Table3,
        metric: SymForm,
    ) -> Result<Self> {
        check_shape(&basis_names, brackets.dim(), &metric)?;
        Ok(AlgebraSpec {
            name: name.into(),
            basis_names,
            brackets,
            metric,
            mode: Mode::Bracket,
            connection_override: None,
        })
    }

    /// Connection mode: the bracket is defined as `∇_X Y − ∇_Y X`.
    pub fn from_connection(
        name: impl Into<String>,
        basis_names: Vec<String>,
        connection: Table3,
        metric: SymForm,
    ) -> Result<Self> {
        check_shape(&basis_names, connection.dim(), &metric)?;
        Ok(AlgebraSpec {
            name: name.into(),
            basis_names,
            brackets: connection.antisymmetrized(),
            metric,
            mode: Mode::Connection,
            connection_override: Some(connection),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    pub fn brackets(&self) -> &Table3 {
        &self.brackets
    }

    pub fn metric(&self) -> &SymForm {
        &self.metric
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn connection_override(&self) -> Option<&Table3> {
        self.connection_override.as_ref()
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.brackets.apply(x, y)
    }

    /// `ad e_i` as a matrix on column vectors: `(ad_i)[k][j] = c[i][j][k]`.
    pub fn ad(&self, i: usize) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] = self.brackets.get(i, j, k).clone();
            }
        }
        m
    }

    /// Same structure with the metric replaced.
    pub fn with_metric(&self, metric: SymForm) -> Result<Self> {
        check_shape(&self.basis_names, self.dim(), &metric)?;
        Ok(AlgebraSpec { metric, ..self.clone() })
    }

    /// The same algebra in bracket mode, using the stored (possibly induced)
    /// bracket table.
    pub fn to_bracket_mode(&self) -> Self {
        AlgebraSpec { mode: Mode::Bracket, connection_override: None, ..self.clone() }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.brackets
                    .vector(i, j)
                    .iter()
                    .zip(self.brackets.vector(j, i))
                    .all(|(a, b)| (a + b).is_zero())
            })
        })
    }
}

fn check_shape(names: &[String], dim: usize, metric: &SymForm) -> Result<()> {
    if names.len() != dim {
        return Err(Error::Dimension(format!(
            "{} basis names for a {dim}-dimensional table",
            names.len()
        )));
    }
    check_square(metric.gram(), dim, "metric")?;
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::InvalidSpec(format!("duplicate basis name {n:?}")));
        }
    }
    Ok(())
}

/// Levi-Civita connection table: `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionCoeffs {
    gamma: Table3,
}

impl ConnectionCoeffs {
    /// Wraps a raw table without checking it; see
    /// [`check_torsion_and_compatibility`].
    pub fn from_table(gamma: Table3) -> Self {
        ConnectionCoeffs { gamma }
    }

    pub fn table(&self) -> &Table3 {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rat {
        self.gamma.get(i, j, k)
    }

    /// `∇_{e_i} e_j`
    pub fn vector(&self, i: usize, j: usize) -> &[Rat] {
        self.gamma.vector(i, j)
    }

    /// `∇_x y`, bilinear in both arguments.
    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.gamma.apply(x, y)
    }

    /// `L_i = ∇_{e_i} ·` on column vectors.
    pub fn left(&self, i: usize) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] = self.gamma.get(i, j, k).clone();
            }
        }
        m
    }

    /// `R_j = ∇_· e_j` on column vectors.
    pub fn right(&self, j: usize) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for k in 0..n {
                m[(k, i)] = self.gamma.get(i, j, k).clone();
            }
        }
        m
    }

    /// Operator `y ↦ ∇_x y`.
    pub fn left_by(&self, x: &[Rat]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = &m + &self.left(i).scale(xi);
            }
        }
        m
    }

    /// Operator `x ↦ ∇_x y`.
    pub fn right_by(&self, y: &[Rat]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                m = &m + &self.right(j).scale(yj);
            }
        }
        m
    }

    /// All `2n` multiplication operators `L_0..L_{n-1}, R_0..R_{n-1}`.
    pub fn operators(&self) -> Vec<Mat> {
        let n = self.dim();
        (0..n).map(|i| self.left(i)).chain((0..n).map(|j| self.right(j))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero()
    }
}

/// `∇_x y` for arbitrary coordinate vectors.
pub fn nabla_apply(gamma: &ConnectionCoeffs, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    gamma.apply(x, y)
}

/// Solves the Koszul identity
/// `⟨∇_{e_i}e_j, e_k⟩ = ½(⟨[e_i,e_j],e_k⟩ − ⟨[e_j,e_k],e_i⟩ + ⟨[e_k,e_i],e_j⟩)`
/// against the Gram matrix. Uses the stored bracket table, which in
/// connection mode is the induced one.
pub fn derive_connection(spec: &AlgebraSpec) -> Result<ConnectionCoeffs> {
    let n = spec.dim();
    let g = spec.metric().gram();
    let ginv = g
        .inverse()
        .ok_or_else(|| Error::DegenerateMetric(format!(" (spec {:?})", spec.name())))?;
    let c = spec.brackets();
    // lowered[a][b][m] = ⟨[e_a, e_b], e_m⟩
    let mut lowered = Table3::zeros(n);
    for a in 0..n {
        for b in 0..n {
            lowered.set_vector(a, b, &g.left_apply(c.vector(a, b)));
        }
    }
    let h = half();
    let mut gamma = Table3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let rhs: Vec<Rat> = (0..n)
                .map(|k| {
                    (lowered.get(i, j, k) - lowered.get(j, k, i) + lowered.get(k, i, j)) * &h
                })
                .collect();
            gamma.set_vector(i, j, &ginv.apply(&rhs));
        }
    }
    Ok(ConnectionCoeffs { gamma })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionDefect {
    /// `∇_{e_i}e_j − ∇_{e_j}e_i − [e_i,e_j]` is this nonzero vector.
    Torsion { i: usize, j: usize, defect: Vec<Rat> },
    /// `⟨∇_{e_i}e_j, e_k⟩ + ⟨e_j, ∇_{e_i}e_k⟩` is this nonzero value.
    Compatibility { i: usize, j: usize, k: usize, defect: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionCheck {
    pub defects: Vec<ConnectionDefect>,
}

impl ConnectionCheck {
    pub fn is_ok(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Checks torsion-freeness and metric compatibility on all basis triples.
pub fn check_torsion_and_compatibility(
    gamma: &ConnectionCoeffs,
    spec: &AlgebraSpec,
) -> ConnectionCheck {
    let n = spec.dim();
    let mut defects = Vec::new();
    if gamma.dim() != n {
        defects.push(ConnectionDefect::Torsion { i: 0, j: 0, defect: Vec::new() });
        return ConnectionCheck { defects };
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = vec_sub(
                &vec_sub(gamma.vector(i, j), gamma.vector(j, i)),
                spec.brackets().vector(i, j),
            );
            if !vec_is_zero(&d) {
                defects.push(ConnectionDefect::Torsion { i, j, defect: d });
            }
        }
        // torsion on the diagonal: ∇_{e_i}e_i − ∇_{e_i}e_i − [e_i,e_i]
        if !vec_is_zero(spec.brackets().vector(i, i)) {
            defects.push(ConnectionDefect::Torsion {
                i,
                j: i,
                defect: spec.brackets().vector(i, i).iter().map(|x| -x).collect(),
            });
        }
    }
    let g = spec.metric().gram();
    for i in 0..n {
        // lowered[j][k] = ⟨∇_{e_i}e_j, e_k⟩
        let lowered: Vec<Vec<Rat>> = (0..n).map(|j| g.left_apply(gamma.vector(i, j))).collect();
        for j in 0..n {
            for k in j..n {
                let d = &lowered[j][k] + &lowered[k][j];
                if !d.is_zero() {
                    defects.push(ConnectionDefect::Compatibility { i, j, k, defect: d });
                }
            }
        }
    }
    ConnectionCheck { defects }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
    pub defect: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub antisymmetry_ok: bool,
    pub jacobi_ok: bool,
    pub metric_symmetric_ok: bool,
    pub metric_nondegenerate_ok: bool,
    pub jacobi_failures: Vec<JacobiFailure>,
}

impl ValidationReport {
    /// Everything except Jacobi, which is only a warning.
    pub fn is_usable(&self) -> bool {
        self.antisymmetry_ok && self.metric_symmetric_ok && self.metric_nondegenerate_ok
    }
}

pub fn validate(spec: &AlgebraSpec) -> ValidationReport {
    let n = spec.dim();
    let mut jacobi_failures = Vec::new();
    let unit = |i: usize| crate::linalg::rat::unit_vec(n, i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                let mut d = spec.bracket(&spec.bracket(&ei, &ej), &ek);
                let t2 = spec.bracket(&spec.bracket(&ej, &ek), &ei);
                let t3 = spec.bracket(&spec.bracket(&ek, &ei), &ej);
                vec_axpy(&mut d, &Rat::from_integer(1.into()), &t2);
                vec_axpy(&mut d, &Rat::from_integer(1.into()), &t3);
                if !vec_is_zero(&d) {
                    jacobi_failures.push(JacobiFailure { triple: (i, j, k), defect: d });
                }
            }
        }
    }
    ValidationReport {
        antisymmetry_ok: spec.is_antisymmetric(),
        jacobi_ok: jacobi_failures.is_empty(),
        metric_symmetric_ok: spec.metric().gram().is_symmetric(),
        metric_nondegenerate_ok: spec.metric().is_nondegenerate(),
        jacobi_failures,
    }
}

/// A checked spec together with its Levi-Civita connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricAlgebra {
    spec: AlgebraSpec,
    gamma: ConnectionCoeffs,
}

impl MetricAlgebra {
    /// Requires an antisymmetric bracket and a nondegenerate metric. In
    /// connection mode the supplied table must be torsion-free and
    /// metric-compatible. Jacobi is not required.
    pub fn new(spec: AlgebraSpec) -> Result<Self> {
        if !spec.is_antisymmetric() {
            return Err(Error::InvalidSpec("bracket table is not antisymmetric".into()));
        }
        if !spec.metric().is_nondegenerate() {
            return Err(Error::DegenerateMetric(format!(" (spec {:?})", spec.name())));
        }
        let gamma = match spec.connection_override() {
            None => derive_connection(&spec)?,
            Some(table) => {
                let gamma = ConnectionCoeffs::from_table(table.clone());
                let check = check_torsion_and_compatibility(&gamma, &spec);
                if !check.is_ok() {
                    return Err(Error::InvalidSpec(format!(
                        "supplied connection is not metric-compatible ({} defects)",
                        check.defects.len()
                    )));
                }
                gamma
            }
        };
        Ok(MetricAlgebra { spec, gamma })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn gamma(&self) -> &ConnectionCoeffs {
        &self.gamma
    }

    pub fn metric(&self) -> &SymForm {
        self.spec.metric()
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn restrict(&self, h: &Subspace) -> Result<MetricAlgebra> {
        let (spec, gamma) = restrict(&self.spec, &self.gamma, h)?;
        Ok(MetricAlgebra { spec, gamma })
    }
}

/// Induced structure on a strong ideal with nondegenerate restricted metric,
/// written in the RREF basis of `h`.
///
/// Basis vector `r` is named after the original basis vector at its pivot,
/// with a prime appended when the row is not exactly that vector.
pub fn restrict(
    spec: &AlgebraSpec,
    gamma: &ConnectionCoeffs,
    h: &Subspace,
) -> Result<(AlgebraSpec, ConnectionCoeffs)> {
    if h.ambient_dim() != spec.dim() {
        return Err(Error::Dimension("subspace lives in a different ambient space".into()));
    }
    if !crate::ideals::is_strong_ideal(h, gamma) {
        return Err(Error::NotStrongIdeal);
    }
    let basis = h.basis();
    let metric = SymForm::new(spec.metric().restricted_gram(basis))?;
    if !metric.is_nondegenerate() {
        return Err(Error::DegenerateMetric(" on the restricted subspace".into()));
    }
    let m = h.dim();
    let mut brackets = Table3::zeros(m);
    let mut table = Table3::zeros(m);
    for a in 0..m {
        for b in 0..m {
            let (x, y) = (basis.row(a), basis.row(b));
            let nab = h.coordinates(&gamma.apply(x, y)).ok_or(Error::NotStrongIdeal)?;
            let br = h.coordinates(&spec.bracket(x, y)).ok_or(Error::NotStrongIdeal)?;
            table.set_vector(a, b, &nab);
            brackets.set_vector(a, b, &br);
        }
    }
    let names = h
        .pivots()
        .iter()
        .zip(basis.row_iter())
        .map(|(&p, row)| {
            let pure = row.iter().enumerate().all(|(i, x)| if i == p { true } else { x.is_zero() });
            if pure {
                spec.basis_names()[p].clone()
            } else {
                format!("{}'", spec.basis_names()[p])
            }
        })
        .collect();
    let name = format!("{}|{}", spec.name(), m);
    let restricted = match spec.mode() {
        Mode::Bracket => AlgebraSpec::from_brackets(name, names, brackets, metric)?,
        Mode::Connection => AlgebraSpec::from_connection(name, names, table.clone(), metric)?,
    };
    Ok((restricted, ConnectionCoeffs { gamma: table }))
}

/// Rewrites the structure in a new basis whose vectors are the rows of `p`
/// (in old coordinates). Basis names are kept.
pub fn change_basis(spec: &AlgebraSpec, p: &Mat) -> Result<AlgebraSpec> {
    let n = spec.dim();
    check_square(p, n, "basis change")?;
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Precondition("basis change is singular".into()))?;
    let transform = |t: &Table3| {
        let mut out = Table3::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let v = t.apply(p.row(a), p.row(b));
                out.set_vector(a, b, &pinv.left_apply(&v));
            }
        }
        out
    };
    let metric = SymForm::new(spec.metric().restricted_gram(p))?;
    let names = spec.basis_names().to_vec();
    match spec.connection_override() {
        None => AlgebraSpec::from_brackets(spec.name(), names, transform(spec.brackets()), metric),
        Some(t) => AlgebraSpec::from_connection(spec.name(), names, transform(t), metric),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::{int, ints};

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    fn so3() -> AlgebraSpec {
        let mut c = Table3::zeros(3);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c.set(i, j, k, int(1));
            c.set(j, i, k, int(-1));
        }
        AlgebraSpec::from_brackets("so3", names(3), c, SymForm::identity(3)).unwrap()
    }

    #[test]
    fn abelian_connection_vanishes() {
        let spec =
            AlgebraSpec::from_brackets("ab", names(2), Table3::zeros(2), SymForm::identity(2))
                .unwrap();
        assert!(derive_connection(&spec).unwrap().is_zero());
        let r = validate(&spec);
        assert!(r.antisymmetry_ok && r.jacobi_ok && r.metric_nondegenerate_ok);
    }

    #[test]
    fn so3_bi_invariant_connection_is_half_bracket() {
        let spec = so3();
        assert!(validate(&spec).jacobi_ok);
        let g = derive_connection(&spec).unwrap();
        assert_eq!(g.table(), &spec.brackets().scale(&half()));
        assert!(check_torsion_and_compatibility(&g, &spec).is_ok());
    }

    #[test]
    fn perturbed_connection_is_rejected() {
        let spec = so3();
        let g = derive_connection(&spec).unwrap();
        let mut t = g.table().clone();
        let v = t.get(0, 1, 2) + int(1);
        t.set(0, 1, 2, v);
        let check = check_torsion_and_compatibility(&ConnectionCoeffs::from_table(t), &spec);
        assert!(!check.is_ok());
        assert!(check
            .defects
            .iter()
            .any(|d| matches!(d, ConnectionDefect::Torsion { i: 0, j: 1, .. })));
    }

    #[test]
    fn degenerate_metric_is_an_error() {
        let spec = AlgebraSpec::from_brackets(
            "deg",
            names(2),
            Table3::zeros(2),
            SymForm::new(Mat::diag(&[int(1), int(0)])).unwrap(),
        )
        .unwrap();
        assert!(matches!(derive_connection(&spec), Err(Error::DegenerateMetric(_))));
        assert!(!validate(&spec).metric_nondegenerate_ok);
    }

    #[test]
    fn nabla_apply_basics() {
        let spec = so3();
        let g = derive_connection(&spec).unwrap();
        assert_eq!(nabla_apply(&g, &ints(&[0, 0, 0]), &ints(&[1, 2, 3])), ints(&[0, 0, 0]));
        assert_eq!(nabla_apply(&g, &ints(&[1, 0, 0]), &ints(&[0, 1, 0])), g.vector(0, 1));
    }

    #[test]
    fn restrict_to_full_space_is_identity() {
        let alg = MetricAlgebra::new(so3()).unwrap();
        let r = alg.restrict(&Subspace::full(3)).unwrap();
        assert_eq!(r.gamma(), alg.gamma());
        assert_eq!(r.spec().basis_names(), alg.spec().basis_names());
    }

    #[test]
    fn change_basis_round_trip() {
        let spec = so3();
        let p = Mat::from_ints(&[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]]);
        let q = change_basis(&spec, &p).unwrap();
        let back = change_basis(&q, &p.inverse().unwrap()).unwrap();
        assert_eq!(back.brackets(), spec.brackets());
        assert_eq!(back.metric(), spec.metric());
    }
}
