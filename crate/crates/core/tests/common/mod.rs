//! Independent oracles and helpers shared by the integration tests.
//!
//! Nothing here calls the library's linear algebra or curvature code: the
//! oracles work on plain nested vectors with their own elimination routine.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strongideal::algebra::{AlgebraSpec, MetricAlgebra};
use strongideal::catalog::{catalog_get, catalog_list, CatalogEntry};
use strongideal::linalg::{int, rat, Mat, Rat, Subspace};

pub type V = Vec<Rat>;

pub fn entries() -> Vec<CatalogEntry> {
    catalog_list().into_iter().map(|n| catalog_get(n).unwrap()).collect()
}

pub fn algebra(name: &str) -> MetricAlgebra {
    catalog_get(name).unwrap().algebra().unwrap()
}

/// Structure constants `c[i][j][k]` of the bracket.
pub fn brackets(spec: &AlgebraSpec) -> Vec<Vec<V>> {
    let n = spec.dim();
    (0..n).map(|i| (0..n).map(|j| spec.brackets().vector(i, j).to_vec()).collect()).collect()
}

pub fn gram(spec: &AlgebraSpec) -> Vec<V> {
    spec.metric().gram().to_rows()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn form(g: &[V], x: &[Rat], y: &[Rat]) -> Rat {
    let gy: V = g.iter().map(|row| dot(row, y)).collect();
    dot(x, &gy)
}

/// Solves `a x = b` by Gauss-Jordan elimination; `None` if singular.
pub fn solve(a: &[V], b: &[Rat]) -> Option<V> {
    let n = a.len();
    let mut m: Vec<V> = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = Rat::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[V]) -> usize {
    let mut m: Vec<V> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in 0..cols {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// `Γ[i][j] = ∇_{e_i} e_j` from the Koszul formula.
pub fn koszul(spec: &AlgebraSpec) -> Vec<Vec<V>> {
    let n = spec.dim();
    let c = brackets(spec);
    let g = gram(spec);
    let unit = |i: usize| (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect::<V>();
    let half = rat(1, 2);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // ⟨∇_i e_j, e_l⟩ = ½(⟨[e_i,e_j],e_l⟩ − ⟨[e_j,e_l],e_i⟩ + ⟨[e_l,e_i],e_j⟩)
                    let rhs: V = (0..n)
                        .map(|l| {
                            let t = form(&g, &c[i][j], &unit(l)) - form(&g, &c[j][l], &unit(i))
                                + form(&g, &c[l][i], &unit(j));
                            t * &half
                        })
                        .collect();
                    solve(&g, &rhs).expect("nondegenerate metric")
                })
                .collect()
        })
        .collect()
}

pub fn apply3(t: &[Vec<V>], x: &[Rat], y: &[Rat]) -> V {
    let n = x.len();
    let mut out = vec![int(0); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let s = &x[i] * &y[j];
            for k in 0..n {
                out[k] += &s * &t[i][j][k];
            }
        }
    }
    out
}

pub fn unit(n: usize, i: usize) -> V {
    (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect()
}

fn sub(a: &[Rat], b: &[Rat]) -> V {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `R(e_i,e_j)e_k` evaluated vector by vector.
pub fn curvature_vec(gamma: &[Vec<V>], c: &[Vec<V>], i: usize, j: usize, k: usize) -> V {
    let n = gamma.len();
    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
    let a = apply3(gamma, &ei, &apply3(gamma, &ej, &ek));
    let b = apply3(gamma, &ej, &apply3(gamma, &ei, &ek));
    let d = apply3(gamma, &c[i][j], &ek);
    sub(&sub(&a, &b), &d)
}

/// `ric(e_i,e_j) = Σ_m (R(e_m,e_i)e_j)_m`.
pub fn ricci(gamma: &[Vec<V>], c: &[Vec<V>]) -> Vec<V> {
    let n = gamma.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|m| curvature_vec(gamma, c, m, i, j)[m].clone()).sum()).collect())
        .collect()
}

/// `Tr(ad e_i ad e_j) = Σ_{k,l} c[j][l][k] c[i][k][l]`.
pub fn killing(c: &[Vec<V>]) -> Vec<V> {
    let n = c.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut t = int(0);
                    for k in 0..n {
                        for l in 0..n {
                            t += &c[j][l][k] * &c[i][k][l];
                        }
                    }
                    t
                })
                .collect()
        })
        .collect()
}

pub fn is_flat(gamma: &[Vec<V>], c: &[Vec<V>]) -> bool {
    let n = gamma.len();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| curvature_vec(gamma, c, i, j, k).iter().all(Zero::is_zero))))
}

/// `⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0` on all basis triples.
pub fn ad_invariant(c: &[Vec<V>], g: &[V]) -> bool {
    let n = c.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| (form(g, &c[x][y], &unit(n, z)) + form(g, &unit(n, y), &c[x][z])).is_zero())
        })
    })
}

/// Dimension of `{T : T L = L T for every L}`, by counting the rank of
/// the linear system in the `n²` entries of `T`.
pub fn commutant_dim(ops: &[Vec<V>]) -> usize {
    let n = ops.first().map_or(0, Vec::len);
    let mut rows = Vec::new();
    for l in ops {
        // (T L − L T)[a][b] = Σ_k T[a][k] L[k][b] − L[a][k] T[k][b]
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![int(0); n * n];
                for k in 0..n {
                    row[a * n + k] += &l[k][b];
                    row[k * n + b] -= &l[a][k];
                }
                rows.push(row);
            }
        }
    }
    n * n - rank(&rows)
}

/// Left and right multiplication operators of `Γ`, as matrices acting on
/// column vectors.
pub fn nabla_ops(gamma: &[Vec<V>]) -> Vec<Vec<V>> {
    let n = gamma.len();
    let mut ops = Vec::new();
    for i in 0..n {
        ops.push((0..n).map(|k| (0..n).map(|j| gamma[i][j][k].clone()).collect()).collect());
        ops.push((0..n).map(|k| (0..n).map(|j| gamma[j][i][k].clone()).collect()).collect());
    }
    ops
}

pub fn table(gamma: &strongideal::algebra::ConnectionCoeffs) -> Vec<Vec<V>> {
    let n = gamma.dim();
    (0..n).map(|i| (0..n).map(|j| gamma.vector(i, j).to_vec()).collect()).collect()
}

pub fn to_mat(rows: &[V]) -> Mat {
    Mat::from_rows(rows.first().map_or(0, Vec::len), rows.to_vec())
}

/// Random invertible rational matrix `L U` with unit-diagonal triangular
/// factors and a row permutation.
pub fn random_basis_change(n: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entry = |rng: &mut ChaCha8Rng| {
        let num = rng.gen_range(-3i64..=3);
        let den = rng.gen_range(1i64..=2);
        rat(num, den)
    };
    let mut l = Mat::identity(n);
    let mut u = Mat::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = entry(&mut rng);
            u[(j, i)] = entry(&mut rng);
        }
    }
    let mut p = &l * &u;
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        let (a, b) = (p.row(i).to_vec(), p.row(j).to_vec());
        p.row_mut(i).clone_from_slice(&b);
        p.row_mut(j).clone_from_slice(&a);
    }
    p
}

/// Maps a subspace written in the coordinates of `change_basis(spec, p)`
/// back to the original coordinates.
pub fn map_back(s: &Subspace, p: &Mat) -> Subspace {
    Subspace::span(p.cols(), s.vectors().map(|r| p.left_apply(r)).collect::<Vec<_>>())
}
