//! Confirms the frozen catalog values against the independent oracles.

mod common;

use common::*;
use num_traits::Zero;
use strongideal::algebra::{derive_connection, MetricAlgebra};
use strongideal::catalog::{catalog_get, Fact, Origin};
use strongideal::curvature::{killing_form, ricci};
use strongideal::decompose::commutant;
use strongideal::ideals::{ann, ann_r};
use strongideal::linalg::{int, parse_rat, rat, Mat, Subspace};

#[test]
fn library_connection_matches_koszul_oracle() {
    for e in entries() {
        let alg = e.algebra().unwrap();
        let oracle = koszul(alg.spec());
        assert_eq!(table(alg.gamma()), oracle, "{}", e.name);
    }
}

#[test]
fn library_ricci_and_killing_match_oracle() {
    for e in entries() {
        let alg = e.algebra().unwrap();
        let c = brackets(alg.spec());
        let g = table(alg.gamma());
        assert_eq!(ricci(alg.gamma(), alg.spec()), to_mat(&ricci_oracle(&g, &c)), "{}", e.name);
        assert_eq!(killing_form(alg.spec()), to_mat(&killing(&c)), "{}", e.name);
    }
}

fn ricci_oracle(g: &[Vec<V>], c: &[Vec<V>]) -> Vec<V> {
    common::ricci(g, c)
}

#[test]
fn heisenberg_ricci_is_frozen_value() {
    let spec = catalog_get("heisenberg3_euclid").unwrap().spec;
    let ric = ricci_oracle(&koszul(&spec), &brackets(&spec));
    assert_eq!(to_mat(&ric), Mat::diag(&[rat(-1, 2), rat(-1, 2), rat(1, 2)]));
}

/// Bi-invariant entries: the oracle checks ad-invariance of the metric,
/// then ric = −¼K, which pins the Einstein constants.
#[test]
fn einstein_constants_from_killing_identity() {
    for (name, c) in [("so3_killing_neg", rat(1, 4)), ("sl2_killing", rat(-1, 4)), ("so3_x_so3", rat(1, 4))] {
        let spec = catalog_get(name).unwrap().spec;
        let cb = brackets(&spec);
        let g = gram(&spec);
        assert!(ad_invariant(&cb, &g), "{name}");
        let k = killing(&cb);
        let ric = ricci_oracle(&koszul(&spec), &cb);
        let quarter = rat(-1, 4);
        for i in 0..spec.dim() {
            for j in 0..spec.dim() {
                assert_eq!(ric[i][j], &k[i][j] * &quarter, "{name}");
                assert_eq!(ric[i][j], &g[i][j] * &c, "{name}");
            }
        }
    }
}

#[test]
fn sl2_killing_values() {
    let spec = catalog_get("sl2_killing").unwrap().spec;
    let k = killing(&brackets(&spec));
    assert_eq!(k[0][0], int(8));
    assert_eq!(k[1][2], int(4));
    assert_eq!(to_mat(&k), spec.metric().gram().clone());
}

#[test]
fn so3_metric_is_minus_killing() {
    let spec = catalog_get("so3_killing_neg").unwrap().spec;
    let k = killing(&brackets(&spec));
    assert_eq!(to_mat(&k).scale(&int(-1)), spec.metric().gram().clone());
}

#[test]
fn n23_invariant_metric_is_ricci_flat_not_flat() {
    let spec = catalog_get("n23_quadratic").unwrap().spec;
    let c = brackets(&spec);
    let g = gram(&spec);
    assert!(ad_invariant(&c, &g));
    let gamma = koszul(&spec);
    // bi-invariant: Γ = ½c
    for i in 0..5 {
        for j in 0..5 {
            let half: V = c[i][j].iter().map(|x| x * rat(1, 2)).collect();
            assert_eq!(gamma[i][j], half);
        }
    }
    assert!(ricci_oracle(&gamma, &c).iter().flatten().all(Zero::is_zero));
    assert!(!is_flat(&gamma, &c));
}

#[test]
fn t_star_h3_is_invariant_and_flat() {
    let spec = catalog_get("t_star_h3").unwrap().spec;
    let c = brackets(&spec);
    assert!(ad_invariant(&c, &gram(&spec)));
    assert!(is_flat(&koszul(&spec), &c));
    // 2-step: every double bracket vanishes
    let n = spec.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                assert!(apply3(&c, &unit(n, i), &c[j][k]).iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn e2_connection_by_direct_evaluation() {
    // ∇_u = 0 and ∇_b = ad b
    let spec = catalog_get("e2_flat").unwrap().spec;
    let gamma = koszul(&spec);
    let c = brackets(&spec);
    for u in [1, 2] {
        for j in 0..3 {
            assert!(gamma[u][j].iter().all(Zero::is_zero));
        }
    }
    for j in 0..3 {
        assert_eq!(gamma[0][j], c[0][j]);
    }
    assert!(is_flat(&gamma, &c));
}

#[test]
fn commutant_dimensions() {
    for (name, dim) in [("so3_killing_neg", 1), ("so3_x_so3", 2), ("sl2_killing", 1), ("abelian_2", 4)] {
        let alg = algebra(name);
        let oracle = commutant_dim(&nabla_ops(&koszul(alg.spec())));
        assert_eq!(oracle, dim, "{name}");
        assert_eq!(commutant(alg.gamma()).len(), dim, "{name}");
    }
}

#[test]
fn e2_annihilators() {
    let alg = algebra("e2_flat");
    assert_eq!(ann_r(alg.gamma()), Subspace::span(3, [unit(3, 0)]));
    assert!(ann(alg.gamma()).is_zero());
}

/// The listed brackets alone determine the same connection that the entry
/// ships, with no further nonzero entries.
#[test]
fn remark38_connection_from_brackets_alone() {
    let spec = catalog_get("remark38").unwrap().spec;
    let shipped = spec.connection_override().unwrap().clone();
    let derived = derive_connection(&spec.to_bracket_mode()).unwrap();
    assert_eq!(derived.table(), &shipped);
    assert_eq!(koszul(&spec), table(&derived));
    let nonzero = (0..8)
        .flat_map(|i| (0..8).map(move |j| (i, j)))
        .filter(|&(i, j)| shipped.vector(i, j).iter().any(|x| !x.is_zero()))
        .count();
    assert_eq!(nonzero, 4);
    // bracket-mode analysis gives the same algebra
    let alg = MetricAlgebra::new(spec.to_bracket_mode()).unwrap();
    assert_eq!(alg.gamma().table(), &shipped);
}

#[test]
fn every_oracle_fact_agrees_with_oracles_where_computable() {
    for e in entries() {
        let c = brackets(&e.spec);
        let gamma = koszul(&e.spec);
        let ric = ricci_oracle(&gamma, &c);
        let g = gram(&e.spec);
        for x in e.expected.iter().filter(|x| x.origin != Origin::Trivial) {
            match &x.fact {
                Fact::Flat(f) => assert_eq!(is_flat(&gamma, &c), *f, "{}", e.name),
                Fact::RicciFlat(f) => {
                    assert_eq!(ric.iter().flatten().all(Zero::is_zero), *f, "{}", e.name)
                }
                Fact::Biinvariant(b) => assert_eq!(ad_invariant(&c, &g), *b, "{}", e.name),
                Fact::Einstein(Some(s)) => {
                    let k = parse_rat(s).unwrap();
                    let want: Vec<V> =
                        g.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect();
                    assert_eq!(ric, want, "{}", e.name);
                }
                Fact::RicciDiagonal(d) => {
                    let d: Vec<_> = d.iter().map(|s| parse_rat(s).unwrap()).collect();
                    assert_eq!(to_mat(&ric), Mat::diag(&d), "{}", e.name);
                }
                _ => {}
            }
        }
    }
}
