mod common;

use common::*;
use strongideal::algebra::{change_basis, MetricAlgebra};
use strongideal::catalog::catalog_get;
use strongideal::decompose::{
    build_strong_isometry, compare_decompositions, decompose, filtration, flat_riemannian_structure,
    DecomposeOptions, Decomposition, Evidence, FlatStructure, IsometryOutcome,
};
use strongideal::format::parse_spec;
use strongideal::ideals::is_strong_ideal;
use strongideal::linalg::{int, Mat, Rat, Subspace};

fn opts() -> DecomposeOptions {
    DecomposeOptions::default()
}

fn abelian_1_4() -> MetricAlgebra {
    let text = r#"{"name": "abelian_1_4", "dim": 2, "basis": ["e1", "e2"], "brackets": [],
        "metric": [{"x": "e1", "y": "e1", "value": "1"}, {"x": "e2", "y": "e2", "value": "4"}]}"#;
    MetricAlgebra::new(parse_spec(text).unwrap()).unwrap()
}

fn lines(alg: &MetricAlgebra, vs: &[[i64; 2]]) -> Decomposition {
    let factors = vs.iter().map(|v| Subspace::span(2, [vec![int(v[0]), int(v[1])]])).collect();
    Decomposition::from_factors(alg, factors, None, &opts()).unwrap()
}

fn sorted(mut v: Vec<Subspace>) -> Vec<Subspace> {
    v.sort_by_key(|s| format!("{s:?}"));
    v
}

fn assert_strong_isometry(m: &Mat, alg: &MetricAlgebra) {
    let n = alg.dim();
    let cols: Vec<Vec<Rat>> = (0..n).map(|j| m.col(j)).collect();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(alg.metric().eval(&cols[i], &cols[j]), alg.metric().gram()[(i, j)]);
            assert_eq!(m.apply(alg.gamma().vector(i, j)), alg.gamma().apply(&cols[i], &cols[j]));
        }
    }
}

#[test]
fn so3_pair_survives_factor_mixing_basis_change() {
    let alg = algebra("so3_x_so3");
    // new basis a_i + b_i, a_i - b_i mixes the two factors
    let mut p = Mat::zeros(6, 6);
    for i in 0..3 {
        p[(i, i)] = int(1);
        p[(i, i + 3)] = int(1);
        p[(i + 3, i)] = int(1);
        p[(i + 3, i + 3)] = int(-1);
    }
    let moved = MetricAlgebra::new(change_basis(alg.spec(), &p).unwrap()).unwrap();
    let d = decompose(&moved, &opts()).unwrap();
    let got = sorted(d.factors.iter().map(|f| map_back(f, &p)).collect());
    let want = sorted(vec![Subspace::coordinate(6, &[0, 1, 2]), Subspace::coordinate(6, &[3, 4, 5])]);
    assert_eq!(got, want);
    assert!(d.orthogonal);
}

#[test]
fn remark38_splits_under_every_basis_change() {
    for name in ["remark38", "remark38_alt"] {
        let alg = algebra(name);
        for seed in 0..3 {
            let p = random_basis_change(8, 500 + seed);
            let moved = MetricAlgebra::new(change_basis(alg.spec(), &p).unwrap()).unwrap();
            let d = decompose(&moved, &DecomposeOptions { seed, ..opts() }).unwrap();
            assert_eq!(d.factors.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![4, 4], "{name} {seed}");
            d.verify(&moved).unwrap();
        }
    }
}

#[test]
fn line_isometry_with_square_norm_ratio() {
    let alg = abelian_1_4();
    let a = lines(&alg, &[[3, 2], [8, -3]]);
    let b = lines(&alg, &[[1, 0], [0, 1]]);
    match build_strong_isometry(&a, &b, &alg).unwrap() {
        IsometryOutcome::Isometry(iso) => {
            assert_strong_isometry(&iso.map, &alg);
            for (j, &k) in iso.matching.iter().enumerate() {
                let img = Subspace::span(2, a.factors[j].vectors().map(|v| iso.map.apply(v)).collect::<Vec<_>>());
                assert_eq!(img, b.factors[k]);
            }
        }
        other => panic!("expected an isometry, got {other:?}"),
    }
}

#[test]
fn line_isometry_unsupported_without_rational_scale() {
    let alg = abelian_1_4();
    let a = lines(&alg, &[[1, 1], [4, -1]]);
    let b = lines(&alg, &[[1, 0], [0, 1]]);
    assert!(matches!(build_strong_isometry(&a, &b, &alg).unwrap(), IsometryOutcome::Unsupported(_)));
}

#[test]
fn n23_plus_line_isometry_to_listed() {
    let e = catalog_get("n23_plus_line").unwrap();
    let alg = e.algebra().unwrap();
    let computed = decompose(&alg, &opts()).unwrap();
    let listed = e.listed_decomposition(&opts()).unwrap().unwrap();
    match build_strong_isometry(&computed, &listed, &alg).unwrap() {
        IsometryOutcome::Isometry(iso) => assert_strong_isometry(&iso.map, &alg),
        other => panic!("expected an isometry, got {other:?}"),
    }
}

#[test]
fn identical_decompositions_give_identity() {
    for name in ["so3_x_so3", "n23_plus_line", "abelian_2"] {
        let alg = algebra(name);
        let d = decompose(&alg, &opts()).unwrap();
        let n = alg.dim();
        let report = compare_decompositions(&d, &d, &alg).unwrap();
        assert_eq!(report.matching, (0..d.factors.len()).collect::<Vec<_>>(), "{name}");
        assert!(report.automorphism && report.strong_homomorphism_ok, "{name}");
        if let IsometryOutcome::Isometry(iso) = build_strong_isometry(&d, &d, &alg).unwrap() {
            assert_eq!(iso.map, Mat::identity(n), "{name}");
        } else {
            panic!("{name}: no isometry");
        }
    }
}

#[test]
fn abelian_flat_split_is_all_annihilator() {
    let alg = algebra("abelian_3");
    match flat_riemannian_structure(&alg).unwrap() {
        FlatStructure::Split(s) => {
            assert!(s.b.is_zero() && s.derived.is_zero());
            assert!(s.ann.is_full());
        }
        other => panic!("{other:?}"),
    }
    let f = filtration(&alg).unwrap();
    // Ann_R is everything, so the chain stops at once and splits into lines
    assert_eq!(f.chain, vec![Subspace::full(3)]);
    assert!(!f.last_isotropic);
}

#[test]
fn flat_split_needs_flat_riemannian() {
    for name in ["so3_killing_neg", "abelian_lorentz2", "heisenberg3_euclid"] {
        let alg = algebra(name);
        assert!(matches!(flat_riemannian_structure(&alg).unwrap(), FlatStructure::NotApplicable(_)), "{name}");
    }
}

#[test]
fn certificate_evidence_per_factor() {
    for e in entries() {
        let alg = e.algebra().unwrap();
        let d = decompose(&alg, &opts()).unwrap();
        assert_eq!(d.certificate.evidence.len(), d.factors.len(), "{}", e.name);
        for (f, ev) in d.factors.iter().zip(&d.certificate.evidence) {
            assert!(is_strong_ideal(f, alg.gamma()), "{}", e.name);
            if let Evidence::CommutantTrivial = ev {
                let local = alg.restrict(f).unwrap();
                assert_eq!(commutant_dim(&nabla_ops(&koszul(local.spec()))), 1, "{}", e.name);
            }
        }
    }
}
