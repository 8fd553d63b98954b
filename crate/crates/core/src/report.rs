//! Machine-readable reports (ordered JSON values) and their text rendering.
//!
//! Every scalar in the field is written as a rational string. Counts,
//! dimensions and indices are plain JSON integers.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::algebra::{
    check_torsion_and_compatibility, ConnectionCoeffs, MetricAlgebra, ValidationReport,
};
use crate::catalog::{CatalogEntry, Fact};
use crate::curvature::{curvature_tensor, ClassificationReport};
use crate::decompose::{
    Certificate, CompareReport, Decomposition, Evidence, FiltrationChain, FlatStructure,
    SearchBudget, SplitStep, StrongIsometry,
};
use crate::error::{Error, Result};
use crate::ideals::{AnnReport, CaseTag};
use crate::linalg::rat::fmt_rat;
use crate::linalg::{congruent_diagonalize, parse_rat, Mat, Rat, Subspace, SymForm};

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn vector(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn matrix(m: &Mat) -> Value {
    Value::Array(m.row_iter().map(vector).collect())
}

/// RREF basis rows.
pub fn subspace(s: &Subspace) -> Value {
    Value::Array(s.vectors().map(vector).collect())
}

/// `{name: coefficient}` for the nonzero coordinates.
pub fn named(names: &[String], v: &[Rat]) -> Value {
    let mut m = Map::new();
    for (name, x) in names.iter().zip(v) {
        if !x.is_zero() {
            m.insert(name.clone(), rat(x));
        }
    }
    Value::Object(m)
}

fn header(alg_name: &str, kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("algebra".into(), json!(alg_name));
    m.insert("report".into(), json!(kind));
    m
}

pub fn validation(alg_name: &str, names: &[String], metric: &SymForm, r: &ValidationReport) -> Value {
    let mut m = header(alg_name, "validate");
    let sig = congruent_diagonalize(metric).signature;
    m.insert("usable".into(), json!(r.is_usable()));
    m.insert("antisymmetric".into(), json!(r.antisymmetry_ok));
    m.insert("jacobi".into(), json!(r.jacobi_ok));
    m.insert("metric_symmetric".into(), json!(r.metric_symmetric_ok));
    m.insert("metric_nondegenerate".into(), json!(r.metric_nondegenerate_ok));
    m.insert(
        "signature".into(),
        json!({"positive": sig.positive, "negative": sig.negative, "zero": sig.zero}),
    );
    let failures: Vec<Value> = r
        .jacobi_failures
        .iter()
        .map(|f| {
            let (i, j, k) = f.triple;
            json!({
                "triple": [names[i], names[j], names[k]],
                "defect": named(names, &f.defect),
            })
        })
        .collect();
    m.insert("jacobi_failures".into(), Value::Array(failures));
    Value::Object(m)
}

fn connection_entries(names: &[String], gamma: &ConnectionCoeffs) -> Value {
    let n = gamma.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = gamma.vector(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                out.push(json!({"x": names[i], "y": names[j], "value": named(names, v)}));
            }
        }
    }
    Value::Array(out)
}

pub fn connection(alg: &MetricAlgebra) -> Value {
    let names = alg.spec().basis_names();
    let mut m = header(alg.spec().name(), "connection");
    m.insert("mode".into(), json!(alg.spec().mode().as_str()));
    let check = check_torsion_and_compatibility(alg.gamma(), alg.spec());
    m.insert("torsion_free_and_compatible".into(), json!(check.is_ok()));
    m.insert("connection".into(), connection_entries(names, alg.gamma()));
    Value::Object(m)
}

/// Nonzero `R(e_i, e_j)e_k` for `i < j`.
pub fn curvature(alg: &MetricAlgebra) -> Value {
    let names = alg.spec().basis_names();
    let n = alg.dim();
    let curv = curvature_tensor(alg.gamma(), alg.spec());
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let v: Vec<Rat> = (0..n).map(|l| curv.get(i, j, k, l).clone()).collect();
                if v.iter().any(|x| !x.is_zero()) {
                    entries.push(json!({
                        "x": names[i], "y": names[j], "z": names[k], "value": named(names, &v),
                    }));
                }
            }
        }
    }
    let mut m = header(alg.spec().name(), "curvature");
    m.insert("flat".into(), json!(curv.is_zero()));
    m.insert("curvature".into(), Value::Array(entries));
    Value::Object(m)
}

fn opt_rat(r: &Option<Rat>) -> Value {
    r.as_ref().map_or(Value::Null, rat)
}

pub fn ricci(alg: &MetricAlgebra, c: &ClassificationReport) -> Value {
    let mut m = header(alg.spec().name(), "ricci");
    m.insert("ricci".into(), matrix(&c.ricci));
    m.insert("ricci_nondegenerate".into(), json!(c.ricci_nondegenerate));
    m.insert("ricci_flat".into(), json!(c.ricci_flat));
    m.insert("einstein".into(), opt_rat(&c.einstein));
    Value::Object(m)
}

pub fn classification(alg: &MetricAlgebra, c: &ClassificationReport) -> Value {
    let mut m = header(alg.spec().name(), "classify");
    m.insert("flat".into(), json!(c.flat));
    m.insert("ricci_flat".into(), json!(c.ricci_flat));
    m.insert("einstein".into(), opt_rat(&c.einstein));
    m.insert("biinvariant".into(), json!(c.biinvariant));
    m.insert("nilpotency_class".into(), json!(c.nilpotency_class));
    m.insert("ricci_nondegenerate".into(), json!(c.ricci_nondegenerate));
    m.insert("ricci".into(), matrix(&c.ricci));
    m.insert("killing".into(), matrix(&c.killing));
    m.insert("killing_from_induced_bracket".into(), json!(c.killing_from_induced_bracket));
    Value::Object(m)
}

pub fn ann(alg: &MetricAlgebra, r: &AnnReport) -> Value {
    let mut m = header(alg.spec().name(), "ann");
    m.insert("case".into(), json!(r.case_tag.as_str()));
    m.insert("ann_r_dim".into(), json!(r.ann_r.dim()));
    m.insert("ann_dim".into(), json!(r.ann.dim()));
    m.insert("nabla_gg_dim".into(), json!(r.nabla_gg.dim()));
    m.insert("ann_r_isotropic".into(), json!(r.ann_r_isotropic));
    m.insert("ann_r_equals_ann".into(), json!(r.ann_r_equals_ann));
    m.insert("ann_r".into(), subspace(&r.ann_r));
    m.insert("ann".into(), subspace(&r.ann));
    m.insert("nabla_gg".into(), subspace(&r.nabla_gg));
    Value::Object(m)
}

fn evidence(e: &Evidence) -> Value {
    match e {
        Evidence::SearchExhausted(b) => json!({
            "kind": e.label(),
            "commutant_dim": b.commutant_dim,
            "basis_tried": b.basis_tried,
            "pairs_tried": b.pairs_tried,
            "random_tried": b.random_tried,
            "seed": b.seed.to_string(),
        }),
        _ => json!({"kind": e.label()}),
    }
}

fn step(s: &SplitStep) -> Value {
    json!({
        "parent": subspace(&s.parent),
        "image": subspace(&s.image),
        "complement": subspace(&s.complement),
        "idempotent": matrix(&s.idempotent),
    })
}

/// Full decomposition with its certificate.
pub fn decomposition(alg: &MetricAlgebra, d: &Decomposition) -> Value {
    let mut m = header(alg.spec().name(), "decompose");
    m.insert("dim".into(), json!(alg.dim()));
    m.insert("basis".into(), json!(alg.spec().basis_names()));
    m.insert("case".into(), json!(d.case.as_str()));
    m.insert("orthogonal".into(), json!(d.orthogonal));
    m.insert(
        "factor_dims".into(),
        json!(d.factors.iter().map(Subspace::dim).collect::<Vec<_>>()),
    );
    m.insert("factors".into(), Value::Array(d.factors.iter().map(subspace).collect()));
    m.insert("g0".into(), d.g0.as_ref().map_or(Value::Null, subspace));
    m.insert("note".into(), d.note.as_ref().map_or(Value::Null, |s| json!(s)));
    m.insert(
        "certificate".into(),
        json!({
            "evidence": d.certificate.evidence.iter().map(evidence).collect::<Vec<_>>(),
            "steps": d.certificate.steps.iter().map(step).collect::<Vec<_>>(),
        }),
    );
    Value::Object(m)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn parse_vector(v: &Value, n: usize) -> Result<Vec<Rat>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected an array of rationals".into()))?;
    if arr.len() != n {
        return Err(Error::Parse(format!("expected {n} entries, found {}", arr.len())));
    }
    arr.iter()
        .map(|x| {
            x.as_str()
                .ok_or_else(|| Error::Parse("rationals must be strings".into()))
                .and_then(parse_rat)
        })
        .collect()
}

fn parse_rows(v: &Value, n: usize) -> Result<Vec<Vec<Rat>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rows".into()))?
        .iter()
        .map(|r| parse_vector(r, n))
        .collect()
}

fn parse_subspace(v: &Value, n: usize) -> Result<Subspace> {
    let rows = parse_rows(v, n)?;
    let k = rows.len();
    let s = Subspace::span(n, rows);
    if s.dim() != k {
        return Err(Error::Parse("subspace rows are linearly dependent".into()));
    }
    Ok(s)
}

fn parse_usize(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("{key:?} must be a nonnegative integer")))
}

fn parse_evidence(v: &Value) -> Result<Evidence> {
    match field(v, "kind")?.as_str() {
        Some("COMMUTANT_TRIVIAL") => Ok(Evidence::CommutantTrivial),
        Some("NOT_ATTEMPTED") => Ok(Evidence::NotAttempted),
        Some("SEARCH_EXHAUSTED") => Ok(Evidence::SearchExhausted(SearchBudget {
            commutant_dim: parse_usize(v, "commutant_dim")?,
            basis_tried: parse_usize(v, "basis_tried")?,
            pairs_tried: parse_usize(v, "pairs_tried")?,
            random_tried: parse_usize(v, "random_tried")?,
            seed: field(v, "seed")?
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse("seed must be a decimal string".into()))?,
        })),
        _ => Err(Error::Parse("unknown evidence kind".into())),
    }
}

fn parse_case(v: &Value) -> Result<CaseTag> {
    let s = v.as_str().ok_or_else(|| Error::Parse("case must be a string".into()))?;
    [
        CaseTag::AnnRFull,
        CaseTag::AnnRZero,
        CaseTag::Isotropic,
        CaseTag::AnnREqAnn,
        CaseTag::NonIsotropic,
    ]
    .into_iter()
    .find(|c| c.as_str() == s)
    .ok_or_else(|| Error::Parse(format!("unknown case {s:?}")))
}

/// Reads back the output of [`decomposition`]. Nothing is checked beyond
/// shape; call `Decomposition::verify` for that.
pub fn parse_decomposition(v: &Value) -> Result<Decomposition> {
    let n = parse_usize(v, "dim")?;
    let factors = field(v, "factors")?
        .as_array()
        .ok_or_else(|| Error::Parse("factors must be an array".into()))?
        .iter()
        .map(|f| parse_subspace(f, n))
        .collect::<Result<Vec<_>>>()?;
    let g0 = match field(v, "g0")? {
        Value::Null => None,
        g => Some(parse_subspace(g, n)?),
    };
    let cert = field(v, "certificate")?;
    let evidence = field(cert, "evidence")?
        .as_array()
        .ok_or_else(|| Error::Parse("evidence must be an array".into()))?
        .iter()
        .map(parse_evidence)
        .collect::<Result<Vec<_>>>()?;
    let steps = field(cert, "steps")?
        .as_array()
        .ok_or_else(|| Error::Parse("steps must be an array".into()))?
        .iter()
        .map(|s| {
            Ok(SplitStep {
                parent: parse_subspace(field(s, "parent")?, n)?,
                image: parse_subspace(field(s, "image")?, n)?,
                complement: parse_subspace(field(s, "complement")?, n)?,
                idempotent: Mat::from_rows(n, parse_rows(field(s, "idempotent")?, n)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let note = match field(v, "note")? {
        Value::Null => None,
        s => Some(s.as_str().ok_or_else(|| Error::Parse("note must be a string".into()))?.to_string()),
    };
    Ok(Decomposition {
        factors,
        g0,
        certificate: Certificate { steps, evidence },
        orthogonal: field(v, "orthogonal")?
            .as_bool()
            .ok_or_else(|| Error::Parse("orthogonal must be a boolean".into()))?,
        case: parse_case(field(v, "case")?)?,
        note,
    })
}

pub fn filtration(alg: &MetricAlgebra, f: &FiltrationChain, flat: &FlatStructure) -> Value {
    let mut m = header(alg.spec().name(), "filtration");
    m.insert("dims".into(), json!(f.chain.iter().map(Subspace::dim).collect::<Vec<_>>()));
    m.insert("last_isotropic".into(), json!(f.last_isotropic));
    m.insert("chain".into(), Value::Array(f.chain.iter().map(subspace).collect()));
    m.insert("removed".into(), Value::Array(f.h_blocks.iter().map(subspace).collect()));
    m.insert(
        "flat_split".into(),
        match flat {
            FlatStructure::Split(s) => json!({
                "b": subspace(&s.b),
                "ann": subspace(&s.ann),
                "derived": subspace(&s.derived),
                "dims": [s.b.dim(), s.ann.dim(), s.derived.dim()],
            }),
            FlatStructure::NotApplicable(why) => json!({"not_applicable": why}),
        },
    );
    Value::Object(m)
}

/// `⟨π(u), π(v)⟩` for `u` in factor `j` and `v` in factor `l`, over RREF
/// basis rows, for every `j < l`.
fn cross_pairings(a: &Decomposition, r: &CompareReport, metric: &SymForm) -> Value {
    let mut out = Vec::new();
    for j in 0..a.factors.len() {
        for l in j + 1..a.factors.len() {
            let pu: Vec<Vec<Rat>> = a.factors[j].vectors().map(|u| r.pi.apply(u)).collect();
            let pv: Vec<Vec<Rat>> = a.factors[l].vectors().map(|v| r.pi.apply(v)).collect();
            let mut g = Mat::zeros(pu.len(), pv.len());
            for (p, u) in pu.iter().enumerate() {
                for (q, v) in pv.iter().enumerate() {
                    g[(p, q)] = metric.eval(u, v);
                }
            }
            out.push(json!({"factors": [j, l], "gram": matrix(&g)}));
        }
    }
    Value::Array(out)
}

pub fn comparison(alg: &MetricAlgebra, a: &Decomposition, b: &Decomposition, r: &CompareReport) -> Value {
    let mut m = header(alg.spec().name(), "compare");
    m.insert("matching".into(), json!(r.matching));
    m.insert("dims_equal".into(), json!(r.dims_equal));
    m.insert("nabla_equalities".into(), json!(r.nabla_equalities));
    m.insert("cross_vanishing".into(), json!(r.cross_vanishing_ok));
    m.insert("strong_homomorphism".into(), json!(r.strong_homomorphism_ok));
    m.insert("automorphism".into(), json!(r.automorphism));
    m.insert("isometric".into(), json!(r.isometric));
    m.insert("g0_isometric".into(), json!(r.g0_isometric));
    m.insert("first".into(), Value::Array(a.factors.iter().map(subspace).collect()));
    m.insert("second".into(), Value::Array(b.factors.iter().map(subspace).collect()));
    m.insert("pi".into(), matrix(&r.pi));
    m.insert("cross_pairings".into(), cross_pairings(a, r, alg.metric()));
    Value::Object(m)
}

pub fn isometry(alg: &MetricAlgebra, iso: Option<&StrongIsometry>, unsupported: Option<&str>) -> Value {
    let mut m = header(alg.spec().name(), "isometry");
    match (iso, unsupported) {
        (Some(iso), _) => {
            m.insert("status".into(), json!("ISOMETRY"));
            m.insert("matching".into(), json!(iso.matching));
            m.insert("map".into(), matrix(&iso.map));
            let corr: Vec<Value> = iso
                .adapted
                .iter()
                .map(|a| a.as_ref().map_or(Value::Null, |a| matrix(&a.corrections)))
                .collect();
            m.insert("corrections".into(), Value::Array(corr));
        }
        (None, why) => {
            m.insert("status".into(), json!("UNSUPPORTED"));
            m.insert("reason".into(), json!(why.unwrap_or("")));
        }
    }
    Value::Object(m)
}

fn fact(f: &Fact) -> (&'static str, Value) {
    match f {
        Fact::Flat(b) => ("flat", json!(b)),
        Fact::RicciFlat(b) => ("ricci_flat", json!(b)),
        Fact::Einstein(c) => ("einstein", json!(c)),
        Fact::Biinvariant(b) => ("biinvariant", json!(b)),
        Fact::NilpotencyClass(c) => ("nilpotency_class", json!(c)),
        Fact::RicciDiagonal(d) => ("ricci_diagonal", json!(d)),
        Fact::AnnRDim(d) => ("ann_r_dim", json!(d)),
        Fact::AnnDim(d) => ("ann_dim", json!(d)),
        Fact::AnnRIsotropic(b) => ("ann_r_isotropic", json!(b)),
        Fact::Case(c) => ("case", json!(c.as_str())),
        Fact::FactorDims(d) => ("factor_dims", json!(d)),
        Fact::G0Dim(d) => ("g0_dim", json!(d)),
        Fact::Orthogonal(b) => ("orthogonal", json!(b)),
        Fact::Evidence(e) => ("evidence", json!(e)),
        Fact::FlatSplit(b, a, d) => ("flat_split_dims", json!([b, a, d])),
        Fact::FiltrationDims(d) => ("filtration_dims", json!(d)),
    }
}

pub fn catalog_entry(e: &CatalogEntry) -> Value {
    let expected: Vec<Value> = e
        .expected
        .iter()
        .map(|x| {
            let (k, v) = fact(&x.fact);
            json!({"fact": k, "value": v, "origin": x.origin.as_str()})
        })
        .collect();
    json!({
        "name": e.name,
        "dim": e.spec.dim(),
        "mode": e.spec.mode().as_str(),
        "notes": e.notes,
        "expected": expected,
        "listed_decomposition": e.listed.is_some(),
    })
}

/// Indented `key: value` rendering of a report.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) => {
            let parts: Option<Vec<String>> = a
                .iter()
                .map(|x| match x {
                    Value::Array(_) | Value::Object(_) => inline_nested(x),
                    _ => inline(x),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Object(_) => None,
    }
}

/// Arrays of scalars and flat name-to-scalar maps stay on one line.
fn inline_nested(v: &Value) -> Option<String> {
    match v {
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => inline(v),
        Value::Object(m) if m.values().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> =
                m.iter().map(|(k, x)| format!("{k}: {}", inline(x).unwrap_or_default())).collect();
            Some(format!("{{{}}}", parts.join(", ")))
        }
        _ => None,
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match inline(x).or_else(|| inline_nested(x)) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}
