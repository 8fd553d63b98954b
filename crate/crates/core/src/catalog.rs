//! Built-in example algebras and their known properties.
//!
//! Each entry is an ordinary input document embedded at build time, plus a
//! list of expected facts. Every fact records where its value came from.

use crate::algebra::{validate, AlgebraSpec, MetricAlgebra};
use crate::curvature::classify;
use crate::decompose::{
    decompose, filtration, flat_riemannian_structure, DecomposeOptions, Decomposition,
    FlatStructure,
};
use crate::error::{Error, Result};
use crate::format::parse_spec;
use crate::ideals::{ann_report, CaseTag};
use crate::linalg::rat::{fmt_rat, int};
use crate::linalg::{Mat, Rat, Subspace};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Obvious from the definitions.
    Trivial,
    /// Computed once by an independent oracle in the test suite, then frozen.
    Oracle,
    /// Stated in the published worked example.
    Literature,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Trivial => "trivial",
            Origin::Oracle => "oracle",
            Origin::Literature => "literature",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    Flat(bool),
    RicciFlat(bool),
    /// Einstein constant as a rational string, `None` when not Einstein.
    Einstein(Option<&'static str>),
    Biinvariant(bool),
    NilpotencyClass(usize),
    /// Diagonal Ricci matrix.
    RicciDiagonal(&'static [&'static str]),
    AnnRDim(usize),
    AnnDim(usize),
    AnnRIsotropic(bool),
    Case(CaseTag),
    /// Dimensions of the factors returned by `decompose`, in order.
    FactorDims(&'static [usize]),
    G0Dim(Option<usize>),
    Orthogonal(bool),
    /// Evidence label of every factor.
    Evidence(&'static str),
    /// Dimensions of `(b, ann, derived)` from the flat splitting.
    FlatSplit(usize, usize, usize),
    /// Dimensions along the filtration chain, starting with the algebra.
    FiltrationDims(&'static [usize]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub fact: Fact,
    pub origin: Origin,
}

/// Sparse vector: `(basis name, coefficient)` pairs.
pub type NamedVector = &'static [(&'static str, i64)];

/// A known decomposition, given by spanning vectors of each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedDecomposition {
    pub factors: &'static [&'static [NamedVector]],
    pub g0: Option<&'static [NamedVector]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: AlgebraSpec,
    pub expected: Vec<Expectation>,
    pub notes: &'static str,
    pub listed: Option<ListedDecomposition>,
    /// The shipped document text.
    pub source: &'static str,
}

struct Raw {
    name: &'static str,
    source: &'static str,
    notes: &'static str,
    expected: &'static [(Fact, Origin)],
    listed: Option<ListedDecomposition>,
}

macro_rules! doc {
    ($name:literal) => {
        include_str!(concat!("../catalog/", $name, ".json"))
    };
}

use Fact::*;
use Origin::*;

const REMARK38_FACTS: &[(Fact, Origin)] = &[
    (AnnRDim(4), Literature),
    (AnnDim(2), Literature),
    (AnnRIsotropic(true), Literature),
    (Case(CaseTag::Isotropic), Trivial),
    (FactorDims(&[4, 4]), Literature),
    (G0Dim(None), Trivial),
    (Orthogonal(false), Literature),
];

const N23_FACTS: &[(Fact, Origin)] = &[
    (Biinvariant(true), Oracle),
    (Flat(false), Oracle),
    (RicciFlat(true), Oracle),
    (Einstein(Some("0")), Oracle),
    (NilpotencyClass(3), Trivial),
];

const RAW: &[Raw] = &[
    Raw {
        name: "abelian_2",
        source: doc!("abelian_2"),
        notes: "Euclidean plane with the zero bracket.",
        expected: &[
            (Flat(true), Trivial),
            (Einstein(Some("0")), Trivial),
            (AnnRDim(2), Trivial),
            (Case(CaseTag::AnnRFull), Trivial),
            (FactorDims(&[1, 1]), Trivial),
            (Orthogonal(true), Trivial),
        ],
        listed: None,
    },
    Raw {
        name: "abelian_3",
        source: doc!("abelian_3"),
        notes: "Euclidean 3-space with the zero bracket.",
        expected: &[
            (Flat(true), Trivial),
            (Einstein(Some("0")), Trivial),
            (Biinvariant(true), Trivial),
            (NilpotencyClass(1), Trivial),
            (AnnRDim(3), Trivial),
            (AnnDim(3), Trivial),
            (Case(CaseTag::AnnRFull), Trivial),
            (FactorDims(&[1, 1, 1]), Trivial),
            (Orthogonal(true), Trivial),
            (Evidence("COMMUTANT_TRIVIAL"), Trivial),
        ],
        listed: None,
    },
    Raw {
        name: "abelian_lorentz2",
        source: doc!("abelian_lorentz2"),
        notes: "Lorentzian plane with the zero bracket.",
        expected: &[
            (Flat(true), Trivial),
            (Einstein(Some("0")), Trivial),
            (AnnRDim(2), Trivial),
            (Case(CaseTag::AnnRFull), Trivial),
            (FactorDims(&[1, 1]), Trivial),
        ],
        listed: None,
    },
    Raw {
        name: "heisenberg3_euclid",
        source: doc!("heisenberg3_euclid"),
        notes: "Three-dimensional Heisenberg algebra with an orthonormal basis.",
        expected: &[
            (RicciDiagonal(&["-1/2", "-1/2", "1/2"]), Oracle),
            (Flat(false), Oracle),
            (Einstein(None), Oracle),
            (NilpotencyClass(2), Trivial),
            (AnnRDim(0), Oracle),
            (Case(CaseTag::AnnRZero), Oracle),
            (FactorDims(&[3]), Oracle),
        ],
        listed: None,
    },
    Raw {
        name: "e2_flat",
        source: doc!("e2_flat"),
        notes: "Euclidean motion algebra with its flat left-invariant metric.",
        expected: &[
            (Flat(true), Oracle),
            (AnnRDim(1), Oracle),
            (AnnDim(0), Oracle),
            (Case(CaseTag::NonIsotropic), Oracle),
            (FlatSplit(1, 0, 2), Oracle),
            (FiltrationDims(&[3, 2]), Oracle),
        ],
        listed: None,
    },
    Raw {
        name: "so3_killing_neg",
        source: doc!("so3_killing_neg"),
        notes: "so(3) with the metric -K = 2I.",
        expected: &[
            (Einstein(Some("1/4")), Oracle),
            (Biinvariant(true), Oracle),
            (AnnRDim(0), Oracle),
            (Case(CaseTag::AnnRZero), Oracle),
            (FactorDims(&[3]), Oracle),
            (Evidence("COMMUTANT_TRIVIAL"), Oracle),
        ],
        listed: None,
    },
    Raw {
        name: "sl2_killing",
        source: doc!("sl2_killing"),
        notes: "sl(2) with its Killing form, signature (2,1).",
        expected: &[
            (Einstein(Some("-1/4")), Oracle),
            (Biinvariant(true), Oracle),
            (AnnRDim(0), Oracle),
            (FactorDims(&[3]), Oracle),
            (Evidence("COMMUTANT_TRIVIAL"), Oracle),
        ],
        listed: None,
    },
    Raw {
        name: "so3_x_so3",
        source: doc!("so3_x_so3"),
        notes: "Product of two copies of so3_killing_neg.",
        expected: &[
            (Einstein(Some("1/4")), Oracle),
            (Biinvariant(true), Oracle),
            (AnnRDim(0), Oracle),
            (FactorDims(&[3, 3]), Trivial),
            (Orthogonal(true), Oracle),
            (Evidence("COMMUTANT_TRIVIAL"), Oracle),
        ],
        listed: Some(ListedDecomposition {
            factors: &[
                &[&[("a1", 1)], &[("a2", 1)], &[("a3", 1)]],
                &[&[("b1", 1)], &[("b2", 1)], &[("b3", 1)]],
            ],
            g0: None,
        }),
    },
    Raw {
        name: "remark38",
        source: doc!("remark38"),
        notes: "Eight-dimensional example whose decompositions are never orthogonal. \
                The listed brackets violate Jacobi on (X1,X3,X4), so the entry is \
                given by its connection table. Solving for the Levi-Civita connection \
                of the induced bracket alone gives back exactly these four nonzero \
                entries and nothing else.",
        expected: REMARK38_FACTS,
        listed: Some(ListedDecomposition {
            factors: &[
                &[&[("X1", 1)], &[("X2", 1)], &[("X3", 1)], &[("X4", 1)]],
                &[&[("Y1", 1)], &[("Y2", 1)], &[("Y3", 1)], &[("Y4", 1)]],
            ],
            g0: None,
        }),
    },
    Raw {
        name: "remark38_alt",
        source: doc!("remark38_alt"),
        notes: "Same algebra as remark38; the listed decomposition shifts X3, X4 by \
                multiples of Y2 and Y3, Y4 by multiples of X2.",
        expected: REMARK38_FACTS,
        listed: Some(ListedDecomposition {
            factors: &[
                &[&[("X1", 1)], &[("X2", 1)], &[("X3", 1), ("Y2", 1)], &[("X4", 1), ("Y2", 2)]],
                &[&[("Y1", 1)], &[("Y2", 1)], &[("Y3", 1), ("X2", 3)], &[("Y4", 1), ("X2", 5)]],
            ],
            g0: None,
        }),
    },
    Raw {
        name: "t_star_h3",
        source: doc!("t_star_h3"),
        notes: "Cotangent extension of the Heisenberg algebra with the hyperbolic pairing.",
        expected: &[
            (Biinvariant(true), Oracle),
            (NilpotencyClass(2), Oracle),
            (Flat(true), Oracle),
        ],
        listed: None,
    },
    Raw {
        name: "n23_quadratic",
        source: doc!("n23_quadratic"),
        notes: "Free 3-step nilpotent algebra on two generators with an invariant metric.",
        expected: N23_FACTS,
        listed: None,
    },
    Raw {
        name: "n23_plus_line",
        source: doc!("n23_plus_line"),
        notes: "n23_quadratic plus an orthogonal Euclidean line. The listed \
                decomposition uses the shifted line z + e4.",
        expected: &[
            (AnnRDim(3), Oracle),
            (AnnDim(3), Oracle),
            (Case(CaseTag::AnnREqAnn), Oracle),
            (FactorDims(&[5]), Oracle),
            (G0Dim(Some(1)), Oracle),
            (Orthogonal(true), Oracle),
        ],
        listed: Some(ListedDecomposition {
            factors: &[&[
                &[("e1", 1)],
                &[("e2", 1), ("z", 1)],
                &[("e3", 1)],
                &[("e4", 1)],
                &[("e5", 1)],
            ]],
            g0: Some(&[&[("z", 1), ("e4", 1)]]),
        }),
    },
];

pub fn catalog_list() -> Vec<&'static str> {
    RAW.iter().map(|r| r.name).collect()
}

/// Loads and re-validates an entry.
pub fn catalog_get(name: &str) -> Result<CatalogEntry> {
    let raw = RAW
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    let spec = parse_spec(raw.source)?;
    if !validate(&spec).is_usable() {
        return Err(Error::InvalidSpec(format!("catalog entry {name} does not validate")));
    }
    MetricAlgebra::new(spec.clone())?;
    Ok(CatalogEntry {
        name: raw.name,
        spec,
        expected: raw
            .expected
            .iter()
            .map(|(fact, origin)| Expectation { fact: fact.clone(), origin: *origin })
            .collect(),
        notes: raw.notes,
        listed: raw.listed.clone(),
        source: raw.source,
    })
}

impl CatalogEntry {
    pub fn algebra(&self) -> Result<MetricAlgebra> {
        MetricAlgebra::new(self.spec.clone())
    }

    fn vector(&self, v: NamedVector) -> Result<Vec<Rat>> {
        let mut out = vec![int(0); self.spec.dim()];
        for &(name, c) in v {
            let i = self
                .spec
                .index_of(name)
                .ok_or_else(|| Error::InvalidSpec(format!("unknown basis name {name:?}")))?;
            out[i] += int(c);
        }
        Ok(out)
    }

    fn subspace(&self, vs: &[NamedVector]) -> Result<Subspace> {
        let rows = vs.iter().map(|v| self.vector(v)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.spec.dim(), rows))
    }

    /// The listed decomposition as a checked `Decomposition`.
    pub fn listed_decomposition(&self, opts: &DecomposeOptions) -> Result<Option<Decomposition>> {
        let Some(listed) = &self.listed else { return Ok(None) };
        let alg = self.algebra()?;
        let factors =
            listed.factors.iter().map(|f| self.subspace(f)).collect::<Result<Vec<_>>>()?;
        let g0 = listed.g0.map(|g| self.subspace(g)).transpose()?;
        Decomposition::from_factors(&alg, factors, g0, opts).map(Some)
    }

    /// Recomputes every expected fact; returns a description of each mismatch.
    pub fn check(&self, opts: &DecomposeOptions) -> Result<Vec<String>> {
        let alg = self.algebra()?;
        let class = classify(alg.gamma(), alg.spec());
        let ann = ann_report(alg.gamma(), alg.metric());
        let mut dec: Option<Decomposition> = None;
        let mut mismatches = Vec::new();
        for e in &self.expected {
            let actual = match &e.fact {
                Flat(_) => Flat(class.flat),
                RicciFlat(_) => RicciFlat(class.ricci_flat),
                Einstein(want) => {
                    let got = class.einstein.as_ref().map(fmt_rat);
                    if got.as_deref() == *want {
                        continue;
                    }
                    mismatches.push(format!("{:?}: got {got:?}", e.fact));
                    continue;
                }
                Biinvariant(_) => Biinvariant(class.biinvariant),
                NilpotencyClass(want) => {
                    if class.nilpotency_class != Some(*want) {
                        mismatches.push(format!("{:?}: got {:?}", e.fact, class.nilpotency_class));
                    }
                    continue;
                }
                RicciDiagonal(want) => {
                    let d: Vec<Rat> =
                        want.iter().map(|s| crate::linalg::parse_rat(s)).collect::<Result<_>>()?;
                    if class.ricci != Mat::diag(&d) {
                        mismatches.push(format!("{:?}: got {:?}", e.fact, class.ricci));
                    }
                    continue;
                }
                AnnRDim(_) => AnnRDim(ann.ann_r.dim()),
                AnnDim(_) => AnnDim(ann.ann.dim()),
                AnnRIsotropic(_) => AnnRIsotropic(ann.ann_r_isotropic),
                Case(_) => Case(ann.case_tag),
                FactorDims(want) => {
                    let d = dec.get_or_insert(decompose(&alg, opts)?);
                    let got: Vec<usize> = d.factors.iter().map(Subspace::dim).collect();
                    if got != *want {
                        mismatches.push(format!("{:?}: got {got:?}", e.fact));
                    }
                    continue;
                }
                G0Dim(_) => G0Dim(dec.get_or_insert(decompose(&alg, opts)?).g0.as_ref().map(Subspace::dim)),
                Orthogonal(_) => Orthogonal(dec.get_or_insert(decompose(&alg, opts)?).orthogonal),
                Evidence(want) => {
                    let d = dec.get_or_insert(decompose(&alg, opts)?);
                    if d.certificate.evidence.iter().any(|ev| ev.label() != *want) {
                        mismatches.push(format!("{:?}: got {:?}", e.fact, d.certificate.evidence));
                    }
                    continue;
                }
                FlatSplit(..) => match flat_riemannian_structure(&alg)? {
                    FlatStructure::Split(s) => FlatSplit(s.b.dim(), s.ann.dim(), s.derived.dim()),
                    FlatStructure::NotApplicable(why) => {
                        mismatches.push(format!("{:?}: not applicable ({why})", e.fact));
                        continue;
                    }
                },
                FiltrationDims(want) => {
                    let f = filtration(&alg)?;
                    let got: Vec<usize> = f.chain.iter().map(Subspace::dim).collect();
                    if got != *want {
                        mismatches.push(format!("{:?}: got {got:?}", e.fact));
                    }
                    continue;
                }
            };
            if actual != e.fact {
                mismatches.push(format!("expected {:?}, got {actual:?}", e.fact));
            }
        }
        Ok(mismatches)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_meets_its_expectations() {
        for name in catalog_list() {
            let entry = catalog_get(name).unwrap();
            let miss = entry.check(&DecomposeOptions::default()).unwrap();
            assert!(miss.is_empty(), "{name}: {miss:?}");
            entry.listed_decomposition(&DecomposeOptions::default()).unwrap();
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(catalog_get("nope").unwrap_err(), Error::UnknownEntry("nope".into()));
    }
}
