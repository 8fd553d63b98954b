//! The JSON document format for algebra specifications.
//!
//! ```json
//! {
//!   "name": "heisenberg3_euclid",
//!   "dim": 3,
//!   "basis": ["e1", "e2", "e3"],
//!   "mode": "bracket",
//!   "brackets": [{"x": "e1", "y": "e2", "value": {"e3": "1"}}],
//!   "metric": [{"x": "e1", "y": "e1", "value": "1"}, ...]
//! }
//! ```
//!
//! Unlisted entries are zero. Brackets are antisymmetrized and metric
//! entries symmetrized; a repeated entry must agree with the first one.
//! In connection mode a `connection` list (`∇_x y = value`) replaces
//! `brackets`.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{AlgebraSpec, Mode, Table3};
use crate::error::{Error, Result};
use crate::linalg::rat::fmt_rat;
use crate::linalg::{parse_rat, Mat, Rat, SymForm};

/// Ordered `name → rational string` map that rejects repeated keys.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValueMap(pub Vec<(String, String)>);

impl<'de> Deserialize<'de> for ValueMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ValueMap;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from basis names to rational strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<ValueMap, A::Error> {
                let mut out: Vec<(String, String)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    if out.iter().any(|(seen, _)| *seen == k) {
                        return Err(serde::de::Error::custom(format!("duplicate key {k:?}")));
                    }
                    out.push((k, v));
                }
                Ok(ValueMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl Serialize for ValueMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorEntry {
    pub x: String,
    pub y: String,
    pub value: ValueMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarEntry {
    pub x: String,
    pub y: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<VectorEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<VectorEntry>>,
    pub metric: Vec<ScalarEntry>,
}

fn default_mode() -> String {
    "bracket".into()
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        let n = self.basis.len();
        if self.dim != n {
            return Err(Error::Parse(format!(
                "dim is {} but {} basis names are listed",
                self.dim, n
            )));
        }
        let index: HashMap<&str, usize> =
            self.basis.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != n {
            return Err(Error::Parse("basis names must be distinct".into()));
        }
        let lookup = |ctx: &str, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("{ctx}: unknown basis name {name:?}")))
        };
        let vector = |ctx: &str, vm: &ValueMap| -> Result<Vec<Rat>> {
            let mut v = vec![Rat::zero(); n];
            for (k, s) in &vm.0 {
                v[lookup(ctx, k)?] = parse_rat(s).map_err(|e| Error::Parse(format!("{ctx}: {e}")))?;
            }
            Ok(v)
        };

        let mut gram: HashMap<(usize, usize), Rat> = HashMap::new();
        for (idx, e) in self.metric.iter().enumerate() {
            let ctx = format!("metric[{idx}]");
            let (i, j) = (lookup(&ctx, &e.x)?, lookup(&ctx, &e.y)?);
            let v = parse_rat(&e.value).map_err(|err| Error::Parse(format!("{ctx}: {err}")))?;
            for key in [(i, j), (j, i)] {
                if let Some(old) = gram.insert(key, v.clone()) {
                    if old != v {
                        return Err(Error::Parse(format!("{ctx}: conflicts with an earlier entry")));
                    }
                }
            }
        }
        let mut g = Mat::zeros(n, n);
        for ((i, j), v) in gram {
            g[(i, j)] = v;
        }
        let metric = SymForm::new(g)?;

        let mode = match self.mode.as_str() {
            "bracket" => Mode::Bracket,
            "connection" => Mode::Connection,
            other => return Err(Error::Parse(format!("unknown mode {other:?}"))),
        };
        let mut seen: HashMap<(usize, usize), Vec<Rat>> = HashMap::new();
        let mut record = |ctx: &str, key: (usize, usize), v: Vec<Rat>| -> Result<()> {
            if let Some(old) = seen.insert(key, v.clone()) {
                if old != v {
                    return Err(Error::Parse(format!("{ctx}: conflicts with an earlier entry")));
                }
            }
            Ok(())
        };
        let mut table = Table3::zeros(n);
        match mode {
            Mode::Bracket => {
                if self.connection.is_some() {
                    return Err(Error::Parse("connection entries require mode \"connection\"".into()));
                }
                for (idx, e) in self.brackets.iter().flatten().enumerate() {
                    let ctx = format!("brackets[{idx}]");
                    let (i, j) = (lookup(&ctx, &e.x)?, lookup(&ctx, &e.y)?);
                    let v = vector(&ctx, &e.value)?;
                    if i == j && v.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Parse(format!("{ctx}: [{0},{0}] must vanish", e.x)));
                    }
                    let neg: Vec<Rat> = v.iter().map(|x| -x).collect();
                    record(&ctx, (i, j), v.clone())?;
                    record(&ctx, (j, i), neg.clone())?;
                    table.set_vector(i, j, &v);
                    table.set_vector(j, i, &neg);
                }
                AlgebraSpec::from_brackets(&self.name, self.basis.clone(), table, metric)
            }
            Mode::Connection => {
                if self.brackets.is_some() {
                    return Err(Error::Parse(
                        "brackets are induced by the connection in mode \"connection\"".into(),
                    ));
                }
                for (idx, e) in self.connection.iter().flatten().enumerate() {
                    let ctx = format!("connection[{idx}]");
                    let (i, j) = (lookup(&ctx, &e.x)?, lookup(&ctx, &e.y)?);
                    let v = vector(&ctx, &e.value)?;
                    record(&ctx, (i, j), v.clone())?;
                    table.set_vector(i, j, &v);
                }
                AlgebraSpec::from_connection(&self.name, self.basis.clone(), table, metric)
            }
        }
    }

    /// Canonical document: brackets for `i < j`, metric for `i ≤ j`, all
    /// nonzero connection entries, value maps in basis order.
    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        let n = spec.dim();
        let names = spec.basis_names();
        let value_map = |v: &[Rat]| {
            ValueMap(
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (names[k].clone(), fmt_rat(x)))
                    .collect(),
            )
        };
        let entry = |i: usize, j: usize, v: &[Rat]| VectorEntry {
            x: names[i].clone(),
            y: names[j].clone(),
            value: value_map(v),
        };
        let nonzero = |v: &[Rat]| v.iter().any(|x| !x.is_zero());
        let g = spec.metric().gram();
        let metric = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !g[(i, j)].is_zero())
            .map(|(i, j)| ScalarEntry {
                x: names[i].clone(),
                y: names[j].clone(),
                value: fmt_rat(&g[(i, j)]),
            })
            .collect();
        let (brackets, connection) = match spec.connection_override() {
            None => {
                let t = spec.brackets();
                let list = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| nonzero(t.vector(i, j)))
                    .map(|(i, j)| entry(i, j, t.vector(i, j)))
                    .collect();
                (Some(list), None)
            }
            Some(t) => {
                let list = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| nonzero(t.vector(i, j)))
                    .map(|(i, j)| entry(i, j, t.vector(i, j)))
                    .collect();
                (None, Some(list))
            }
        };
        InputDocument {
            name: spec.name().to_string(),
            dim: n,
            basis: names.to_vec(),
            mode: spec.mode().as_str().to_string(),
            brackets,
            connection,
            metric,
        }
    }
}

/// Parses a document straight into a spec.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    InputDocument::from_json(text)?.to_spec()
}

/// Canonical JSON text for a spec.
pub fn serialize_spec(spec: &AlgebraSpec) -> String {
    InputDocument::from_spec(spec).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat::rat;

    #[test]
    fn minimal_abelian() {
        let spec = parse_spec(
            r#"{"name": "a1", "dim": 1, "basis": ["e1"], "metric": [{"x": "e1", "y": "e1", "value": "1"}]}"#,
        )
        .unwrap();
        assert_eq!(spec.dim(), 1);
        assert!(spec.brackets().is_zero());
    }

    #[test]
    fn fractions_are_exact() {
        let spec = parse_spec(
            r#"{"name": "a", "dim": 1, "basis": ["e1"], "metric": [{"x": "e1", "y": "e1", "value": "1/3"}]}"#,
        )
        .unwrap();
        assert_eq!(spec.metric().gram()[(0, 0)], rat(1, 3));
    }

    #[test]
    fn rejects_decimals_and_conflicts() {
        let dec = r#"{"name": "a", "dim": 1, "basis": ["e1"], "metric": [{"x": "e1", "y": "e1", "value": "0.5"}]}"#;
        assert!(matches!(parse_spec(dec), Err(Error::Parse(_))));
        let conflict = r#"{"name": "a", "dim": 2, "basis": ["e1", "e2"],
            "metric": [{"x": "e1", "y": "e2", "value": "1"}, {"x": "e2", "y": "e1", "value": "2"}]}"#;
        assert!(matches!(parse_spec(conflict), Err(Error::Parse(_))));
        let dup = r#"{"name": "a", "dim": 2, "basis": ["e1", "e2"],
            "brackets": [{"x": "e1", "y": "e2", "value": {"e1": "1", "e1": "2"}}],
            "metric": [{"x": "e1", "y": "e1", "value": "1"}]}"#;
        assert!(matches!(parse_spec(dup), Err(Error::Parse(_))));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_spec("{\n  \"name\": \"a\",\n  oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn consistent_duplicate_bracket_is_fine() {
        let text = r#"{"name": "h", "dim": 3, "basis": ["e1", "e2", "e3"],
            "brackets": [{"x": "e1", "y": "e2", "value": {"e3": "1"}},
                         {"x": "e2", "y": "e1", "value": {"e3": "-1"}}],
            "metric": [{"x": "e1", "y": "e1", "value": "1"}, {"x": "e2", "y": "e2", "value": "1"},
                       {"x": "e3", "y": "e3", "value": "1"}]}"#;
        let spec = parse_spec(text).unwrap();
        let again = parse_spec(&serialize_spec(&spec)).unwrap();
        assert_eq!(spec, again);
        assert_eq!(serialize_spec(&again), serialize_spec(&spec));
    }
}
