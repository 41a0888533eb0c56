//! JSON schemas for tensors, matrices, presentations and certificates.
//!
//! Scalars are always strings: `"0"`/`"1"` over 𝔹 and `"-inf"`, `"3"`,
//! `"-5/2"` over 𝕋(ℚ). Subset keys are comma-joined 1-based elements.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tropgrass_core::quotient::{FreenessCertificate, Presentation, Saturation};
use tropgrass_core::{Boolean, Matrix, Semifield, SemifieldKind, Subset, Tensor, Tropical};

pub type Entries = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub semifield: String,
    pub n: usize,
    pub d: usize,
    #[serde(default)]
    pub entries: Entries,
}

/// A tensor over whichever semifield its file names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTensor {
    B(Tensor<Boolean>),
    T(Tensor<Tropical>),
}

impl AnyTensor {
    pub fn kind(&self) -> SemifieldKind {
        match self {
            AnyTensor::B(_) => SemifieldKind::Boolean,
            AnyTensor::T(_) => SemifieldKind::TropicalRational,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyTensor::B(t) => tensor_json(t),
            AnyTensor::T(t) => tensor_json(t),
        }
    }
}

pub fn parse_kind(tag: &str) -> Result<SemifieldKind> {
    Ok(tag.parse::<SemifieldKind>()?)
}

pub fn entries_of<S: Semifield>(t: &Tensor<S>) -> Entries {
    t.iter().map(|(k, x)| (k.to_string(), x.to_string())).collect()
}

pub fn tensor_json<S: Semifield>(t: &Tensor<S>) -> Value {
    json!({
        "semifield": S::KIND.tag(),
        "n": t.n(),
        "d": t.degree(),
        "entries": entries_of(t),
    })
}

/// Entries map to a tensor; zero coefficients are dropped.
pub fn tensor_from_entries<S: Semifield>(n: usize, d: usize, entries: &Entries) -> Result<Tensor<S>> {
    let mut parsed = Vec::with_capacity(entries.len());
    for (key, value) in entries {
        let index: Subset = key.parse().with_context(|| format!("subset key {key:?}"))?;
        if index.len() != d {
            bail!("subset {{{key}}} has size {}, expected {d}", index.len());
        }
        let x: S = value.parse().with_context(|| format!("coefficient of {{{key}}}"))?;
        parsed.push((index, x));
    }
    Ok(Tensor::from_entries(n, d, parsed)?)
}

impl TensorJson {
    pub fn parse(value: Value) -> Result<AnyTensor> {
        let raw: TensorJson = serde_json::from_value(value).context("tensor JSON")?;
        Ok(match parse_kind(&raw.semifield)? {
            SemifieldKind::Boolean => AnyTensor::B(tensor_from_entries(raw.n, raw.d, &raw.entries)?),
            SemifieldKind::TropicalRational => AnyTensor::T(tensor_from_entries(raw.n, raw.d, &raw.entries)?),
        })
    }
}

pub fn scalars<S: Semifield>(values: &[String]) -> Result<Vec<S>> {
    values
        .iter()
        .map(|s| s.parse::<S>().with_context(|| format!("scalar {s:?}")))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub semifield: String,
    pub rows: Vec<Vec<String>>,
}

pub fn matrix_from_rows<S: Semifield>(rows: &[Vec<String>]) -> Result<Matrix<S>> {
    let rows = rows.iter().map(|r| scalars(r)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?)
}

pub fn matrix_json<S: Semifield>(m: &Matrix<S>) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect();
    json!({ "semifield": S::KIND.tag(), "rows": rows })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub left: Entries,
    pub right: Entries,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    pub semifield: String,
    pub n: usize,
    pub degree: usize,
    pub rank: usize,
    pub labels: Vec<String>,
    pub generators: Vec<GeneratorJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sources: Vec<Entries>,
}

pub fn presentation_json<S: Semifield>(p: &Presentation<S>) -> PresentationJson {
    PresentationJson {
        semifield: S::KIND.tag().into(),
        n: p.n(),
        degree: p.degree(),
        rank: p.rank(),
        labels: p.labels().iter().map(ToString::to_string).collect(),
        generators: p
            .generators()
            .iter()
            .map(|(l, r)| GeneratorJson {
                left: entries_of(l),
                right: entries_of(r),
            })
            .collect(),
        sources: p.sources().iter().map(entries_of).collect(),
    }
}

impl PresentationJson {
    pub fn kind(&self) -> Result<SemifieldKind> {
        parse_kind(&self.semifield)
    }

    pub fn build<S: Semifield>(&self) -> Result<Presentation<S>> {
        if self.kind()? != S::KIND {
            bail!("presentation is over {}, expected {}", self.semifield, S::KIND);
        }
        let expected = tropgrass_core::subset::binomial(self.n, self.degree);
        if self.rank != expected {
            bail!("rank {} does not match C({}, {}) = {expected}", self.rank, self.n, self.degree);
        }
        let t = |e: &Entries| tensor_from_entries::<S>(self.n, self.degree, e);
        if self.sources.is_empty() {
            let generators = self
                .generators
                .iter()
                .map(|g| Ok((t(&g.left)?, t(&g.right)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Presentation::new(self.n, self.degree, generators)?)
        } else {
            let sources = self.sources.iter().map(t).collect::<Result<Vec<_>>>()?;
            let p = Presentation::from_sources(self.n, self.degree, sources)?;
            if p.generators().len() != self.generators.len() {
                bail!("generators do not match the bend pairs of the listed sources");
            }
            Ok(p)
        }
    }
}

pub fn certificate_json<S: Semifield>(c: &FreenessCertificate<S>) -> Value {
    json!({
        "pivot": c.pivot.to_string(),
        "lambda": c.lambda.iter().map(|(k, x)| (k.to_string(), x.to_string())).collect::<Entries>(),
        "vanishing": c.vanishing.iter().map(|s| json!({
            "index": s.index.to_string(),
            "source": s.source,
        })).collect::<Vec<_>>(),
        "edges": c.edges.iter().map(|e| json!({
            "from": e.from.to_string(),
            "to": e.to.to_string(),
            "source": e.source,
            "from_coeff": e.from_coeff.to_string(),
            "to_coeff": e.to_coeff.to_string(),
        })).collect::<Vec<_>>(),
        "generators_checked": c.generators_checked,
    })
}

pub fn saturation_json(s: &Saturation) -> Value {
    let names = |v: &[Subset]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    json!({
        "vanishing": names(&s.vanishing),
        "classes": s.classes.iter().map(|c| names(c)).collect::<Vec<_>>(),
        "class_count": s.class_count(),
    })
}

/// Coefficients in tropical notation: over 𝔹, `1 ↦ 0` and `0 ↦ -inf`.
pub fn tropical_notation<S: Semifield>(x: &S) -> String {
    let as_tropical: Tropical = match x.clone().into_scalar() {
        tropgrass_core::Scalar::Boolean(b) => b.into(),
        tropgrass_core::Scalar::Tropical(t) => t,
    };
    as_tropical.to_string()
}

/// Rows labelled `e_{J}`, columns `e_1..e_n`, right-aligned cells.
pub fn render_matrix<S: Semifield>(labels: &[String], columns: &[String], rows: &[Vec<S>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(tropical_notation).collect()).collect();
    let label_width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let cell_width = cells
        .iter()
        .flatten()
        .chain(columns)
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(1);
    let mut out = " ".repeat(label_width);
    for c in columns {
        out.push_str(&format!(" {c:>cell_width$}"));
    }
    out.push('\n');
    for (label, row) in labels.iter().zip(&cells) {
        out.push_str(&format!("{label:<label_width$}"));
        for c in row {
            out.push_str(&format!(" {c:>cell_width$}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_round_trip() {
        let value = json!({"semifield": "TQ", "n": 4, "d": 2, "entries": {"1,2": "0", "3,4": "-10/4"}});
        let t = TensorJson::parse(value).unwrap();
        let back = t.to_json();
        assert_eq!(back["entries"]["3,4"], "-5/2");
        assert_eq!(TensorJson::parse(back).unwrap(), t);
    }

    #[test]
    fn rejects_bad_tensors() {
        for value in [
            json!({"semifield": "B", "n": 4, "d": 2, "entries": {"1,2,3": "1"}}),
            json!({"semifield": "B", "n": 4, "d": 2, "entries": {"1,5": "1"}}),
            json!({"semifield": "B", "n": 4, "d": 2, "entries": {"1,2": "2"}}),
            json!({"semifield": "Z", "n": 4, "d": 2, "entries": {}}),
            json!({"semifield": "TQ", "n": 4, "d": 2, "entries": {"1,2": "1/0"}}),
        ] {
            assert!(TensorJson::parse(value).is_err());
        }
    }

    #[test]
    fn notation() {
        assert_eq!(tropical_notation(&Boolean::ONE), "0");
        assert_eq!(tropical_notation(&Boolean::ZERO), "-inf");
        assert_eq!(tropical_notation(&Tropical::from_ratio(3, 6)), "1/2");
    }
}
