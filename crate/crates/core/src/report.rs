//! Run manifests, deterministic report envelopes and plot-data tables.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::census::{point_f64, CensusReport, Target, Verdict};
use crate::error::{Error, Result};
use crate::zero_lemma::SuiteReport;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrecisionInfo {
    pub bits: u32,
    pub max_bits: u32,
}

/// Everything needed to reproduce a run. Timestamps are kept outside the
/// hashed body so equal manifests give byte-identical bodies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub precision: PrecisionInfo,
    pub version: String,
    pub started: Option<String>,
    pub finished: Option<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, seed: u64, bits: u32, max_bits: u32) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            parameters: BTreeMap::new(),
            seed,
            precision: PrecisionInfo { bits, max_bits },
            version: env!("CARGO_PKG_VERSION").to_string(),
            started: None,
            finished: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameters serialize"),
        );
        self
    }
}

/// A report as written to disk: manifest, body, pass flag and body digest.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub manifest: RunManifest,
    pub pass: bool,
    /// SHA-256 of the compact JSON serialization of `body`.
    pub body_sha256: String,
    pub body: Value,
}

impl Envelope {
    pub fn new(manifest: RunManifest, body: &impl Serialize, pass: bool) -> Result<Self> {
        let body = serde_json::to_value(body)
            .map_err(|e| Error::InvalidParameters(format!("report body: {e}")))?;
        Ok(Self {
            manifest,
            pass,
            body_sha256: body_digest(&body),
            body,
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

/// Hex SHA-256 of the compact JSON of a body (object keys are sorted).
pub fn body_digest(body: &Value) -> String {
    let bytes = serde_json::to_vec(body).expect("value serializes");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    CensusScatter,
    CountVsX,
    BoundVsCount,
}

impl PlotKind {
    pub fn name(self) -> &'static str {
        match self {
            PlotKind::CensusScatter => "census_scatter",
            PlotKind::CountVsX => "count_vs_X",
            PlotKind::BoundVsCount => "bound_vs_count",
        }
    }
}

/// One row of a sweep of `N(X, w)` over `X`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    #[serde(rename = "X")]
    pub x: f64,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountSweep {
    pub w: (f64, f64),
    pub rows: Vec<CountRow>,
}

/// Reports that can be turned into plot tables.
pub enum PlotSource<'a> {
    Census(&'a CensusReport),
    Counts(&'a CountSweep),
    Suite(&'a SuiteReport),
}

impl PlotSource<'_> {
    fn kind_name(&self) -> &'static str {
        match self {
            PlotSource::Census(_) => "census",
            PlotSource::Counts(_) => "count_sweep",
            PlotSource::Suite(_) => "zero_lemma_suite",
        }
    }
}

/// Whitespace-separated numeric table with a `#` header naming the columns.
pub fn emit_plot_data(source: &PlotSource<'_>, kind: PlotKind) -> Result<String> {
    let mismatch = || Error::KindMismatch {
        expected: kind.name().to_string(),
        got: source.kind_name().to_string(),
    };
    let mut out = String::new();
    match (kind, source) {
        (PlotKind::CensusScatter, PlotSource::Census(rep)) => {
            out.push_str(
                "# point log2_gap_lower target(0=gamma,1=reciprocal_gamma); hits omitted\n",
            );
            for r in rep
                .records
                .iter()
                .filter(|r| r.verdict == Verdict::CertifiedMiss)
            {
                let t = match r.target {
                    Target::Gamma => 0,
                    Target::ReciprocalGamma => 1,
                };
                out.push_str(&format!(
                    "{:.12} {:.6} {t}\n",
                    point_f64(&r.point),
                    r.gap_lower_log2
                ));
            }
        }
        (PlotKind::CountVsX, PlotSource::Counts(sweep)) => {
            out.push_str("# X count X-count\n");
            for r in &sweep.rows {
                out.push_str(&format!("{} {} {}\n", r.x, r.count, r.x - r.count as f64));
            }
        }
        (PlotKind::BoundVsCount, PlotSource::Suite(suite)) => {
            out.push_str("# L(L+R)log(L+R) count\n");
            for s in &suite.instances {
                let l = s.report.l.max(1) as f64;
                let t = l + s.report.r;
                out.push_str(&format!("{:.6} {}\n", l * t * t.ln(), s.report.count));
            }
        }
        _ => return Err(mismatch()),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_ignores_manifest() {
        let body = json!({"b": 1, "a": [1, 2]});
        let mut m = RunManifest::new("eval", 0, 256, 4096).param("z", "0.5");
        let e1 = Envelope::new(m.clone(), &body, true).unwrap();
        m.started = Some("2020-01-01T00:00:00Z".into());
        let e2 = Envelope::new(m, &body, true).unwrap();
        assert_eq!(e1.body_sha256, e2.body_sha256);
        assert_eq!(e1.body_sha256.len(), 64);
    }

    #[test]
    fn plot_tables() {
        let sweep = CountSweep {
            w: (0.0, 0.0),
            rows: vec![CountRow { x: 5.5, count: 6 }],
        };
        let t = emit_plot_data(&PlotSource::Counts(&sweep), PlotKind::CountVsX).unwrap();
        assert_eq!(t, "# X count X-count\n5.5 6 -0.5\n");
        assert!(matches!(
            emit_plot_data(&PlotSource::Counts(&sweep), PlotKind::CensusScatter),
            Err(Error::KindMismatch { .. })
        ));
    }
}
