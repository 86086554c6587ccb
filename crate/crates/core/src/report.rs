//! Versioned JSON reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Poly, PowerSeries, RatFunc};
use crate::cell::CellReport;
use crate::classify::Verdict;
use crate::error::Result;
use crate::green::{CellFunctions, PropertyCheck, SpectralData};
use crate::iteration::{CellInvariants, GreenSeries};

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "ssgreen";

/// Hex SHA-256 of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    /// File path, or `builtin:<name>`.
    pub source: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionSeries {
    pub f: PowerSeries,
    pub d: PowerSeries,
    pub r: PowerSeries,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionsReport {
    pub f: RatFunc,
    pub d: RatFunc,
    pub r: RatFunc,
    pub det_f: Poly,
    pub det_d: Poly,
    pub spectral_f: SpectralData,
    pub spectral_d: SpectralData,
    pub spectral_r: SpectralData,
    /// Highest power of the expansions.
    pub order: usize,
    pub series: FunctionSeries,
}

impl FunctionsReport {
    pub fn new(cf: &CellFunctions, order: usize) -> Result<Self> {
        Ok(FunctionsReport {
            f: cf.f.clone(),
            d: cf.d.clone(),
            r: cf.r.clone(),
            det_f: cf.det_f.clone(),
            det_d: cf.det_d.clone(),
            spectral_f: cf.spectral_f.clone(),
            spectral_d: cf.spectral_d.clone(),
            spectral_r: cf.spectral_r.clone(),
            order,
            series: FunctionSeries { f: cf.f.series(order + 1)?, d: cf.d.series(order + 1)?, r: cf.r.series(order + 1)? },
        })
    }
}

/// One report per command run. All fields except `timing_ms` depend only on
/// the input and the flags.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub input: Input,
    /// The cell in canonical text form, enough to recompute the report.
    pub cell_text: String,
    pub cell: CellReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functions: Option<FunctionsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub green: Option<GreenSeries>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<CellInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<Vec<PropertyCheck>>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(input: Input, cell_text: String, cell: CellReport) -> Self {
        Report {
            schema: SCHEMA,
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input,
            cell_text,
            cell,
            functions: None,
            green: None,
            invariants: None,
            verdict: None,
            properties: None,
            timing_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{builtin, validate_cell, ValidateOptions};

    #[test]
    fn digest_is_sha256() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn report_shape() {
        let g = builtin("diamond").unwrap();
        let input = Input { source: "builtin:diamond".into(), sha256: digest(g.to_cell_text().as_bytes()) };
        let r = Report::new(input, g.to_cell_text(), validate_cell(&g, ValidateOptions::default()));
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v.get("functions").is_none());
        assert_eq!(v["cell"]["mu"], 6);
    }
}
